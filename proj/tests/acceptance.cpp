// Acceptance suite: runs every exit criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.  Exit code is the number of
// failing criteria (capped at 1 for shells).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rearr/functionals.hpp"
#include "rearr/io.hpp"
#include "rearr/lattice.hpp"
#include "rearr/optimize.hpp"
#include "rearr/oracle.hpp"
#include "rearr/rearrange.hpp"
#include "rearr/rng.hpp"
#include "random_functions.hpp"

using namespace rearr;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& message) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += message;
    }
  }
};

bool le_rel(double lhs, double rhs, double tol) {
  return lhs <= rhs + tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

LineFunction random_line(Rng& rng, Parity parity, int support) {
  LineFunction f(parity);
  const int offset = parity == Parity::half ? 1 : 0;
  while (static_cast<int>(f.support_size()) < support)
    f.set2(2 * rng.uniform_int(-30, 30) + offset, rng.uniform_positive());
  return f;
}

SparseFunction indicator(int dim, const std::vector<Point>& pts) {
  SparseFunction u(dim);
  for (const Point& p : pts) u.set(p, 1.0);
  return u;
}

// 1. Ball cardinalities on Z^2 match the closed formulas for l = 0..10.
Check criterion_ball_counts() {
  Check c;
  for (int l = 0; l <= 10; ++l) {
    c.require(static_cast<int>(diamond_ball(l, 2).size()) == 2 * l * l + 2 * l + 1,
              "diamond count l=" + std::to_string(l));
    c.require(static_cast<int>(box_ball(l, 2).size()) == (2 * l + 1) * (2 * l + 1),
              "box count l=" + std::to_string(l));
  }
  return c;
}

// 2. Iterated two-point rearrangement stabilizes to the 1-D rearrangement on
// 1000 seeded random line functions, exactly.
Check criterion_two_point() {
  Check c;
  Rng rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const Parity parity = trial % 2 == 0 ? Parity::integer : Parity::half;
    const LineFunction f = random_line(rng, parity, rng.uniform_int(1, 20));
    LineFunction iterate = f;
    bool stabilized = false;
    for (int step = 0; step < 5000; ++step) {
      LineFunction next = two_point_rearrange(iterate);
      if (next == iterate) {
        stabilized = true;
        break;
      }
      iterate = std::move(next);
    }
    c.require(stabilized, "no fixed point in trial " + std::to_string(trial));
    c.require(iterate == rearrange_line(f), "fixed point differs in trial " + std::to_string(trial));
    if (!c.ok) break;
  }
  return c;
}

// 3. The iteration reaches a verified fixed point on random functions in Z^2
// and Z^3 within the default cycle budget, preserving the value multiset.
Check criterion_nd_convergence() {
  Check c;
  Rng rng(42);
  const auto run = [&c, &rng](int dim, int count, int radius) {
    for (int trial = 0; trial < count && c.ok; ++trial) {
      const SparseFunction u =
          testing::random_sparse(rng, dim, rng.uniform_int(1, 40), radius);
      SparseFunction us(dim);
      try {
        us = schwarz_rearrange(u);
      } catch (const ConvergenceError&) {
        c.require(false, "budget exceeded in dim " + std::to_string(dim));
        return;
      }
      for (const Direction& e : direction_set(dim))
        c.require(one_step(us, e) == us, "not a fixed point of " + to_string(e));
      c.require(values_multiset(us) == values_multiset(u), "equimeasurability broken");
    }
  };
  run(2, 500, 7);
  run(3, 100, 4);
  return c;
}

// 4. The order-dependence example: the canonical limit is the axis one-step,
// the diagonal-first limit is the diagonal one-step, and the latter has
// strictly smaller gradient 2-norm.
Check criterion_order_example() {
  Check c;
  const SparseFunction u = indicator(2, {{1, 1}, {-1, 0}, {0, 0}, {1, 0}, {0, -1}});
  const SparseFunction canonical = schwarz_rearrange(u);
  c.require(canonical == one_step(u, Direction::axis(0)), "canonical limit mismatch");
  const std::vector<Direction> alt = {Direction::diag_plus(0, 1), Direction::diag_minus(0, 1),
                                      Direction::axis(0), Direction::axis(1)};
  const SparseFunction alt_limit = schwarz_rearrange_cycled(u, alt);
  c.require(alt_limit == one_step(u, Direction::diag_plus(0, 1)), "alt limit mismatch");
  c.require(sobolev_energy(alt_limit, 2.0) < sobolev_energy(canonical, 2.0),
            "energy comparison not strict");
  return c;
}

// 5. The plus-with-corner input converges under the canonical direction set
// within 50 cycles.
Check criterion_robustness_example() {
  Check c;
  const SparseFunction u =
      indicator(2, {{0, 0}, {0, 1}, {1, 0}, {0, -1}, {-1, 0}, {1, -1}});
  RearrangeOptions opts;
  opts.max_cycles = 50;
  try {
    const SparseFunction limit = schwarz_rearrange(u, opts);
    c.require(is_schwarz_symmetric(limit), "limit not symmetric");
  } catch (const ConvergenceError&) {
    c.require(false, "did not converge within 50 cycles");
  }
  return c;
}

// 6. Gradient p-norms never increase under rearrangement: 500 random
// functions per dimension/exponent pair, relative tolerance 1e-9.
Check criterion_polya_szego() {
  Check c;
  Rng rng(42);
  for (int dim : {2, 3}) {
    for (double p : {1.0, 2.0, 3.0}) {
      for (int trial = 0; trial < 500 && c.ok; ++trial) {
        const SparseFunction u =
            testing::random_sparse(rng, dim, rng.uniform_int(1, 25), dim == 2 ? 5 : 3);
        c.require(le_rel(sobolev_energy(schwarz_rearrange(u), p), sobolev_energy(u, p), 1e-9),
                  "violation at dim " + std::to_string(dim) + " p " + std::to_string(p));
      }
    }
  }
  return c;
}

// 7. Riesz inequality across the kernel/integrand families, plus exact
// agreement with the exhaustive 1-D maximizer on tiny instances.
Check criterion_riesz_suite() {
  Check c;
  Rng rng(42);
  const std::vector<Kernel> kernels = {Kernel::delta0(), Kernel::geometric(2.0, 8),
                                       Kernel::step(1)};
  const std::vector<Bivariate> integrands = {Bivariate::product(), Bivariate::neg_abs_diff(1.0),
                                             Bivariate::neg_abs_diff(2.0)};
  for (const Kernel& H : kernels) {
    for (const Bivariate& G : integrands) {
      for (int trial = 0; trial < 200 && c.ok; ++trial) {
        const SparseFunction u = testing::random_sparse(rng, 2, rng.uniform_int(1, 10), 4);
        const SparseFunction v = testing::random_sparse(rng, 2, rng.uniform_int(1, 10), 4);
        const double lhs = riesz_sum(u, v, G, H);
        const double rhs = riesz_sum(schwarz_rearrange(u), schwarz_rearrange(v), G, H);
        c.require(le_rel(lhs, rhs, 1e-9), "inequality violated");
      }
    }
  }
  // Tiny 1-D instances match the brute-force maximum to 1e-12 relative.
  for (int trial = 0; trial < 30 && c.ok; ++trial) {
    ValueMultiset vu, vv;
    for (int k = rng.uniform_int(1, 3); k > 0; --k) vu.push_back(rng.uniform_int(1, 5));
    for (int k = rng.uniform_int(1, 3); k > 0; --k) vv.push_back(rng.uniform_int(1, 5));
    std::sort(vu.begin(), vu.end(), std::greater<double>());
    std::sort(vv.begin(), vv.end(), std::greater<double>());
    const Kernel& H = kernels[trial % kernels.size()];
    const Bivariate& G = integrands[trial % integrands.size()];
    const RieszMaxResult oracle = brute_force_riesz_max(vu, vv, 4, G, H);
    SparseFunction ur(1), vr(1);
    LineFunction fu(Parity::integer), fv(Parity::integer);
    for (std::size_t k = 0; k < vu.size(); ++k) fu.set2(2 * static_cast<int>(k), vu[k]);
    for (std::size_t k = 0; k < vv.size(); ++k) fv.set2(2 * static_cast<int>(k), vv[k]);
    const LineFunction fur = rearrange_line(fu);
    const LineFunction fvr = rearrange_line(fv);
    for (const auto& [p2, val] : fur.entries2()) ur.set({p2 / 2}, val);
    for (const auto& [p2, val] : fvr.entries2()) vr.set({p2 / 2}, val);
    const double rearranged_value = riesz_sum(ur, vr, G, H);
    c.require(std::abs(rearranged_value - oracle.max_value) <=
                  1e-12 * std::max(1.0, std::abs(oracle.max_value)),
              "rearranged pair misses the brute-force maximum");
  }
  return c;
}

// 8. Hardy-Littlewood and the contraction property on 500 random pairs, plus
// the strict equality-case probe.
Check criterion_hardy_littlewood_contraction() {
  Check c;
  Rng rng(42);
  for (int trial = 0; trial < 500 && c.ok; ++trial) {
    const SparseFunction u = testing::random_sparse(rng, 2, rng.uniform_int(1, 14), 5);
    const SparseFunction v = testing::random_sparse(rng, 2, rng.uniform_int(1, 14), 5);
    c.require(le_rel(hardy_littlewood_sum(u, v),
                     hardy_littlewood_sum(schwarz_rearrange(u), schwarz_rearrange(v)), 1e-9),
              "hardy-littlewood violated");
    for (double p : {1.0, 2.0, 3.0})
      c.require(lp_contraction_gap(u, v, p) >= -1e-9, "contraction violated");
  }
  // Equality-case probe: symmetric u with distinct values, v != v* implies a
  // strictly positive gap (exact integer arithmetic).
  SparseFunction u(1);
  u.set({0}, 16.0);
  u.set({1}, 8.0);
  u.set({-1}, 4.0);
  u.set({2}, 2.0);
  int probed = 0;
  for (int trial = 0; trial < 300 && c.ok; ++trial) {
    const SparseFunction v = testing::random_sparse_integer_values(rng, 1, 4, 3, 9);
    const SparseFunction vs = schwarz_rearrange(v);
    if (v == vs) continue;
    ++probed;
    c.require(hardy_littlewood_sum(u, vs) - hardy_littlewood_sum(u, v) > 0.0,
              "equality-case gap not strict");
  }
  c.require(probed > 100, "probe generated too few asymmetric functions");
  return c;
}

// 9. Support sandwich: rearranged supports of size N contain the diamond of
// radius L1 and fit inside the box of radius L2.
Check criterion_geometry_sandwich() {
  Check c;
  Rng rng(42);
  for (int n : {25, 49, 100}) {
    const auto [l1, l2] = support_sandwich_bounds(n);
    for (int trial = 0; trial < 40 && c.ok; ++trial) {
      const SparseFunction u = testing::random_sparse(rng, 2, n, 9);
      const SparseFunction us = schwarz_rearrange(u);
      for (const Point& p : diamond_ball(l1, 2))
        c.require(us.at(p) > 0.0, "diamond not covered for N=" + std::to_string(n));
      for (const auto& [p, val] : us.entries())
        c.require(std::max(std::abs(p[0]), std::abs(p[1])) <= l2,
                  "support escapes the box for N=" + std::to_string(n));
    }
  }
  return c;
}

// 10. The total-order obstruction.  NOTE: the sub-criterion that the plus
// eigenvector multiset has the plus as its *unique* minimizer is
// mathematically false: with center exactly twice the arm value the plus and
// the P-pentomino attain the same energy (4(c-a)^2 + 12a^2 =
// 3(c-a)^2 + c^2 + 9a^2 iff c = 2a).  The check is kept as stated and fails;
// the obstruction itself is certified with a searched substitute multiset.
Check criterion_pruss_obstruction() {
  Check c;
  c.require(enumerate_connected_supports(5).size() == 12, "pentomino count");
  const ShapeClass plus_class = canonical_shape(diamond_ball(1, 2));
  const ObstructionReport report = pruss_obstruction();
  if (report.eigen_minimizers.size() == 2) {
    const double tied = equimeasurable_minimizers(report.eigen_multiset).min_energy_sq;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "eigen multiset minimizer not unique: plus and P-pentomino tie at "
                  "energy_sq %.12f",
                  tied);
    c.require(report.eigen_multiset_unique, buf);
  } else {
    c.require(report.eigen_multiset_unique, "eigen multiset minimizer not unique");
  }
  c.require(report.shape1 == plus_class, "shape1 is not the plus");
  c.require(report.unique2, "multiset2 not certified unique");
  c.require(report.shape2 == canonical_shape({{0, 0}, {0, 1}, {1, 0}, {0, -1}, {1, 1}}),
            "shape2 is not the P-pentomino");
  c.require(report.contradiction, "obstruction not certified");
  return c;
}

// 11. DNLS ground state at c = 2, sigma = 0.9 on the radius-15 box, with a
// radius-30 re-run agreeing to 1e-6, plus the tent-function scaling trends.
Check criterion_dnls() {
  Check c;
  DescentOptions opts;
  opts.max_iters = 60000;
  opts.tol = 1e-9;
  const DnlsResult r15 = minimize_dnls(2.0, 0.9, TruncatedDomain{2, 15}, opts);
  c.require(r15.energy < 0.0, "I_c not negative");
  c.require(is_schwarz_symmetric(r15.minimizer), "minimizer not symmetric");
  c.require(std::abs(lp_norm(r15.minimizer, 2.0) - 2.0) < 1e-12, "mass constraint broken");
  for (const auto& [before, after] : r15.trace.rearrangement_energies)
    c.require(after <= before + 1e-9 * std::max(1.0, std::abs(before)),
              "rearrangement step raised the energy");
  c.require(r15.el_residual < 1e-6, "Euler-Lagrange residual " +
                                        std::to_string(r15.el_residual) + " too large");
  const DnlsResult r30 = minimize_dnls(2.0, 0.9, TruncatedDomain{2, 30}, opts);
  c.require(std::abs(r15.energy - r30.energy) < 1e-6,
            "truncation instability: |I15-I30| = " + std::to_string(std::abs(r15.energy - r30.energy)));
  // Tent-function trends over K in {5, 10, 20, 40}.
  for (int K : {5, 10, 20, 40}) {
    const SparseFunction uk = normalized_tent(K, 2.0, 2);
    c.require(std::abs(lp_norm(uk, 2.0) - 2.0) < 1e-12, "tent norm");
    const double grad_product = sobolev_energy(uk, 2.0) * K * K;
    c.require(grad_product > 0.0 && grad_product < 100.0,
              "gradient trend unbounded at K=" + std::to_string(K));
    double nl = 0.0;
    for (const auto& [x, v] : uk.entries()) nl += std::pow(v, 3.8);
    c.require(nl * std::pow(K, 1.8) > 1.0,
              "nonlinear trend not bounded below at K=" + std::to_string(K));
  }
  return c;
}

// 12. Sobolev extremal problem at d = 3, p = 2, q = 7 on the radius-8 box.
Check criterion_sobolev_extremal() {
  Check c;
  DescentOptions opts;
  opts.max_iters = 100000;
  opts.tol = 1e-8;
  const SobolevResult r = minimize_sobolev_extremal(2.0, 7.0, TruncatedDomain{3, 8}, opts);
  c.require(std::abs(lp_norm(r.minimizer, 7.0) - 1.0) < 1e-12, "constraint norm broken");
  c.require(is_schwarz_symmetric(r.minimizer), "minimizer not symmetric");
  const double rearranged_energy =
      std::sqrt(sobolev_energy(schwarz_rearrange(r.minimizer), 2.0));
  c.require(rearranged_energy >= r.energy - 1e-9, "rearrangement still decreases the energy");
  c.require(r.converged, "did not reach the stationarity tolerance");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "ball counts", 1.0, criterion_ball_counts},
      {2, "1-D two-point equivalence", 5.0, criterion_two_point},
      {3, "n-D convergence", 60.0, criterion_nd_convergence},
      {4, "order-dependence example", 1.0, criterion_order_example},
      {5, "canonical-cycle robustness example", 5.0, criterion_robustness_example},
      {6, "polya-szego", 120.0, criterion_polya_szego},
      {7, "riesz suite", 120.0, criterion_riesz_suite},
      {8, "hardy-littlewood and contraction", 120.0, criterion_hardy_littlewood_contraction},
      {9, "geometry sandwich", 60.0, criterion_geometry_sandwich},
      {10, "pruss obstruction", 300.0, criterion_pruss_obstruction},
      {11, "dnls ground state", 300.0, criterion_dnls},
      {12, "sobolev extremal", 300.0, criterion_sobolev_extremal},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criterion.run();
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criterion.budget_seconds) {
      check.ok = false;
      check.detail += (check.detail.empty() ? "" : "; ");
      check.detail += "runtime budget exceeded";
    }
    std::printf("[%2d/12] %s  %s (%.2f s)%s%s\n", criterion.id,
                check.ok ? "PASS" : "FAIL", criterion.name, seconds,
                check.detail.empty() ? "" : " -- ", check.detail.c_str());
    std::fflush(stdout);
    if (!check.ok) ++failures;
  }
  std::printf("%d/12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
