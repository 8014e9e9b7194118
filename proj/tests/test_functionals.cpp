#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>

#include "rearr/functionals.hpp"
#include "rearr/oracle.hpp"
#include "rearr/rearrange.hpp"
#include "rearr/rng.hpp"
#include "random_functions.hpp"

using namespace rearr;

namespace {

constexpr double kTol = 1e-9;

bool le_tol(double lhs, double rhs) {
  return lhs <= rhs + kTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

SparseFunction indicator(int dim, const std::vector<Point>& pts) {
  SparseFunction u(dim);
  for (const Point& p : pts) u.set(p, 1.0);
  return u;
}

}  // namespace

TEST_CASE("lp_norm") {
  SparseFunction u(2);
  CHECK(lp_norm(u, 2.0) == 0.0);
  u.set({0, 0}, 3.0);
  u.set({1, 1}, 4.0);
  CHECK(lp_norm(u, 2.0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(lp_norm(u, std::numeric_limits<double>::infinity()) == 4.0);
  CHECK_THROWS_AS(lp_norm(u, 0.5), std::invalid_argument);

  CHECK(lp_norm(indicator(2, diamond_ball(2, 2)), 1.0) == 13.0);
}

TEST_CASE("sobolev_energy counts each incident edge once") {
  SparseFunction spike2(2);
  spike2.set({0, 0}, 1.0);
  CHECK(sobolev_energy(spike2, 2.0) == 4.0);
  SparseFunction spike3(3);
  spike3.set({0, 0, 0}, 1.0);
  CHECK(sobolev_energy(spike3, 2.0) == 6.0);

  CHECK(sobolev_energy(indicator(2, {{0, 0}, {1, 0}}), 1.0) == 6.0);

  // Rayleigh quotient of the plus eigenvector equals its Dirichlet eigenvalue.
  const SparseFunction u1 = plus_eigenvector();
  const double rayleigh = sobolev_energy(u1, 2.0) / std::pow(lp_norm(u1, 2.0), 2.0);
  CHECK(rayleigh == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("cavalieri_sum and its rearrangement invariance") {
  SparseFunction u(1);
  u.set({0}, 1.0);
  u.set({3}, 2.0);
  CHECK(cavalieri_sum(u, [](double t) { return t; }) == 3.0);
  CHECK(cavalieri_sum(u, [](double t) { return t * t; }) == 5.0);
  CHECK_THROWS_AS(cavalieri_sum(u, [](double t) { return t + 1.0; }), std::invalid_argument);

  Rng rng(101);
  const std::vector<std::function<double(double)>> family = {
      [](double t) { return t * t; },
      [](double t) { return t * t * t; },
      [](double t) { return std::min(t, 1.0); }};
  for (int trial = 0; trial < 20; ++trial) {
    const SparseFunction v = testing::random_sparse(rng, 2, 12, 5);
    const SparseFunction vs = schwarz_rearrange(v);
    for (const auto& f : family)
      CHECK(cavalieri_sum(v, f) == doctest::Approx(cavalieri_sum(vs, f)).epsilon(1e-12));
  }
}

TEST_CASE("riesz_sum basics") {
  SparseFunction u(1);
  u.set({0}, 1.0);
  CHECK(riesz_sum(u, u, Bivariate::product(), Kernel::geometric(2.0, 8)) == 1.0);

  // A delta kernel collapses the double sum to Hardy-Littlewood.
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const SparseFunction a = testing::random_sparse(rng, 2, 10, 4);
    const SparseFunction b = testing::random_sparse(rng, 2, 10, 4);
    CHECK(riesz_sum(a, b, Bivariate::product(), Kernel::delta0()) ==
          doctest::Approx(hardy_littlewood_sum(a, b)).epsilon(1e-12));
  }

  // Neither zero margins nor a finite kernel: rejected as divergent.
  const Bivariate margins = Bivariate::neg_abs_diff(2.0);
  const Kernel infinite_tail({1.0, 0.5}, 0.5);
  CHECK_THROWS_AS(riesz_sum(u, u, margins, infinite_tail), std::domain_error);
}

TEST_CASE("riesz inequality for the documented kernel and integrand families") {
  Rng rng(13);
  const std::vector<Kernel> kernels = {Kernel::delta0(), Kernel::geometric(2.0, 8),
                                       Kernel::step(1)};
  const std::vector<Bivariate> integrands = {Bivariate::product(), Bivariate::min(),
                                             Bivariate::neg_abs_diff(1.0),
                                             Bivariate::neg_abs_diff(2.0)};
  for (const Kernel& H : kernels) {
    for (const Bivariate& G : integrands) {
      for (int trial = 0; trial < 25; ++trial) {
        const SparseFunction u = testing::random_sparse(rng, 2, rng.uniform_int(1, 10), 4);
        const SparseFunction v = testing::random_sparse(rng, 2, rng.uniform_int(1, 10), 4);
        const double lhs = riesz_sum(u, v, G, H);
        const double rhs = riesz_sum(schwarz_rearrange(u), schwarz_rearrange(v), G, H);
        CHECK(le_tol(lhs, rhs));
      }
    }
  }
}

TEST_CASE("reduce_to_tilde strips the margins") {
  const Bivariate g = Bivariate::make([](double s, double t) { return (s + 1) * (t + 1) - 1; });
  CHECK_FALSE(g.zero_margins());
  const Bivariate tilde = reduce_to_tilde(g);
  CHECK(tilde.zero_margins());
  for (double s : {0.0, 0.5, 1.0, 2.5})
    for (double t : {0.0, 0.5, 1.0, 2.5})
      CHECK(tilde(s, t) == doctest::Approx(s * t).epsilon(1e-12));

  const Bivariate already = Bivariate::product();
  const Bivariate same = reduce_to_tilde(already);
  for (double s : {0.0, 1.0, 3.0})
    for (double t : {0.0, 1.0, 3.0}) CHECK(same(s, t) == already(s, t));

  // Supermodularity is unchanged by the reduction.
  const auto grid = supermodular_grid(1);
  for (const Bivariate& G : {Bivariate::product(), Bivariate::neg_abs_diff(2.0), g}) {
    const Bivariate Gt = reduce_to_tilde(G);
    CHECK(check_supermodular(G, grid, false).pass == check_supermodular(Gt, grid, false).pass);
  }
  CHECK_THROWS_AS(reduce_to_tilde(Bivariate::make([](double, double) { return 1.0; })),
                  std::domain_error);
}

TEST_CASE("extended_riesz_sum") {
  Rng rng(19);
  // m = 2 agrees with riesz_sum.
  for (int trial = 0; trial < 10; ++trial) {
    const SparseFunction u = testing::random_sparse(rng, 2, 6, 3);
    const SparseFunction v = testing::random_sparse(rng, 2, 6, 3);
    const Kernel H = Kernel::geometric(2.0, 4);
    const auto G2 = [](std::span<const double> a) { return a[0] * a[1]; };
    const std::vector<std::vector<Kernel>> kernels(2, std::vector<Kernel>(2, H));
    CHECK(extended_riesz_sum({u, v}, G2, kernels) ==
          doctest::Approx(riesz_sum(u, v, Bivariate::product(), H)).epsilon(1e-12));
  }

  // m = 3 with delta kernels collapses to the pointwise triple product.
  const auto G3 = [](std::span<const double> a) { return a[0] * a[1] * a[2]; };
  const std::vector<std::vector<Kernel>> deltas(3, std::vector<Kernel>(3, Kernel::delta0()));
  for (int trial = 0; trial < 10; ++trial) {
    const SparseFunction u = testing::random_sparse(rng, 2, 8, 3);
    const SparseFunction v = testing::random_sparse(rng, 2, 8, 3);
    const SparseFunction w = testing::random_sparse(rng, 2, 8, 3);
    double expected = 0.0;
    for (const auto& [x, a] : u.entries()) expected += a * v.at(x) * w.at(x);
    CHECK(extended_riesz_sum({u, v, w}, G3, deltas) == doctest::Approx(expected).epsilon(1e-12));
  }

  // Rearranging all three functions does not decrease the sum.
  const std::vector<std::vector<Kernel>> steps(3, std::vector<Kernel>(3, Kernel::step(1)));
  for (int trial = 0; trial < 10; ++trial) {
    const SparseFunction u = testing::random_sparse(rng, 2, 5, 3);
    const SparseFunction v = testing::random_sparse(rng, 2, 5, 3);
    const SparseFunction w = testing::random_sparse(rng, 2, 5, 3);
    const double lhs = extended_riesz_sum({u, v, w}, G3, steps);
    const double rhs = extended_riesz_sum(
        {schwarz_rearrange(u), schwarz_rearrange(v), schwarz_rearrange(w)}, G3, steps);
    CHECK(le_tol(lhs, rhs));
  }
}

TEST_CASE("hardy_littlewood_sum") {
  SparseFunction u(2), v(2);
  u.set({0, 0}, 2.0);
  v.set({5, 5}, 3.0);
  CHECK(hardy_littlewood_sum(u, v) == 0.0);
  CHECK(hardy_littlewood_sum(u, u) == doctest::Approx(std::pow(lp_norm(u, 2.0), 2.0)));

  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const SparseFunction a = testing::random_sparse(rng, 2, rng.uniform_int(1, 14), 5);
    const SparseFunction b = testing::random_sparse(rng, 2, rng.uniform_int(1, 14), 5);
    CHECK(le_tol(hardy_littlewood_sum(a, b),
                 hardy_littlewood_sum(schwarz_rearrange(a), schwarz_rearrange(b))));
  }
}

TEST_CASE("hardy-littlewood equality forces the rearranged pair") {
  // Integer values keep the comparison exact: u symmetric with distinct
  // values, v not symmetric, so the inequality must be strict.
  Rng rng(29);
  SparseFunction u(1);
  u.set({0}, 16.0);
  u.set({1}, 8.0);
  u.set({-1}, 4.0);
  u.set({2}, 2.0);
  REQUIRE(is_schwarz_symmetric(u));
  int strict_cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const SparseFunction v = testing::random_sparse_integer_values(rng, 1, 4, 3, 9);
    const SparseFunction vs = schwarz_rearrange(v);
    if (v == vs) continue;
    ++strict_cases;
    CHECK(hardy_littlewood_sum(u, vs) - hardy_littlewood_sum(u, v) > 0.0);
  }
  CHECK(strict_cases > 50);
}

TEST_CASE("lp contraction gap is nonnegative") {
  Rng rng(31);
  SparseFunction u = testing::random_sparse(rng, 2, 10, 4);
  CHECK(lp_contraction_gap(u, u, 2.0) == 0.0);

  const SparseFunction a = schwarz_rearrange(testing::random_sparse(rng, 2, 9, 4));
  const SparseFunction b = schwarz_rearrange(testing::random_sparse(rng, 2, 7, 4));
  CHECK(lp_contraction_gap(a, b, 2.0) == doctest::Approx(0.0).epsilon(1e-12));

  for (double p : {1.0, 2.0, 3.0}) {
    for (int trial = 0; trial < 30; ++trial) {
      const SparseFunction x = testing::random_sparse(rng, 2, rng.uniform_int(1, 12), 4);
      const SparseFunction y = testing::random_sparse(rng, 2, rng.uniform_int(1, 12), 4);
      CHECK(lp_contraction_gap(x, y, p) >= -kTol);
    }
  }
}

TEST_CASE("f_weighted_sum") {
  Rng rng(37);
  const SparseFunction u = testing::random_sparse(rng, 2, 10, 4);
  CHECK(f_weighted_sum(u, [](double, double t) { return t * t; }, 4) ==
        doctest::Approx(std::pow(lp_norm(u, 2.0), 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(f_weighted_sum(u, [](double, double t) { return t; }, 1),
                  std::invalid_argument);

  // Decreasing radial weight: rearrangement can only increase the sum.
  const auto F = [](double r, double t) { return t * t / (1.0 + r); };
  for (int trial = 0; trial < 25; ++trial) {
    const SparseFunction v = testing::random_sparse(rng, 2, 12, 4);
    CHECK(le_tol(f_weighted_sum(v, F, 4), f_weighted_sum(schwarz_rearrange(v), F, 4)));
  }

  // Increasing radial weight (-F not supermodular): strict decrease witness.
  SparseFunction far(2);
  far.set({5, 0}, 1.0);
  const auto rising = [](double r, double t) { return t * r; };
  CHECK(f_weighted_sum(schwarz_rearrange(far), rising, 5) < f_weighted_sum(far, rising, 5));
}

TEST_CASE("check_supermodular on the standard families") {
  const auto grid = supermodular_grid(2);
  CHECK(check_supermodular(Bivariate::product(), grid, true).pass);
  CHECK(check_supermodular(Bivariate::min(), grid, false).pass);
  CHECK(check_supermodular(Bivariate::neg_abs_diff(1.0), grid, false).pass);
  CHECK_FALSE(check_supermodular(Bivariate::neg_abs_diff(1.0), grid, true).pass);
  CHECK(check_supermodular(Bivariate::neg_abs_diff(2.0), grid, true).pass);
  CHECK(check_supermodular(Bivariate::neg_abs_diff(3.0), grid, true).pass);

  const Bivariate neg_product = Bivariate::make([](double s, double t) { return -s * t; });
  const std::array<std::array<double, 4>, 1> single = {{{1.0, 1.0, 1.0, 1.0}}};
  const SupermodularVerdict verdict = check_supermodular(neg_product, single, false);
  CHECK_FALSE(verdict.pass);
  REQUIRE(verdict.witness.has_value());
  CHECK(*verdict.witness == std::array<double, 4>{1.0, 1.0, 1.0, 1.0});
}

TEST_CASE("a non-supermodular integrand admits a riesz violation") {
  const Bivariate neg_product = Bivariate::make([](double s, double t) { return -s * t; });
  Rng rng(41);
  bool violated = false;
  for (int trial = 0; trial < 100 && !violated; ++trial) {
    const SparseFunction u = testing::random_sparse(rng, 2, 6, 3);
    const SparseFunction v = testing::random_sparse(rng, 2, 6, 3);
    const double lhs = riesz_sum(u, v, neg_product, Kernel::delta0());
    const double rhs =
        riesz_sum(schwarz_rearrange(u), schwarz_rearrange(v), neg_product, Kernel::delta0());
    if (lhs > rhs + 1e-12) violated = true;
  }
  CHECK(violated);
}

TEST_CASE("polya-szego inequality on random functions") {
  Rng rng(43);
  for (int dim : {2, 3}) {
    for (double p : {1.0, 2.0, 3.0}) {
      for (int trial = 0; trial < 30; ++trial) {
        const SparseFunction u = testing::random_sparse(rng, dim, rng.uniform_int(1, 18), 4);
        CHECK(le_tol(sobolev_energy(schwarz_rearrange(u), p), sobolev_energy(u, p)));
      }
    }
  }
}
