#include "rearr/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "rearr/rearrange.hpp"
#include "rearr/rng.hpp"

namespace rearr {

Kernel::Kernel(std::vector<double> table, double tail) : table_(std::move(table)), tail_(tail) {
  if (table_.empty()) throw std::invalid_argument("Kernel: empty table");
  if (tail_ < 0.0) throw std::invalid_argument("Kernel: negative tail");
  for (std::size_t k = 0; k < table_.size(); ++k) {
    if (table_[k] < 0.0) throw std::invalid_argument("Kernel: negative sample");
    if (k > 0 && table_[k] > table_[k - 1])
      throw std::invalid_argument("Kernel: samples must be non-increasing");
  }
  if (tail_ > table_.back())
    throw std::invalid_argument("Kernel: tail exceeds last sample");
}

double Kernel::operator()(int distance) const {
  if (distance < 0) throw std::invalid_argument("Kernel: negative distance");
  return distance <= cutoff() ? table_[distance] : tail_;
}

Kernel Kernel::delta0() { return Kernel({1.0}); }

Kernel Kernel::geometric(double base, int cutoff) {
  if (base < 1.0) throw std::invalid_argument("Kernel::geometric: base must be >= 1");
  if (cutoff < 0) throw std::invalid_argument("Kernel::geometric: negative cutoff");
  std::vector<double> table(cutoff + 1);
  for (int t = 0; t <= cutoff; ++t) table[t] = std::pow(base, -t);
  return Kernel(std::move(table));
}

Kernel Kernel::step(int radius) {
  if (radius < 0) throw std::invalid_argument("Kernel::step: negative radius");
  return Kernel(std::vector<double>(radius + 1, 1.0));
}

namespace {

constexpr double kFlagGrid[] = {0.0, 0.25, 0.5, 1.0, 2.0, 5.0};

}  // namespace

Bivariate Bivariate::make(std::function<double(double, double)> g) {
  Bivariate b;
  b.g_ = std::move(g);
  b.zero_at_origin_ = b.g_(0.0, 0.0) == 0.0;
  b.zero_margins_ = true;
  for (double s : kFlagGrid) {
    if (b.g_(s, 0.0) != 0.0 || b.g_(0.0, s) != 0.0) {
      b.zero_margins_ = false;
      break;
    }
  }
  return b;
}

Bivariate Bivariate::product() {
  return make([](double s, double t) { return s * t; });
}

Bivariate Bivariate::neg_abs_diff(double p) {
  if (p < 1.0) throw std::invalid_argument("Bivariate::neg_abs_diff: p must be >= 1");
  return make([p](double s, double t) { return -std::pow(std::abs(s - t), p); });
}

Bivariate Bivariate::min() {
  return make([](double s, double t) { return std::min(s, t); });
}

double lp_norm(const SparseFunction& u, double p) {
  if (p == std::numeric_limits<double>::infinity()) {
    double m = 0.0;
    for (const auto& [x, v] : u.entries()) m = std::max(m, v);
    return m;
  }
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  double sum = 0.0;
  for (const auto& [x, v] : u.entries()) sum += std::pow(v, p);
  return std::pow(sum, 1.0 / p);
}

double sobolev_energy(const SparseFunction& u, double p) {
  if (p < 1.0) throw std::invalid_argument("sobolev_energy: p must be >= 1");
  const int d = u.dim();
  double sum = 0.0;
  Point y;
  for (const auto& [x, v] : u.entries()) {
    for (int k = 0; k < d; ++k) {
      y = x;
      y[k] += 1;
      const double up = u.at(y);
      if (up > 0.0)
        sum += std::pow(std::abs(v - up), p);  // interior edge, counted once
      else
        sum += std::pow(v, p);
      y[k] -= 2;
      if (u.at(y) == 0.0) sum += std::pow(v, p);
    }
  }
  return sum;
}

double cavalieri_sum(const SparseFunction& u, const std::function<double(double)>& f) {
  if (f(0.0) != 0.0) throw std::invalid_argument("cavalieri_sum: f(0) must be 0");
  double sum = 0.0;
  for (const auto& [x, v] : u.entries()) sum += f(v);
  return sum;
}

double riesz_sum(const SparseFunction& u, const SparseFunction& v, const Bivariate& G,
                 const Kernel& H) {
  if (u.dim() != v.dim()) throw std::invalid_argument("riesz_sum: dimension mismatch");
  if (G.zero_margins()) {
    // Off-support terms vanish regardless of H.
    double sum = 0.0;
    for (const auto& [x, a] : u.entries())
      for (const auto& [y, b] : v.entries()) sum += G(a, b) * H(graph_distance(x, y));
    return sum;
  }
  if (!(G.zero_at_origin() && H.finitely_supported()))
    throw std::domain_error(
        "riesz_sum: divergent configuration (need zero margins or a finitely "
        "supported kernel with G(0,0) = 0)");
  // Pairs with both points off-support contribute G(0,0) = 0; the rest lie
  // within the kernel radius of a support point.
  const int d = u.dim();
  std::vector<std::pair<Point, int>> offsets;
  for (const Point& o : diamond_ball(H.cutoff(), d))
    offsets.emplace_back(o, graph_distance(o, Point(d, 0)));
  double sum = 0.0;
  Point y(d, 0);
  for (const auto& [x, a] : u.entries()) {
    for (const auto& [o, r] : offsets) {
      for (int k = 0; k < d; ++k) y[k] = x[k] + o[k];
      sum += G(a, v.at(y)) * H(r);
    }
  }
  for (const auto& [yv, b] : v.entries()) {
    for (const auto& [o, r] : offsets) {
      for (int k = 0; k < d; ++k) y[k] = yv[k] + o[k];
      if (u.at(y) == 0.0) sum += G(0.0, b) * H(r);
    }
  }
  return sum;
}

Bivariate reduce_to_tilde(const Bivariate& G) {
  if (!G.zero_at_origin()) throw std::domain_error("reduce_to_tilde: G(0,0) must be 0");
  return Bivariate::make(
      [G](double s, double t) { return G(s, t) - G(s, 0.0) - G(0.0, t); });
}

namespace {

bool vanishes_when_any_zero(const std::function<double(std::span<const double>)>& G,
                            std::size_t m) {
  std::vector<double> args(m);
  // Sample the grid with each coordinate forced to zero in turn.
  std::size_t count = 1;
  for (std::size_t k = 0; k < m; ++k) count *= std::size(kFlagGrid);
  for (std::size_t zero_at = 0; zero_at < m; ++zero_at) {
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rest = idx;
      for (std::size_t k = 0; k < m; ++k) {
        args[k] = kFlagGrid[rest % std::size(kFlagGrid)];
        rest /= std::size(kFlagGrid);
      }
      args[zero_at] = 0.0;
      if (G(args) != 0.0) return false;
    }
  }
  return true;
}

}  // namespace

double extended_riesz_sum(const std::vector<SparseFunction>& us,
                          const std::function<double(std::span<const double>)>& G,
                          const std::vector<std::vector<Kernel>>& kernels) {
  const std::size_t m = us.size();
  if (m < 2 || m > 3)
    throw std::invalid_argument("extended_riesz_sum: m must be 2 or 3");
  if (kernels.size() != m)
    throw std::invalid_argument("extended_riesz_sum: kernel matrix must be m x m");
  for (const auto& row : kernels)
    if (row.size() != m)
      throw std::invalid_argument("extended_riesz_sum: kernel matrix must be m x m");
  const int d = us.front().dim();
  for (const SparseFunction& u : us)
    if (u.dim() != d) throw std::invalid_argument("extended_riesz_sum: dimension mismatch");

  if (m == 2) {
    Bivariate g2 = Bivariate::make([&G](double s, double t) {
      const std::array<double, 2> a{s, t};
      return G(std::span<const double>(a));
    });
    return riesz_sum(us[0], us[1], g2, kernels[0][1]);
  }

  const bool margins = vanishes_when_any_zero(G, m);
  std::array<double, 3> args{};
  if (margins) {
    double sum = 0.0;
    for (const auto& [x0, a0] : us[0].entries())
      for (const auto& [x1, a1] : us[1].entries()) {
        const double h01 = kernels[0][1](graph_distance(x0, x1));
        if (h01 == 0.0) continue;
        for (const auto& [x2, a2] : us[2].entries()) {
          const double h = h01 * kernels[0][2](graph_distance(x0, x2)) *
                           kernels[1][2](graph_distance(x1, x2));
          if (h == 0.0) continue;
          args = {a0, a1, a2};
          sum += G(std::span<const double>(args)) * h;
        }
      }
    return sum;
  }

  args = {0.0, 0.0, 0.0};
  if (G(std::span<const double>(args)) != 0.0)
    throw std::domain_error("extended_riesz_sum: G(0,0,0) must be 0");
  int max_cut = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!kernels[i][j].finitely_supported())
        throw std::domain_error(
            "extended_riesz_sum: divergent configuration (kernels must be finitely "
            "supported when G has nonzero margins)");
      max_cut = std::max(max_cut, kernels[i][j].cutoff());
    }
  // Every nonzero term has all points within max_cut of some support point.
  std::set<Point> domain;
  const std::vector<Point> ball = diamond_ball(max_cut, d);
  for (const SparseFunction& u : us)
    for (const auto& [x, v] : u.entries())
      for (const Point& o : ball) {
        Point y(d);
        for (int k = 0; k < d; ++k) y[k] = x[k] + o[k];
        domain.insert(std::move(y));
      }
  if (domain.size() > 600)
    throw std::invalid_argument("extended_riesz_sum: instance too large for exact evaluation");
  double sum = 0.0;
  for (const Point& x0 : domain) {
    const double a0 = us[0].at(x0);
    for (const Point& x1 : domain) {
      const double h01 = kernels[0][1](graph_distance(x0, x1));
      if (h01 == 0.0) continue;
      const double a1 = us[1].at(x1);
      for (const Point& x2 : domain) {
        const double h = h01 * kernels[0][2](graph_distance(x0, x2)) *
                         kernels[1][2](graph_distance(x1, x2));
        if (h == 0.0) continue;
        args = {a0, a1, us[2].at(x2)};
        sum += G(std::span<const double>(args)) * h;
      }
    }
  }
  return sum;
}

double hardy_littlewood_sum(const SparseFunction& u, const SparseFunction& v) {
  if (u.dim() != v.dim())
    throw std::invalid_argument("hardy_littlewood_sum: dimension mismatch");
  double sum = 0.0;
  for (const auto& [x, a] : u.entries()) {
    const double b = v.at(x);
    if (b > 0.0) sum += a * b;
  }
  return sum;
}

namespace {

double lp_difference_power(const SparseFunction& u, const SparseFunction& v, double p) {
  double sum = 0.0;
  for (const auto& [x, a] : u.entries()) sum += std::pow(std::abs(a - v.at(x)), p);
  for (const auto& [x, b] : v.entries())
    if (u.at(x) == 0.0) sum += std::pow(b, p);
  return sum;
}

}  // namespace

double lp_contraction_gap(const SparseFunction& u, const SparseFunction& v, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_contraction_gap: p must be >= 1");
  const SparseFunction us = schwarz_rearrange(u);
  const SparseFunction vs = schwarz_rearrange(v);
  return lp_difference_power(u, v, p) - lp_difference_power(us, vs, p);
}

double f_weighted_sum(const SparseFunction& u,
                      const std::function<double(double, double)>& F, int window_radius) {
  for (const auto& [x, v] : u.entries())
    for (int c : x)
      if (std::abs(c) > window_radius)
        throw std::invalid_argument("f_weighted_sum: window does not cover the support");
  double sum = 0.0;
  for (const Point& x : box_ball(window_radius, u.dim())) {
    double r2 = 0.0;
    for (int c : x) r2 += static_cast<double>(c) * c;
    sum += F(std::sqrt(r2), u.at(x));
  }
  return sum;
}

SupermodularVerdict check_supermodular(const Bivariate& G,
                                       std::span<const std::array<double, 4>> quads,
                                       bool strict) {
  for (const auto& q : quads) {
    const auto [s, t, s0, t0] = q;
    const double lhs = G(s + s0, t + t0) + G(s, t);
    const double rhs = G(s, t + t0) + G(s + s0, t);
    const double tol = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (lhs < rhs - tol) return {false, q};
    if (strict && s0 > 0.0 && t0 > 0.0 && lhs <= rhs + tol) return {false, q};
  }
  return {true, std::nullopt};
}

std::vector<std::array<double, 4>> supermodular_grid(std::uint64_t seed) {
  std::vector<std::array<double, 4>> quads;
  for (double s : kFlagGrid)
    for (double t : kFlagGrid)
      for (double s0 : kFlagGrid)
        for (double t0 : kFlagGrid) quads.push_back({s, t, s0, t0});
  Rng rng(seed);
  for (int k = 0; k < 100; ++k)
    quads.push_back({5.0 * rng.uniform(), 5.0 * rng.uniform(), 5.0 * rng.uniform(),
                     5.0 * rng.uniform()});
  return quads;
}

}  // namespace rearr
