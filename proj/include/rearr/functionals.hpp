#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rearr/lattice.hpp"

namespace rearr {

/// Non-increasing kernel on graph distances, stored as a finite table with an
/// explicit cutoff; distances beyond the cutoff read the tail value (zero
/// unless stated, in which case the kernel is finitely supported).
class Kernel {
 public:
  explicit Kernel(std::vector<double> table, double tail = 0.0);

  double operator()(int distance) const;
  int cutoff() const { return static_cast<int>(table_.size()) - 1; }
  double tail() const { return tail_; }
  bool finitely_supported() const { return tail_ == 0.0; }

  static Kernel delta0();                         // 1 at distance 0
  static Kernel geometric(double base, int cutoff);  // base^-t, zero past cutoff
  static Kernel step(int radius);                 // 1 on [0, radius]

 private:
  std::vector<double> table_;
  double tail_;
};

/// Bivariate integrand G(s, t) on the nonnegative quadrant.  The zero flags
/// are sampled on construction: `zero_at_origin` checks G(0,0) exactly and
/// `zero_margins` checks G(s,0) = G(0,t) = 0 on a sample grid.
class Bivariate {
 public:
  static Bivariate make(std::function<double(double, double)> g);
  static Bivariate product();                 // s * t
  static Bivariate neg_abs_diff(double p);    // -|s - t|^p
  static Bivariate min();                     // min(s, t)

  double operator()(double s, double t) const { return g_(s, t); }
  bool zero_at_origin() const { return zero_at_origin_; }
  bool zero_margins() const { return zero_margins_; }

 private:
  Bivariate() = default;

  std::function<double(double, double)> g_;
  bool zero_at_origin_ = false;
  bool zero_margins_ = false;
};

/// lp norm over the support; p may be infinity.
double lp_norm(const SparseFunction& u, double p);

/// Sum of |u(x) - u(y)|^p over all lattice edges with at least one endpoint in
/// the support, each edge counted once (this is ||grad u||_p^p).
double sobolev_energy(const SparseFunction& u, double p);

/// Sum of f(u(x)) over the support; requires f(0) = 0 so the off-support part
/// contributes nothing.
double cavalieri_sum(const SparseFunction& u, const std::function<double(double)>& f);

/// Double sum of G(u(x), v(y)) H(d(x, y)).  Finite evaluation requires either
/// zero margins on G, or G(0,0) = 0 together with a finitely supported H;
/// any other configuration diverges and is rejected.
double riesz_sum(const SparseFunction& u, const SparseFunction& v, const Bivariate& G,
                 const Kernel& H);

/// G~(s,t) = G(s,t) - G(s,0) - G(0,t); has zero margins and the same
/// supermodularity defect as G.  Requires G(0,0) = 0.
Bivariate reduce_to_tilde(const Bivariate& G);

/// m-fold sum of G(u_1(x_1),...,u_m(x_m)) * prod_{i<j} H_ij(d(x_i, x_j)) for
/// m in {2, 3}; kernels[i][j] (i < j) must be finitely supported unless G
/// vanishes whenever any argument is zero.
double extended_riesz_sum(const std::vector<SparseFunction>& us,
                          const std::function<double(std::span<const double>)>& G,
                          const std::vector<std::vector<Kernel>>& kernels);

/// Sum of u(x) v(x) over the common support.
double hardy_littlewood_sum(const SparseFunction& u, const SparseFunction& v);

/// ||u - v||_p^p - ||u* - v*||_p^p, nonnegative up to rounding.
double lp_contraction_gap(const SparseFunction& u, const SparseFunction& v, double p);

/// Sum over the box of radius `window_radius` of F(|x|_2, u(x)); the window
/// must cover the support of u.
double f_weighted_sum(const SparseFunction& u,
                      const std::function<double(double, double)>& F, int window_radius);

struct SupermodularVerdict {
  bool pass = true;
  std::optional<std::array<double, 4>> witness;  // first violating (s, t, s0, t0)
};

/// Checks G(s+s0, t+t0) + G(s, t) >= G(s, t+t0) + G(s+s0, t) on the given
/// quadruples; in strict mode the inequality must be strict whenever
/// s0, t0 > 0.  Sampling can only falsify supermodularity, never prove it.
SupermodularVerdict check_supermodular(const Bivariate& G,
                                       std::span<const std::array<double, 4>> quads,
                                       bool strict);

/// Default quadruple grid: {0, 0.25, 0.5, 1, 2, 5}^4 plus 100 seeded random
/// quadruples.
std::vector<std::array<double, 4>> supermodular_grid(std::uint64_t seed);

}  // namespace rearr
