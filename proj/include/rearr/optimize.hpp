#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rearr/lattice.hpp"

namespace rearr {

/// Computational domain: the box of the given radius with zero Dirichlet
/// values outside; all iterates stay supported in it.
struct TruncatedDomain {
  int dim = 2;
  int radius = 10;
};

/// Per-iteration record of a constrained descent run.
struct MinimizationTrace {
  std::vector<double> energies;
  std::vector<double> constraint_residuals;
  std::vector<std::size_t> rearrangement_steps;
  /// Objective value immediately before/after each rearrangement step.
  std::vector<std::pair<double, double>> rearrangement_energies;
};

/// E(u) = 1/2 ||grad u||_2^2 - (2+2s)^-1 sum u^(2+2s).
double dnls_energy(const SparseFunction& u, double sigma);

/// Tent profile proportional to (K - ||x||_1)_+ scaled so the l2 norm is
/// exactly c; supported on the diamond of radius K-1.
SparseFunction normalized_tent(int K, double c, int dim);

/// l2 norm of -lap(u) + omega u - u^(2s+1) over the whole domain box.
double euler_lagrange_residual(const SparseFunction& u, double omega, double sigma,
                               const TruncatedDomain& domain);

/// Schwarz rearrangement evaluated on a dense grid over the domain box;
/// agrees exactly with schwarz_rearrange for functions supported in the box
/// (the minimizers use this path, it is much faster on dense iterates).
SparseFunction schwarz_rearrange_boxed(const SparseFunction& u, const TruncatedDomain& domain);

struct DescentOptions {
  std::size_t max_iters = 50000;
  double tol = 1e-8;
  std::size_t rearrange_period = 10;
};

struct DnlsResult {
  SparseFunction minimizer;
  double energy = 0.0;  // the attained infimum I_c
  double omega = 0.0;   // Lagrange multiplier from a Rayleigh fit
  double el_residual = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  MinimizationTrace trace;
};

/// Ground state of the focusing lattice Schroedinger energy on the sphere
/// ||u||_2 = c: projected gradient descent with periodic Schwarz
/// rearrangement steps.  Requires 0 < sigma < 2/dim.
DnlsResult minimize_dnls(double c, double sigma, const TruncatedDomain& domain,
                         const DescentOptions& opts = {});

struct WaveResult {
  SparseFunction minimizer;
  double objective = 0.0;  // I_omega
  bool converged = false;
  std::size_t iterations = 0;
  MinimizationTrace trace;
};

/// Minimizes ||grad u||_2^2 + omega ||u||_2^2 over ||u||_{2s+2} = 1.
WaveResult minimize_wave(double omega, double sigma, const TruncatedDomain& domain,
                         const DescentOptions& opts = {});

struct SobolevResult {
  SparseFunction minimizer;
  double energy = 0.0;  // ||grad u||_p at the minimizer
  bool converged = false;
  std::size_t iterations = 0;
  MinimizationTrace trace;
};

/// Minimizes ||grad u||_p over ||u||_q = 1 by descent on the p-Laplacian flow
/// with rearrangement steps; requires dim >= 3, 1 <= p < dim and q > dp/(d-p).
SobolevResult minimize_sobolev_extremal(double p, double q, const TruncatedDomain& domain,
                                        const DescentOptions& opts = {});

}  // namespace rearr
