#include "rearr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rearr/functionals.hpp"
#include "rearr/rearrange.hpp"

namespace rearr {

namespace {

/// Dense values on the domain box; everything outside is Dirichlet zero.
struct Grid {
  int dim = 0;
  int radius = 0;
  int side = 0;
  std::vector<double> v;

  static Grid zeros(const TruncatedDomain& dom) {
    if (dom.dim < 1 || dom.dim > 3)
      throw std::invalid_argument("TruncatedDomain: dim must be 1, 2 or 3");
    if (dom.radius < 1) throw std::invalid_argument("TruncatedDomain: radius must be >= 1");
    Grid g;
    g.dim = dom.dim;
    g.radius = dom.radius;
    g.side = 2 * dom.radius + 1;
    std::size_t n = 1;
    for (int k = 0; k < g.dim; ++k) n *= g.side;
    g.v.assign(n, 0.0);
    return g;
  }

  std::size_t size() const { return v.size(); }

  Point point_at(std::size_t flat) const {
    Point x(dim);
    for (int k = 0; k < dim; ++k) {
      x[k] = static_cast<int>(flat % side) - radius;
      flat /= side;
    }
    return x;
  }

  std::size_t flat_of(const Point& x) const {
    std::size_t idx = 0;
    for (int k = dim - 1; k >= 0; --k) idx = idx * side + (x[k] + radius);
    return idx;
  }

  /// Sum of the in-box neighbor values of the cell at `flat`.
  double neighbor_sum(std::size_t flat) const {
    double s = 0.0;
    std::size_t stride = 1;
    std::size_t rest = flat;
    for (int k = 0; k < dim; ++k) {
      const int c = static_cast<int>(rest % side);
      if (c > 0) s += v[flat - stride];
      if (c + 1 < side) s += v[flat + stride];
      stride *= side;
      rest /= side;
    }
    return s;
  }
};

Grid to_grid(const SparseFunction& u, const TruncatedDomain& dom) {
  Grid g = Grid::zeros(dom);
  for (const auto& [x, val] : u.entries()) {
    for (int c : x)
      if (std::abs(c) > dom.radius)
        throw std::invalid_argument("optimize: function not supported in the domain");
    g.v[g.flat_of(x)] = val;
  }
  return g;
}

SparseFunction to_sparse(const Grid& g) {
  SparseFunction u(g.dim);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.v[i] > 0.0) u.set(g.point_at(i), g.v[i]);
  return u;
}

double dot(const Grid& a, const Grid& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.v[i] * b.v[i];
  return s;
}

double norm2(const Grid& a) { return std::sqrt(dot(a, a)); }

double power_norm(const Grid& a, double p) {
  double s = 0.0;
  for (double x : a.v)
    if (x != 0.0) s += std::pow(std::abs(x), p);
  return s;  // sum |u|^p, not the norm
}

/// Sum over edges (with an endpoint in the box) of |du|^2, Dirichlet outside.
double grad_sq(const Grid& g) {
  double s = 0.0;
  std::size_t stride = 1;
  for (int k = 0; k < g.dim; ++k) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const int c = static_cast<int>((i / stride) % g.side);
      const double right = (c + 1 < g.side) ? g.v[i + stride] : 0.0;
      const double d = g.v[i] - right;
      s += d * d;
      if (c == 0) s += g.v[i] * g.v[i];  // edge leaving the box on the low side
    }
    stride *= g.side;
  }
  return s;
}

/// Sum over edges of |du|^p.
double grad_power(const Grid& g, double p) {
  if (p == 2.0) return grad_sq(g);
  double s = 0.0;
  std::size_t stride = 1;
  for (int k = 0; k < g.dim; ++k) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const int c = static_cast<int>((i / stride) % g.side);
      const double right = (c + 1 < g.side) ? g.v[i + stride] : 0.0;
      const double d = std::abs(g.v[i] - right);
      if (d != 0.0) s += std::pow(d, p);
      if (c == 0 && g.v[i] != 0.0) s += std::pow(g.v[i], p);
    }
    stride *= g.side;
  }
  return s;
}

/// laplacian(u)(x) = sum_{y~x} (u(y) - u(x)) with zero outside the box.
Grid laplacian(const Grid& g) {
  Grid out = g;
  for (std::size_t i = 0; i < g.size(); ++i)
    out.v[i] = g.neighbor_sum(i) - 2.0 * g.dim * g.v[i];
  return out;
}

double dnls_energy_grid(const Grid& g, double sigma) {
  const double q = 2.0 + 2.0 * sigma;
  return 0.5 * grad_sq(g) - power_norm(g, q) / q;
}

/// Doubled position receiving the k-th largest value; mirrors the placement
/// rule of rearrange_line.
int placement_target2(bool half, std::size_t k) {
  if (!half) {
    if (k == 0) return 0;
    return k % 2 == 1 ? static_cast<int>(k) + 1 : -static_cast<int>(k);
  }
  return k % 2 == 0 ? static_cast<int>(k) + 1 : -static_cast<int>(k);
}

/// One line's worth of (doubled position, value) pairs, rearranged in place
/// on the grid.  `cells` maps doubled positions to flat indices.
void rearrange_line_cells(Grid& g, const std::vector<std::pair<int, std::size_t>>& cells,
                          bool half, std::vector<double>& values) {
  values.clear();
  for (const auto& [pos2, flat] : cells)
    if (g.v[flat] > 0.0) values.push_back(g.v[flat]);
  if (values.empty()) return;
  std::sort(values.begin(), values.end(), std::greater<double>());
  for (const auto& [pos2, flat] : cells) g.v[flat] = 0.0;
  // In-box line segments are centered position intervals with step 2, so the
  // canonical placement never leaves the segment and can be indexed directly.
  const int base = cells.front().first;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::size_t idx = static_cast<std::size_t>((placement_target2(half, k) - base) / 2);
    g.v[cells[idx].second] = values[k];
  }
}

void one_step_grid(Grid& g, const Direction& e) {
  const int L = g.radius;
  std::vector<double> values;
  std::vector<std::pair<int, std::size_t>> cells;
  // Enumerate the lines of the partition that meet the box.  `others` runs
  // over the coordinates that stay fixed along the line.
  std::vector<int> fixed_axes;
  for (int k = 0; k < g.dim; ++k)
    if (k != e.i && (e.kind == Direction::Kind::axis || k != e.j)) fixed_axes.push_back(k);

  Point x(g.dim, 0);
  std::vector<int> others(fixed_axes.size(), -L);
  const auto for_each_line = [&](auto&& line_body) {
    while (true) {
      for (std::size_t k = 0; k < fixed_axes.size(); ++k) x[fixed_axes[k]] = others[k];
      line_body();
      std::size_t k = 0;
      while (k < others.size() && others[k] == L) others[k++] = -L;
      if (k == others.size()) break;
      ++others[k];
    }
  };

  if (e.kind == Direction::Kind::axis) {
    for_each_line([&] {
      cells.clear();
      for (int c = -L; c <= L; ++c) {
        x[e.i] = c;
        cells.emplace_back(2 * c, g.flat_of(x));
      }
      rearrange_line_cells(g, cells, /*half=*/false, values);
    });
    return;
  }

  // Diagonal lines: the invariant inv is x_i - x_j (plus) or x_i + x_j
  // (minus); along the line pos2 = 2 x_i - inv, and the line's parity is the
  // parity of inv.
  const bool plus = e.kind == Direction::Kind::diag_plus;
  for (int inv = -2 * L; inv <= 2 * L; ++inv) {
    const int lo = std::max(-L, inv - L);
    const int hi = std::min(L, inv + L);
    for_each_line([&] {
      cells.clear();
      for (int xi = lo; xi <= hi; ++xi) {
        x[e.i] = xi;
        x[e.j] = plus ? xi - inv : inv - xi;
        cells.emplace_back(2 * xi - inv, g.flat_of(x));
      }
      rearrange_line_cells(g, cells, /*half=*/inv % 2 != 0, values);
    });
  }
}

void schwarz_rearrange_grid(Grid& g) {
  const std::vector<Direction> cycle = direction_set(g.dim);
  const std::size_t max_cycles = 10 * (g.size() + 9);
  std::vector<double> before;
  for (std::size_t c = 0; c < max_cycles; ++c) {
    before = g.v;
    for (const Direction& e : cycle) one_step_grid(g, e);
    if (g.v == before) return;
  }
  throw std::runtime_error("schwarz_rearrange_grid: no fixed point (unexpected)");
}

Grid rearranged(const Grid& g) {
  Grid out = g;
  schwarz_rearrange_grid(out);
  return out;
}

}  // namespace

SparseFunction schwarz_rearrange_boxed(const SparseFunction& u, const TruncatedDomain& domain) {
  Grid g = to_grid(u, domain);
  schwarz_rearrange_grid(g);
  return to_sparse(g);
}

double dnls_energy(const SparseFunction& u, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("dnls_energy: sigma must be positive");
  const double q = 2.0 + 2.0 * sigma;
  double nl = 0.0;
  for (const auto& [x, v] : u.entries()) nl += std::pow(v, q);
  return 0.5 * sobolev_energy(u, 2.0) - nl / q;
}

SparseFunction normalized_tent(int K, double c, int dim) {
  if (K < 1) throw std::invalid_argument("normalized_tent: K must be >= 1");
  if (c <= 0.0) throw std::invalid_argument("normalized_tent: c must be positive");
  const double scale = std::pow(static_cast<double>(K), 0.5 * dim + 1.0);
  SparseFunction u(dim);
  double norm_sq = 0.0;
  for (const Point& x : diamond_ball(K - 1, dim)) {
    const double v = (K - graph_distance(x, Point(dim, 0))) / scale;
    u.set(x, v);
    norm_sq += v * v;
  }
  const double factor = c / std::sqrt(norm_sq);
  SparseFunction out(dim);
  for (const auto& [x, v] : u.entries()) out.set(x, v * factor);
  return out;
}

double euler_lagrange_residual(const SparseFunction& u, double omega, double sigma,
                               const TruncatedDomain& domain) {
  const Grid g = to_grid(u, domain);
  const Grid lap = laplacian(g);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = -lap.v[i] + omega * g.v[i] - std::pow(g.v[i], 2.0 * sigma + 1.0);
    s += r * r;
  }
  return std::sqrt(s);
}

namespace {

struct ConstrainedProblem {
  // Objective and its Euclidean gradient.
  std::function<double(const Grid&)> objective;
  std::function<Grid(const Grid&)> gradient;
  // Constraint-normalizing map (rescales onto the constraint manifold) and
  // the constraint gradient used for tangent projection.
  std::function<void(Grid&)> normalize;
  std::function<Grid(const Grid&)> constraint_gradient;
  std::function<double(const Grid&)> constraint_residual;
};

struct DescentOutcome {
  Grid u;
  double objective = 0.0;
  double residual = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  MinimizationTrace trace;
};

/// Projected gradient descent with nonnegativity clamp, renormalization onto
/// the constraint manifold, backtracking halving from 0.5, and a Schwarz
/// rearrangement every `rearrange_period` iterations.  Rearrangement steps
/// are descent steps for all three problems, so objectives never increase
/// across them.
DescentOutcome run_descent(Grid u, const ConstrainedProblem& prob,
                           const DescentOptions& opts) {
  DescentOutcome out;
  out.u = std::move(u);
  prob.normalize(out.u);
  double energy = prob.objective(out.u);
  double residual = 0.0;
  std::size_t it = 0;
  for (it = 1; it <= opts.max_iters; ++it) {
    if (opts.rearrange_period != 0 && it % opts.rearrange_period == 0) {
      const double before = energy;
      Grid r = rearranged(out.u);
      prob.normalize(r);  // rearrangement preserves the constraint; re-assert exactly
      const double after = prob.objective(r);
      out.u = std::move(r);
      energy = after;
      out.trace.rearrangement_steps.push_back(it);
      out.trace.rearrangement_energies.emplace_back(before, after);
    }
    Grid g = prob.gradient(out.u);
    const Grid c = prob.constraint_gradient(out.u);
    const double scale = dot(g, c) / dot(c, c);
    for (std::size_t i = 0; i < g.size(); ++i) g.v[i] -= scale * c.v[i];
    residual = norm2(g);
    out.trace.energies.push_back(energy);
    out.trace.constraint_residuals.push_back(prob.constraint_residual(out.u));
    if (residual < opts.tol) {
      out.converged = true;
      break;
    }
    double alpha = 0.5;
    bool accepted = false;
    while (alpha > 1e-16) {
      Grid trial = out.u;
      for (std::size_t i = 0; i < trial.size(); ++i)
        trial.v[i] = std::max(0.0, trial.v[i] - alpha * g.v[i]);
      if (norm2(trial) > 0.0) {
        prob.normalize(trial);
        const double trial_energy = prob.objective(trial);
        if (trial_energy <= energy - 1e-4 * alpha * residual * residual) {
          out.u = std::move(trial);
          energy = trial_energy;
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // no measurable progress left at this precision
  }
  out.iterations = std::min(it, opts.max_iters);
  // Land exactly on a rearrangement fixed point: rearranging never increases
  // any of these objectives, and the fixed-point property survives the
  // constraint rescaling because scaling preserves the value ordering.
  Grid r = rearranged(out.u);
  prob.normalize(r);
  out.u = std::move(r);
  out.objective = prob.objective(out.u);
  out.residual = residual;
  return out;
}

}  // namespace

DnlsResult minimize_dnls(double c, double sigma, const TruncatedDomain& domain,
                         const DescentOptions& opts) {
  if (c <= 0.0) throw std::invalid_argument("minimize_dnls: c must be positive");
  if (sigma <= 0.0 || sigma >= 2.0 / domain.dim)
    throw std::invalid_argument("minimize_dnls: need 0 < sigma < 2/dim (subcritical)");
  const double q = 2.0 + 2.0 * sigma;

  ConstrainedProblem prob;
  prob.objective = [sigma](const Grid& g) { return dnls_energy_grid(g, sigma); };
  prob.gradient = [q](const Grid& g) {
    Grid grad = laplacian(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      grad.v[i] = -grad.v[i] - std::pow(g.v[i], q - 1.0);
    return grad;
  };
  prob.normalize = [c](Grid& g) {
    const double n = norm2(g);
    for (double& x : g.v) x *= c / n;
  };
  prob.constraint_gradient = [](const Grid& g) { return g; };  // grad of ||u||_2^2 up to 2
  prob.constraint_residual = [c](const Grid& g) { return std::abs(norm2(g) - c); };

  Grid init = to_grid(normalized_tent(domain.radius, c, domain.dim), domain);
  DescentOutcome outcome = run_descent(std::move(init), prob, opts);

  DnlsResult result;
  result.minimizer = to_sparse(outcome.u);
  result.energy = outcome.objective;
  result.converged = outcome.converged;
  result.iterations = outcome.iterations;
  result.trace = std::move(outcome.trace);
  // Rayleigh fit of the multiplier: omega = <lap u + u^(2s+1), u> / ||u||^2.
  const Grid lap = laplacian(outcome.u);
  double num = 0.0;
  for (std::size_t i = 0; i < outcome.u.size(); ++i)
    num += (lap.v[i] + std::pow(outcome.u.v[i], q - 1.0)) * outcome.u.v[i];
  result.omega = num / (c * c);
  result.el_residual = euler_lagrange_residual(result.minimizer, result.omega, sigma, domain);
  return result;
}

WaveResult minimize_wave(double omega, double sigma, const TruncatedDomain& domain,
                         const DescentOptions& opts) {
  if (omega <= 0.0) throw std::invalid_argument("minimize_wave: omega must be positive");
  if (sigma <= 0.0) throw std::invalid_argument("minimize_wave: sigma must be positive");
  const double q = 2.0 + 2.0 * sigma;

  ConstrainedProblem prob;
  prob.objective = [omega](const Grid& g) { return grad_sq(g) + omega * dot(g, g); };
  prob.gradient = [omega](const Grid& g) {
    Grid grad = laplacian(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      grad.v[i] = -2.0 * grad.v[i] + 2.0 * omega * g.v[i];
    return grad;
  };
  prob.normalize = [q](Grid& g) {
    const double n = std::pow(power_norm(g, q), 1.0 / q);
    for (double& x : g.v) x /= n;
  };
  prob.constraint_gradient = [q](const Grid& g) {
    Grid c = g;
    for (double& x : c.v) x = q * std::pow(x, q - 1.0);
    return c;
  };
  prob.constraint_residual = [q](const Grid& g) {
    return std::abs(std::pow(power_norm(g, q), 1.0 / q) - 1.0);
  };

  Grid init = to_grid(normalized_tent(domain.radius, 1.0, domain.dim), domain);
  DescentOutcome outcome = run_descent(std::move(init), prob, opts);

  WaveResult result;
  result.minimizer = to_sparse(outcome.u);
  result.objective = outcome.objective;
  result.converged = outcome.converged;
  result.iterations = outcome.iterations;
  result.trace = std::move(outcome.trace);
  return result;
}

SobolevResult minimize_sobolev_extremal(double p, double q, const TruncatedDomain& domain,
                                        const DescentOptions& opts) {
  if (domain.dim < 3)
    throw std::invalid_argument("minimize_sobolev_extremal: requires dim >= 3");
  if (p < 1.0 || p >= domain.dim)
    throw std::invalid_argument("minimize_sobolev_extremal: requires 1 <= p < dim");
  const double p_star = domain.dim * p / (domain.dim - p);
  if (q <= p_star)
    throw std::invalid_argument("minimize_sobolev_extremal: requires q > dp/(d-p)");

  ConstrainedProblem prob;
  prob.objective = [p](const Grid& g) { return grad_power(g, p); };
  prob.gradient = [p](const Grid& g) {
    if (p == 2.0) {
      Grid grad = laplacian(g);
      for (double& x : grad.v) x = -2.0 * x;
      return grad;
    }
    // d/du(x) of sum |du|^p is -p * (p-Laplacian); sign(0) := 0 covers p = 1.
    Grid grad = g;
    for (std::size_t i = 0; i < g.size(); ++i) {
      double lap_p = 0.0;
      std::size_t stride = 1;
      std::size_t rest = i;
      for (int k = 0; k < g.dim; ++k) {
        const int c = static_cast<int>(rest % g.side);
        const double left = c > 0 ? g.v[i - stride] : 0.0;
        const double right = c + 1 < g.side ? g.v[i + stride] : 0.0;
        for (double nb : {left, right}) {
          const double d = nb - g.v[i];
          if (d != 0.0) lap_p += std::copysign(std::pow(std::abs(d), p - 1.0), d);
        }
        stride *= g.side;
        rest /= g.side;
      }
      grad.v[i] = -p * lap_p;
    }
    return grad;
  };
  prob.normalize = [q](Grid& g) {
    const double n = std::pow(power_norm(g, q), 1.0 / q);
    for (double& x : g.v) x /= n;
  };
  prob.constraint_gradient = [q](const Grid& g) {
    Grid c = g;
    for (double& x : c.v) x = q * std::pow(x, q - 1.0);
    return c;
  };
  prob.constraint_residual = [q](const Grid& g) {
    return std::abs(std::pow(power_norm(g, q), 1.0 / q) - 1.0);
  };

  Grid init = to_grid(normalized_tent(domain.radius, 1.0, domain.dim), domain);
  DescentOutcome outcome = run_descent(std::move(init), prob, opts);

  SobolevResult result;
  result.minimizer = to_sparse(outcome.u);
  result.energy = std::pow(outcome.objective, 1.0 / p);
  result.converged = outcome.converged;
  result.iterations = outcome.iterations;
  result.trace = std::move(outcome.trace);
  return result;
}

}  // namespace rearr
