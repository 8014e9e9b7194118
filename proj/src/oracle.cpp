#include "rearr/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace rearr {

namespace {

std::vector<Point> normalize_translation(std::vector<Point> pts) {
  int lo0 = pts.front()[0], lo1 = pts.front()[1];
  for (const Point& p : pts) {
    lo0 = std::min(lo0, p[0]);
    lo1 = std::min(lo1, p[1]);
  }
  for (Point& p : pts) {
    p[0] -= lo0;
    p[1] -= lo1;
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

std::vector<ShapeClass> enumerate_connected_supports(int size) {
  if (size < 1) throw std::invalid_argument("enumerate_connected_supports: size must be >= 1");
  if (size > 8)
    throw std::invalid_argument("enumerate_connected_supports: size exceeds the budget of 8");
  // Grow translation-normalized fixed polyominoes one cell at a time, then
  // collapse to free classes.
  std::set<std::vector<Point>> fixed = {{Point{0, 0}}};
  for (int n = 2; n <= size; ++n) {
    std::set<std::vector<Point>> next;
    for (const std::vector<Point>& shape : fixed) {
      for (const Point& cell : shape) {
        for (const Point& nb : neighbors(cell)) {
          if (std::find(shape.begin(), shape.end(), nb) != shape.end()) continue;
          std::vector<Point> grown = shape;
          grown.push_back(nb);
          next.insert(normalize_translation(std::move(grown)));
        }
      }
    }
    fixed = std::move(next);
  }
  std::set<ShapeClass> classes;
  for (const std::vector<Point>& shape : fixed) classes.insert(canonical_shape(shape));
  return {classes.begin(), classes.end()};
}

AssignmentResult min_energy_assignment(const ValueMultiset& values, const ShapeClass& shape) {
  const std::size_t n = shape.size();
  if (values.size() != n)
    throw std::invalid_argument("min_energy_assignment: size mismatch");
  if (n > 8) throw std::invalid_argument("min_energy_assignment: size exceeds the budget of 8");
  const std::vector<Point>& cells = shape.canonical_points;
  const int two_d = 2 * shape.dim();

  std::vector<std::pair<int, int>> edges;
  std::vector<int> boundary_degree(n, two_d);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (graph_distance(cells[a], cells[b]) == 1) {
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        --boundary_degree[a];
        --boundary_degree[b];
      }

  std::vector<double> perm = values;
  std::sort(perm.begin(), perm.end());  // next_permutation walks distinct orders
  double best = -1.0;
  std::vector<double> best_perm;
  do {
    double energy = 0.0;
    for (const auto& [a, b] : edges) {
      const double d = perm[a] - perm[b];
      energy += d * d;
    }
    for (std::size_t k = 0; k < n; ++k) energy += boundary_degree[k] * perm[k] * perm[k];
    if (best < 0.0 || energy < best) {
      best = energy;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  AssignmentResult out;
  out.energy_sq = best;
  out.shape = shape;
  for (std::size_t k = 0; k < n; ++k) out.placement[cells[k]] = best_perm[k];
  return out;
}

MinimizerSearch equimeasurable_minimizers(const ValueMultiset& values) {
  if (values.empty()) throw std::invalid_argument("equimeasurable_minimizers: empty multiset");
  if (values.size() > 6)
    throw std::invalid_argument("equimeasurable_minimizers: size exceeds the budget of 6");
  const std::vector<ShapeClass> shapes =
      enumerate_connected_supports(static_cast<int>(values.size()));
  std::vector<double> energies;
  energies.reserve(shapes.size());
  double min_energy = -1.0;
  for (const ShapeClass& shape : shapes) {
    const double e = min_energy_assignment(values, shape).energy_sq;
    energies.push_back(e);
    if (min_energy < 0.0 || e < min_energy) min_energy = e;
  }
  MinimizerSearch out;
  out.min_energy_sq = min_energy;
  for (std::size_t k = 0; k < shapes.size(); ++k)
    if (energies[k] <= min_energy * (1.0 + 1e-12)) out.minimizers.push_back(shapes[k]);
  return out;
}

SparseFunction plus_eigenvector() {
  const std::vector<Point> cells = diamond_ball(1, 2);  // sorted plus pentomino
  const int n = static_cast<int>(cells.size());
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    laplacian(a, a) = 4.0;
    for (int b = 0; b < n; ++b)
      if (a != b && graph_distance(cells[a], cells[b]) == 1) laplacian(a, b) = -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  Eigen::VectorXd ground = solver.eigenvectors().col(0);
  if (ground.sum() < 0.0) ground = -ground;
  ground.normalize();
  SparseFunction u(2);
  for (int k = 0; k < n; ++k) u.set(cells[k], ground(k));
  return u;
}

namespace {

const std::vector<Point> kPPentomino = {{0, 0}, {0, 1}, {1, 0}, {0, -1}, {1, 1}};

bool unique_minimizer(const ValueMultiset& values, const ShapeClass& target,
                      MinimizerSearch* search_out = nullptr) {
  MinimizerSearch search = equimeasurable_minimizers(values);
  if (search_out) *search_out = search;
  return search.minimizers.size() == 1 && search.minimizers.front() == target;
}

/// The largest value of the optimal placement sits at the cell with a full
/// set of in-shape neighbors.
bool max_value_at_center(const ValueMultiset& values, const ShapeClass& shape) {
  const AssignmentResult r = min_energy_assignment(values, shape);
  const Point* argmax = nullptr;
  double best = -1.0;
  for (const auto& [p, v] : r.placement) {
    if (v > best) {
      best = v;
      argmax = &p;
    }
  }
  int degree = 0;
  for (const Point& nb : neighbors(*argmax))
    if (r.placement.count(nb)) ++degree;
  return degree == 2 * shape.dim();
}

/// Every congruent copy of the shape containing the origin as a cell also
/// contains a diagonal neighbor (+-1, +-1) of the origin.
bool every_placement_has_diagonal_through_origin(const ShapeClass& shape) {
  for (const SignedPermutation& g : signed_permutations(shape.dim())) {
    std::vector<Point> image;
    for (const Point& p : shape.canonical_points) image.push_back(g.apply(p));
    for (const Point& anchor : image) {
      bool has_diagonal = false;
      for (const Point& p : image) {
        if (std::abs(p[0] - anchor[0]) == 1 && std::abs(p[1] - anchor[1]) == 1)
          has_diagonal = true;
      }
      if (!has_diagonal) return false;
    }
  }
  return true;
}

}  // namespace

ObstructionReport pruss_obstruction() {
  ObstructionReport report;
  const ShapeClass plus_class = canonical_shape(diamond_ball(1, 2));
  const ShapeClass p_class = canonical_shape(kPPentomino);

  report.eigen_multiset = values_multiset(plus_eigenvector());
  MinimizerSearch eigen_search;
  report.eigen_multiset_unique =
      unique_minimizer(report.eigen_multiset, plus_class, &eigen_search);
  report.eigen_minimizers = eigen_search.minimizers;

  // The eigenvector multiset ties the plus with the P-pentomino exactly, so
  // it cannot certify the plus side on its own; fall back to a bounded search
  // over small integer multisets.  A value well above twice the rest makes
  // the degree-4 cell strictly optimal.
  const std::vector<ValueMultiset> candidates1 = {
      report.eigen_multiset, {3, 1, 1, 1, 1}, {4, 1, 1, 1, 1}, {5, 2, 1, 1, 1}};
  for (const ValueMultiset& values : candidates1) {
    if (unique_minimizer(values, plus_class)) {
      report.multiset1 = values;
      report.unique1 = true;
      break;
    }
  }
  const std::vector<ValueMultiset> candidates2 = {
      {1, 1, 1, 1, 0.5}, {1, 1, 1, 1, 0.25}, {2, 2, 2, 2, 1}, {4, 4, 4, 4, 3}};
  for (const ValueMultiset& values : candidates2) {
    if (unique_minimizer(values, p_class)) {
      report.multiset2 = values;
      report.unique2 = true;
      break;
    }
  }
  if (!report.unique1 || !report.unique2)
    throw std::runtime_error("pruss_obstruction: multiset search exhausted without a witness");

  report.shape1 = plus_class;
  report.shape2 = p_class;
  report.max_at_center = max_value_at_center(report.multiset1, plus_class);
  report.diagonal_forced = every_placement_has_diagonal_through_origin(p_class);

  // multiset1 pins the first five positions of any admissible order to the
  // origin plus its four axis neighbors (no diagonal pair through the
  // minimum); multiset2 pins them to a P-pentomino, which always carries a
  // diagonal pair through each of its cells.  No order satisfies both.
  report.contradiction = report.unique1 && report.unique2 && report.max_at_center &&
                         report.diagonal_forced;
  return report;
}

namespace {

double riesz_value_1d(const std::vector<std::pair<int, double>>& pu,
                      const std::vector<std::pair<int, double>>& pv, const Bivariate& G,
                      const Kernel& H) {
  auto value_at = [](const std::vector<std::pair<int, double>>& pl, int x) {
    for (const auto& [p, v] : pl)
      if (p == x) return v;
    return 0.0;
  };
  if (G.zero_margins()) {
    double sum = 0.0;
    for (const auto& [x, a] : pu)
      for (const auto& [y, b] : pv) sum += G(a, b) * H(std::abs(x - y));
    return sum;
  }
  const int r = H.cutoff();
  double sum = 0.0;
  for (const auto& [x, a] : pu)
    for (int y = x - r; y <= x + r; ++y) sum += G(a, value_at(pv, y)) * H(std::abs(x - y));
  for (const auto& [y, b] : pv)
    for (int x = y - r; x <= y + r; ++x)
      if (value_at(pu, x) == 0.0) sum += G(0.0, b) * H(std::abs(x - y));
  return sum;
}

void enumerate_placements(const ValueMultiset& values, int window,
                          std::vector<std::vector<std::pair<int, double>>>& out) {
  const int n = 2 * window + 1;
  const int k = static_cast<int>(values.size());
  std::vector<int> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = i;
  std::vector<double> perm;
  while (true) {
    perm = values;
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<std::pair<int, double>> placement(k);
      for (int i = 0; i < k; ++i) placement[i] = {combo[i] - window, perm[i]};
      out.push_back(std::move(placement));
    } while (std::next_permutation(perm.begin(), perm.end()));
    int i = k - 1;
    while (i >= 0 && combo[i] == n - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
}

}  // namespace

RieszMaxResult brute_force_riesz_max(const ValueMultiset& values_u,
                                     const ValueMultiset& values_v, int window,
                                     const Bivariate& G, const Kernel& H) {
  if (values_u.empty() || values_v.empty())
    throw std::invalid_argument("brute_force_riesz_max: empty multiset");
  if (values_u.size() > 3 || values_v.size() > 3)
    throw std::invalid_argument("brute_force_riesz_max: at most 3 values per side");
  if (window < 1 || window > 7)
    throw std::invalid_argument("brute_force_riesz_max: window must be in [1, 7]");
  if (!G.zero_margins() && !(G.zero_at_origin() && H.finitely_supported()))
    throw std::domain_error("brute_force_riesz_max: divergent configuration");

  std::vector<std::vector<std::pair<int, double>>> placements_u, placements_v;
  enumerate_placements(values_u, window, placements_u);
  enumerate_placements(values_v, window, placements_v);

  RieszMaxResult out;
  bool first = true;
  for (const auto& pu : placements_u)
    for (const auto& pv : placements_v) {
      const double value = riesz_value_1d(pu, pv, G, H);
      if (first || value > out.max_value) {
        out.max_value = value;
        out.placement_u = pu;
        out.placement_v = pv;
        first = false;
      }
    }
  return out;
}

}  // namespace rearr
