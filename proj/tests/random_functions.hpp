#pragma once

#include <set>

#include "rearr/lattice.hpp"
#include "rearr/rng.hpp"

namespace rearr::testing {

/// Random finitely supported function: `support` distinct points in the box
/// of the given radius, values uniform in (0, 1].
inline SparseFunction random_sparse(Rng& rng, int dim, int support, int box_radius) {
  SparseFunction u(dim);
  std::set<Point> used;
  while (static_cast<int>(used.size()) < support) {
    Point x(dim);
    for (int k = 0; k < dim; ++k) x[k] = rng.uniform_int(-box_radius, box_radius);
    if (used.insert(x).second) u.set(x, rng.uniform_positive());
  }
  return u;
}

/// Same support model with values drawn from {1, 2, ..., max_value}, so sums
/// of products stay exact in double arithmetic.
inline SparseFunction random_sparse_integer_values(Rng& rng, int dim, int support,
                                                   int box_radius, int max_value) {
  SparseFunction u(dim);
  std::set<Point> used;
  while (static_cast<int>(used.size()) < support) {
    Point x(dim);
    for (int k = 0; k < dim; ++k) x[k] = rng.uniform_int(-box_radius, box_radius);
    if (used.insert(x).second) u.set(x, rng.uniform_int(1, max_value));
  }
  return u;
}

}  // namespace rearr::testing
