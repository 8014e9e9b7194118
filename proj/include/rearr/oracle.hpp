#pragma once

#include <map>
#include <vector>

#include "rearr/functionals.hpp"
#include "rearr/lattice.hpp"

namespace rearr {

/// Optimal bijective placement of a value multiset onto the cells of a shape.
struct AssignmentResult {
  double energy_sq = 0.0;  // sum over edges of the squared differences
  std::map<Point, double> placement;
  ShapeClass shape;
};

/// All free polyominoes of the given size in Z^2, as canonical shape classes,
/// sorted.  Exhaustive; the size budget is 8.
std::vector<ShapeClass> enumerate_connected_supports(int size);

/// Minimizes the Sobolev 2-energy over all bijective placements of the values
/// onto the shape's cells.  Ties resolve to the lexicographically smallest
/// assignment vector.
AssignmentResult min_energy_assignment(const ValueMultiset& values, const ShapeClass& shape);

struct MinimizerSearch {
  double min_energy_sq = 0.0;
  std::vector<ShapeClass> minimizers;  // all connected shapes attaining the min
};

/// Exhaustive search over every connected support of matching size (budget 6):
/// which shapes admit the minimal-energy placement of the given values?
/// Shapes within relative 1e-12 of the minimum count as minimizers.
MinimizerSearch equimeasurable_minimizers(const ValueMultiset& values);

/// First Dirichlet eigenvector of the plus pentomino, positive and
/// l2-normalized (ambient degree 4, zero outside the shape).
SparseFunction plus_eigenvector();

/// Certified obstruction to a Pruss-style total order on Z^2: two multisets
/// whose unique optimal shapes are the plus and the P-pentomino force
/// incompatible constraints on the first five elements of any order.
struct ObstructionReport {
  ValueMultiset eigen_multiset;               // plus-eigenvector values
  std::vector<ShapeClass> eigen_minimizers;   // its optimal shapes (not unique!)
  bool eigen_multiset_unique = false;

  ValueMultiset multiset1;  // certified: unique minimizer = plus
  ShapeClass shape1;
  bool unique1 = false;
  bool max_at_center = false;  // largest value of multiset1 sits at the degree-4 cell

  ValueMultiset multiset2;  // certified: unique minimizer = P-pentomino
  ShapeClass shape2;
  bool unique2 = false;
  bool diagonal_forced = false;  // every P placement through a cell has a diagonal pair

  bool contradiction = false;
};

ObstructionReport pruss_obstruction();

struct RieszMaxResult {
  double max_value = 0.0;
  std::vector<std::pair<int, double>> placement_u;  // position -> value on Z
  std::vector<std::pair<int, double>> placement_v;
};

/// Exhaustive maximum of the 1-D Riesz double sum over all injective
/// placements of both multisets at positions -window..window.  Budget:
/// at most 3 values per side, window at most 7.
RieszMaxResult brute_force_riesz_max(const ValueMultiset& values_u,
                                     const ValueMultiset& values_v, int window,
                                     const Bivariate& G, const Kernel& H);

}  // namespace rearr
