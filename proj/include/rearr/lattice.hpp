#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace rearr {

/// A vertex of the lattice graph Z^d, stored as its integer coordinates.
using Point = std::vector<int>;

/// Combinatorial (l1) distance between two lattice points.
int graph_distance(const Point& x, const Point& y);

/// The 2d lattice neighbors of x, in a fixed deterministic order.
std::vector<Point> neighbors(const Point& x);

/// All points with ||x||_1 <= radius, sorted lexicographically.
std::vector<Point> diamond_ball(int radius, int dim);

/// All points with ||x||_inf <= radius, sorted lexicographically.
std::vector<Point> box_ball(int radius, int dim);

/// One of the line directions used by the one-step rearrangements: a
/// coordinate axis e_i, or a diagonal (e_i + e_j)/2 or (e_i - e_j)/2 with
/// i < j.  Axis directions have squared length 1, diagonals 1/2.
struct Direction {
  enum class Kind { axis, diag_plus, diag_minus };

  Kind kind = Kind::axis;
  int i = 0;   // 0-based coordinate index
  int j = -1;  // second index for diagonals, -1 for axes

  static Direction axis(int i);
  static Direction diag_plus(int i, int j);
  static Direction diag_minus(int i, int j);

  double squared_length() const { return kind == Kind::axis ? 1.0 : 0.5; }

  friend auto operator<=>(const Direction&, const Direction&) = default;
};

std::string to_string(const Direction& e);

/// The canonical direction cycle: axes in index order, then for each pair
/// i < j (lexicographic) the (e_i+e_j)/2 diagonal followed by (e_i-e_j)/2.
std::vector<Direction> direction_set(int dim);

/// Identifies one line of the partition of Z^d induced by a direction: all
/// points whose difference is parallel to the direction vector share a key.
/// `frozen` holds the coordinates that are constant along the line (for a
/// diagonal, the invariant combination of the two moving coordinates comes
/// first).
struct LineKey {
  Direction direction;
  std::vector<int> frozen;

  friend auto operator<=>(const LineKey&, const LineKey&) = default;
};

/// True if positions along the line are half-odd-integers rather than
/// integers.  Axis lines are always integer; a diagonal line's parity is
/// fixed by its invariant coordinate.
bool line_parity_half(const LineKey& line);

/// Where a point sits on its line: positions are the inner products <e, x>,
/// stored doubled so that half-integers stay exact.
struct LineLocation {
  LineKey line;
  int twice_offset = 0;

  double offset() const { return twice_offset / 2.0; }
};

LineLocation line_of(const Point& x, const Direction& e);

/// Inverse of line_of: reconstructs the unique point of the line at the given
/// (doubled) position.
Point point_on_line(const LineKey& line, int twice_offset);

/// Finitely supported nonnegative function on Z^d.  Stored values are
/// strictly positive; absent points read as zero.
class SparseFunction {
 public:
  SparseFunction() = default;  // the zero function on Z^1
  explicit SparseFunction(int dim);

  int dim() const { return dim_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  double at(const Point& x) const;

  /// Sets u(x).  Zero erases the point; negative values are rejected.
  void set(const Point& x, double value);

  const std::map<Point, double>& entries() const { return entries_; }
  std::vector<Point> support() const;

  friend bool operator==(const SparseFunction&, const SparseFunction&) = default;

 private:
  int dim_ = 1;
  std::map<Point, double> entries_;
};

/// Multiset of positive values sorted non-increasingly.
using ValueMultiset = std::vector<double>;

ValueMultiset values_multiset(const SparseFunction& u);

/// Keeps the n largest values of u; ties between equal values are broken by
/// lexicographic point order, so the result is deterministic.
SparseFunction cutoff(const SparseFunction& u, std::size_t n);

/// A signed coordinate permutation x -> (sign_k * x[perm_k])_k; together with
/// translations these generate the automorphism group of the lattice graph.
struct SignedPermutation {
  std::vector<int> perm;
  std::vector<int> sign;  // entries +1 / -1

  Point apply(const Point& x) const;
};

/// All 2^d * d! signed coordinate permutations, in a fixed order.
std::vector<SignedPermutation> signed_permutations(int dim);

/// Canonical form of a finite support under translations and signed
/// coordinate permutations: two supports compare equal exactly when some
/// lattice-graph automorphism of that group maps one onto the other.
struct ShapeClass {
  std::vector<Point> canonical_points;  // normalized and sorted

  int dim() const { return canonical_points.empty() ? 0 : static_cast<int>(canonical_points.front().size()); }
  std::size_t size() const { return canonical_points.size(); }

  friend auto operator<=>(const ShapeClass&, const ShapeClass&) = default;
};

ShapeClass canonical_shape(const std::vector<Point>& support);

}  // namespace rearr
