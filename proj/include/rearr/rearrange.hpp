#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "rearr/lattice.hpp"

namespace rearr {

/// Whether a line's positions live in Z or in Z + 1/2.
enum class Parity { integer, half };

/// Finitely supported positive function on one line.  Positions are stored
/// doubled (so 3 means 3/2 on a half-parity line) to keep everything exact.
class LineFunction {
 public:
  explicit LineFunction(Parity parity) : parity_(parity) {}

  Parity parity() const { return parity_; }

  double at2(int twice_pos) const;
  void set2(int twice_pos, double value);

  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  const std::map<int, double>& entries2() const { return entries_; }

  friend bool operator==(const LineFunction&, const LineFunction&) = default;

 private:
  void check_parity(int twice_pos) const;

  Parity parity_;
  std::map<int, double> entries_;
};

/// Open half-line (b, +inf) or (-inf, b) with boundary b at a half-integer or
/// integer; the reflection x -> 2b - x swaps the half-line with its
/// complement and preserves both position parities.
struct HalfLine {
  int twice_boundary = 0;
  enum class Side { left, right } side = Side::right;

  static HalfLine positive() { return {0, Side::right}; }     // (0, +inf)
  static HalfLine below_half() { return {1, Side::left}; }    // (-inf, 1/2)

  bool contains2(int twice_pos) const {
    return side == Side::right ? twice_pos > twice_boundary : twice_pos < twice_boundary;
  }
  int reflect2(int twice_pos) const { return 2 * twice_boundary - twice_pos; }
};

/// Symmetric-decreasing rearrangement of a line function: the k-th largest
/// value goes to position 0, 1, -1, 2, -2, ... (integer lines) or
/// 1/2, -1/2, 3/2, -3/2, ... (half lines).
LineFunction rearrange_line(const LineFunction& f);

/// Polarization: the larger of each reflection pair moves to the half-line
/// side, the smaller to the other side; boundary points are fixed.
LineFunction polarize(const LineFunction& f, const HalfLine& H);

/// Composition of the polarizations about (-inf, 1/2) and (0, +inf); iterating
/// it reaches rearrange_line in finitely many steps.
LineFunction two_point_rearrange(const LineFunction& f);

/// One-step rearrangement: every line of the partition induced by e is
/// replaced by the 1-D rearrangement of its restriction.
SparseFunction one_step(const SparseFunction& u, const Direction& e);

/// True iff one_step(u, e) == u for every direction in the canonical set.
bool is_schwarz_symmetric(const SparseFunction& u);

/// Thrown when the fixed-point iteration exceeds its cycle budget; carries the
/// last iterate for inspection.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& message, SparseFunction last)
      : std::runtime_error(message), last_(std::move(last)) {}

  const SparseFunction& last_iterate() const { return last_; }

 private:
  SparseFunction last_;
};

struct RearrangeOptions {
  /// 0 means the default budget 10 * (|supp u| + d^2).
  std::size_t max_cycles = 0;
  /// Invoked after every one-step rearrangement (step counter starts at 1).
  std::function<void(std::size_t, const Direction&, const SparseFunction&)> on_step;
};

/// Iterates full cycles over direction_set(d) until a cycle changes nothing.
SparseFunction schwarz_rearrange(const SparseFunction& u, const RearrangeOptions& opts = {});

/// Same iteration with a user-supplied cycle order; the cycle must be a
/// permutation of direction_set(d).
SparseFunction schwarz_rearrange_cycled(const SparseFunction& u,
                                        const std::vector<Direction>& cycle,
                                        const RearrangeOptions& opts = {});

/// Support radii (L1, L2) such that a rearranged function on Z^2 with support
/// size N satisfies diamond_ball(L1) <= supp <= box_ball(L2); L1 may be
/// negative for small N, meaning no inner ball is guaranteed.
std::pair<int, int> support_sandwich_bounds(int support_size);

}  // namespace rearr
