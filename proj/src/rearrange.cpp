#include "rearr/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rearr {

void LineFunction::check_parity(int twice_pos) const {
  const bool odd = twice_pos % 2 != 0;
  if (odd != (parity_ == Parity::half))
    throw std::invalid_argument("LineFunction: position parity mismatch");
}

double LineFunction::at2(int twice_pos) const {
  check_parity(twice_pos);
  auto it = entries_.find(twice_pos);
  return it == entries_.end() ? 0.0 : it->second;
}

void LineFunction::set2(int twice_pos, double value) {
  check_parity(twice_pos);
  if (value < 0.0) throw std::invalid_argument("LineFunction::set2: negative value");
  if (value == 0.0)
    entries_.erase(twice_pos);
  else
    entries_[twice_pos] = value;
}

namespace {

/// Doubled position receiving the k-th largest value (k from 0).
int placement_target2(Parity parity, std::size_t k) {
  if (parity == Parity::integer) {
    // 0, 1, -1, 2, -2, ...
    if (k == 0) return 0;
    return k % 2 == 1 ? static_cast<int>(k) + 1 : -static_cast<int>(k);
  }
  // 1/2, -1/2, 3/2, -3/2, ...
  return k % 2 == 0 ? static_cast<int>(k) + 1 : -static_cast<int>(k);
}

std::vector<double> sorted_values_desc(const std::map<int, double>& entries) {
  std::vector<double> values;
  values.reserve(entries.size());
  for (const auto& [p, v] : entries) values.push_back(v);
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

}  // namespace

LineFunction rearrange_line(const LineFunction& f) {
  LineFunction out(f.parity());
  const std::vector<double> values = sorted_values_desc(f.entries2());
  for (std::size_t k = 0; k < values.size(); ++k)
    out.set2(placement_target2(f.parity(), k), values[k]);
  return out;
}

LineFunction polarize(const LineFunction& f, const HalfLine& H) {
  std::set<int> positions;
  for (const auto& [p, v] : f.entries2()) {
    positions.insert(p);
    positions.insert(H.reflect2(p));
  }
  LineFunction out(f.parity());
  for (int p : positions) {
    const double a = f.at2(p);
    const double b = f.at2(H.reflect2(p));
    out.set2(p, H.contains2(p) ? std::max(a, b) : std::min(a, b));
  }
  return out;
}

LineFunction two_point_rearrange(const LineFunction& f) {
  return polarize(polarize(f, HalfLine::below_half()), HalfLine::positive());
}

SparseFunction one_step(const SparseFunction& u, const Direction& e) {
  std::map<LineKey, std::vector<double>> lines;
  for (const auto& [x, v] : u.entries()) {
    LineLocation loc = line_of(x, e);
    lines[std::move(loc.line)].push_back(v);
  }
  SparseFunction out(u.dim());
  for (auto& [key, values] : lines) {
    std::sort(values.begin(), values.end(), std::greater<double>());
    const Parity parity = line_parity_half(key) ? Parity::half : Parity::integer;
    for (std::size_t k = 0; k < values.size(); ++k)
      out.set(point_on_line(key, placement_target2(parity, k)), values[k]);
  }
  return out;
}

bool is_schwarz_symmetric(const SparseFunction& u) {
  for (const Direction& e : direction_set(u.dim()))
    if (one_step(u, e) != u) return false;
  return true;
}

namespace {

SparseFunction iterate_to_fixed_point(const SparseFunction& u,
                                      const std::vector<Direction>& cycle,
                                      const RearrangeOptions& opts) {
  const int d = u.dim();
  const std::size_t max_cycles =
      opts.max_cycles != 0
          ? opts.max_cycles
          : 10 * (u.support_size() + static_cast<std::size_t>(d) * d);
  SparseFunction current = u;
  std::size_t step = 0;
  for (std::size_t c = 0; c < max_cycles; ++c) {
    const SparseFunction before = current;
    for (const Direction& e : cycle) {
      current = one_step(current, e);
      if (opts.on_step) opts.on_step(++step, e, current);
    }
    if (current == before) return current;
  }
  throw ConvergenceError("schwarz_rearrange: no fixed point within the cycle budget",
                         std::move(current));
}

}  // namespace

SparseFunction schwarz_rearrange(const SparseFunction& u, const RearrangeOptions& opts) {
  return iterate_to_fixed_point(u, direction_set(u.dim()), opts);
}

SparseFunction schwarz_rearrange_cycled(const SparseFunction& u,
                                        const std::vector<Direction>& cycle,
                                        const RearrangeOptions& opts) {
  std::vector<Direction> sorted_cycle = cycle;
  std::vector<Direction> canonical = direction_set(u.dim());
  std::sort(sorted_cycle.begin(), sorted_cycle.end());
  std::sort(canonical.begin(), canonical.end());
  if (sorted_cycle != canonical)
    throw std::invalid_argument(
        "schwarz_rearrange_cycled: cycle must be a permutation of the direction set");
  return iterate_to_fixed_point(u, cycle, opts);
}

namespace {

int isqrt(int n) {
  int s = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

int floor_div(int a, int b) {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

}  // namespace

std::pair<int, int> support_sandwich_bounds(int support_size) {
  if (support_size < 1)
    throw std::invalid_argument("support_sandwich_bounds: support size must be positive");
  // L1 = floor((sqrt(N)-5)/2), computed exactly: floor((isqrt(N)-5)/2) agrees
  // with the real formula for every N.
  const int l1 = floor_div(isqrt(support_size) - 5, 2);
  // L2 = ceil(sqrt(N/2)) + 2: smallest m with 2 m^2 >= N, plus 2.
  int m = isqrt(support_size / 2);
  while (2 * m * m < support_size) ++m;
  while (m > 0 && 2 * (m - 1) * (m - 1) >= support_size) --m;
  return {l1, m + 2};
}

}  // namespace rearr
