#include "rearr/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rearr {

namespace {

void check_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

void check_point_dim(const Point& x, int dim, const char* what) {
  if (static_cast<int>(x.size()) != dim)
    throw std::invalid_argument(std::string(what) + ": point has wrong dimension");
}

}  // namespace

int graph_distance(const Point& x, const Point& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("graph_distance: dimension mismatch");
  int d = 0;
  for (std::size_t k = 0; k < x.size(); ++k) d += std::abs(x[k] - y[k]);
  return d;
}

std::vector<Point> neighbors(const Point& x) {
  std::vector<Point> out;
  out.reserve(2 * x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    Point m = x;
    m[k] -= 1;
    out.push_back(std::move(m));
    Point p = x;
    p[k] += 1;
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

void enumerate_diamond(int radius, int dim, Point& partial, std::vector<Point>& out) {
  const int k = static_cast<int>(partial.size());
  if (k == dim - 1) {
    for (int c = -radius; c <= radius; ++c) {
      partial.push_back(c);
      out.push_back(partial);
      partial.pop_back();
    }
    return;
  }
  for (int c = -radius; c <= radius; ++c) {
    partial.push_back(c);
    enumerate_diamond(radius - std::abs(c), dim, partial, out);
    partial.pop_back();
  }
}

}  // namespace

std::vector<Point> diamond_ball(int radius, int dim) {
  check_dim(dim);
  if (radius < 0) return {};
  std::vector<Point> out;
  Point partial;
  partial.reserve(dim);
  enumerate_diamond(radius, dim, partial, out);
  return out;
}

std::vector<Point> box_ball(int radius, int dim) {
  check_dim(dim);
  if (radius < 0) return {};
  std::vector<Point> out;
  Point x(dim, -radius);
  while (true) {
    out.push_back(x);
    int k = dim - 1;
    while (k >= 0 && x[k] == radius) {
      x[k] = -radius;
      --k;
    }
    if (k < 0) break;
    ++x[k];
  }
  return out;
}

Direction Direction::axis(int i) {
  if (i < 0) throw std::invalid_argument("Direction::axis: bad index");
  return Direction{Kind::axis, i, -1};
}

Direction Direction::diag_plus(int i, int j) {
  if (i < 0 || j <= i) throw std::invalid_argument("Direction::diag_plus: need 0 <= i < j");
  return Direction{Kind::diag_plus, i, j};
}

Direction Direction::diag_minus(int i, int j) {
  if (i < 0 || j <= i) throw std::invalid_argument("Direction::diag_minus: need 0 <= i < j");
  return Direction{Kind::diag_minus, i, j};
}

std::string to_string(const Direction& e) {
  switch (e.kind) {
    case Direction::Kind::axis:
      return "e" + std::to_string(e.i + 1);
    case Direction::Kind::diag_plus:
      return "p" + std::to_string(e.i + 1) + std::to_string(e.j + 1);
    case Direction::Kind::diag_minus:
      return "m" + std::to_string(e.i + 1) + std::to_string(e.j + 1);
  }
  return "?";
}

std::vector<Direction> direction_set(int dim) {
  check_dim(dim);
  std::vector<Direction> out;
  for (int i = 0; i < dim; ++i) out.push_back(Direction::axis(i));
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      out.push_back(Direction::diag_plus(i, j));
      out.push_back(Direction::diag_minus(i, j));
    }
  return out;
}

bool line_parity_half(const LineKey& line) {
  if (line.direction.kind == Direction::Kind::axis) return false;
  // For a diagonal the invariant coordinate and the doubled position have the
  // same parity.
  return line.frozen.front() % 2 != 0;
}

LineLocation line_of(const Point& x, const Direction& e) {
  const int d = static_cast<int>(x.size());
  if (e.i >= d || (e.kind != Direction::Kind::axis && e.j >= d))
    throw std::invalid_argument("line_of: direction index out of range");
  LineKey key;
  key.direction = e;
  int twice = 0;
  if (e.kind == Direction::Kind::axis) {
    key.frozen.reserve(d - 1);
    for (int k = 0; k < d; ++k)
      if (k != e.i) key.frozen.push_back(x[k]);
    twice = 2 * x[e.i];
  } else {
    key.frozen.reserve(d - 1);
    if (e.kind == Direction::Kind::diag_plus) {
      key.frozen.push_back(x[e.i] - x[e.j]);
      twice = x[e.i] + x[e.j];
    } else {
      key.frozen.push_back(x[e.i] + x[e.j]);
      twice = x[e.i] - x[e.j];
    }
    for (int k = 0; k < d; ++k)
      if (k != e.i && k != e.j) key.frozen.push_back(x[k]);
  }
  return LineLocation{std::move(key), twice};
}

Point point_on_line(const LineKey& line, int twice_offset) {
  const Direction& e = line.direction;
  // frozen always holds d-1 entries: d-1 fixed coordinates for an axis line,
  // or the diagonal invariant plus d-2 fixed coordinates.
  const int d = static_cast<int>(line.frozen.size()) + 1;
  Point x(static_cast<std::size_t>(d), 0);
  if (e.kind == Direction::Kind::axis) {
    if (twice_offset % 2 != 0)
      throw std::invalid_argument("point_on_line: axis position must be an integer");
    std::size_t f = 0;
    for (int k = 0; k < static_cast<int>(x.size()); ++k)
      x[k] = (k == e.i) ? twice_offset / 2 : line.frozen[f++];
    return x;
  }
  const int inv = line.frozen.front();
  if ((twice_offset - inv) % 2 != 0)
    throw std::invalid_argument("point_on_line: position parity does not match the line");
  int xi, xj;
  if (e.kind == Direction::Kind::diag_plus) {
    xi = (twice_offset + inv) / 2;
    xj = (twice_offset - inv) / 2;
  } else {
    xi = (inv + twice_offset) / 2;
    xj = (inv - twice_offset) / 2;
  }
  std::size_t f = 1;
  for (int k = 0; k < static_cast<int>(x.size()); ++k) {
    if (k == e.i)
      x[k] = xi;
    else if (k == e.j)
      x[k] = xj;
    else
      x[k] = line.frozen[f++];
  }
  return x;
}

SparseFunction::SparseFunction(int dim) : dim_(dim) { check_dim(dim); }

double SparseFunction::at(const Point& x) const {
  check_point_dim(x, dim_, "SparseFunction::at");
  auto it = entries_.find(x);
  return it == entries_.end() ? 0.0 : it->second;
}

void SparseFunction::set(const Point& x, double value) {
  check_point_dim(x, dim_, "SparseFunction::set");
  if (value < 0.0) throw std::invalid_argument("SparseFunction::set: negative value");
  if (value == 0.0)
    entries_.erase(x);
  else
    entries_[x] = value;
}

std::vector<Point> SparseFunction::support() const {
  std::vector<Point> out;
  out.reserve(entries_.size());
  for (const auto& [p, v] : entries_) out.push_back(p);
  return out;
}

ValueMultiset values_multiset(const SparseFunction& u) {
  ValueMultiset values;
  values.reserve(u.support_size());
  for (const auto& [p, v] : u.entries()) values.push_back(v);
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

SparseFunction cutoff(const SparseFunction& u, std::size_t n) {
  if (n >= u.support_size()) return u;
  std::vector<std::pair<Point, double>> items(u.entries().begin(), u.entries().end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  SparseFunction out(u.dim());
  for (std::size_t k = 0; k < n; ++k) out.set(items[k].first, items[k].second);
  return out;
}

Point SignedPermutation::apply(const Point& x) const {
  Point out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = sign[k] * x[perm[k]];
  return out;
}

std::vector<SignedPermutation> signed_permutations(int dim) {
  check_dim(dim);
  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<SignedPermutation> out;
  do {
    for (unsigned mask = 0; mask < (1u << dim); ++mask) {
      SignedPermutation g;
      g.perm = perm;
      g.sign.resize(dim);
      for (int k = 0; k < dim; ++k) g.sign[k] = (mask >> k) & 1 ? -1 : 1;
      out.push_back(std::move(g));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

std::vector<Point> normalize_translation(std::vector<Point> pts) {
  const std::size_t d = pts.front().size();
  Point lo(d, std::numeric_limits<int>::max());
  for (const Point& p : pts)
    for (std::size_t k = 0; k < d; ++k) lo[k] = std::min(lo[k], p[k]);
  for (Point& p : pts)
    for (std::size_t k = 0; k < d; ++k) p[k] -= lo[k];
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

ShapeClass canonical_shape(const std::vector<Point>& support) {
  if (support.empty()) throw std::invalid_argument("canonical_shape: empty support");
  const int d = static_cast<int>(support.front().size());
  std::vector<Point> pts = support;
  for (const Point& p : pts) check_point_dim(p, d, "canonical_shape");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<Point> best;
  for (const SignedPermutation& g : signed_permutations(d)) {
    std::vector<Point> image;
    image.reserve(pts.size());
    for (const Point& p : pts) image.push_back(g.apply(p));
    image = normalize_translation(std::move(image));
    if (best.empty() || image < best) best = std::move(image);
  }
  return ShapeClass{std::move(best)};
}

}  // namespace rearr
