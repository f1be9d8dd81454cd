#include "scriptorium/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scriptorium/errors.hpp"

namespace scriptorium {

namespace {

struct IntVertex {
  std::int64_t row;
  std::int64_t col;
};

std::vector<IntVertex> rounded(std::span<const Point> polygon) {
  std::vector<IntVertex> v(polygon.size());
  for (std::size_t i = 0; i < polygon.size(); ++i)
    v[i] = IntVertex{std::llround(polygon[i].row), std::llround(polygon[i].col)};
  return v;
}

// Exact test for an integer point on the closed boundary.
bool on_boundary(const std::vector<IntVertex>& v, std::int64_t row, std::int64_t col) {
  const std::size_t k = v.size();
  for (std::size_t i = 0; i < k; ++i) {
    const IntVertex& a = v[i];
    const IntVertex& b = v[(i + 1) % k];
    const std::int64_t cross = (b.row - a.row) * (col - a.col) - (b.col - a.col) * (row - a.row);
    if (cross != 0) continue;
    if (row < std::min(a.row, b.row) || row > std::max(a.row, b.row)) continue;
    if (col < std::min(a.col, b.col) || col > std::max(a.col, b.col)) continue;
    return true;
  }
  return false;
}

// Even-odd crossing count for a horizontal ray toward +col.
bool strictly_inside(const std::vector<IntVertex>& v, double row, double col) {
  const std::size_t k = v.size();
  bool inside = false;
  for (std::size_t i = 0; i < k; ++i) {
    const IntVertex& a = v[i];
    const IntVertex& b = v[(i + 1) % k];
    const double ar = static_cast<double>(a.row);
    const double br = static_cast<double>(b.row);
    if ((ar > row) == (br > row)) continue;
    const double t = (row - ar) / (br - ar);
    const double xc = static_cast<double>(a.col) + t * (static_cast<double>(b.col) - static_cast<double>(a.col));
    if (xc > col) inside = !inside;
  }
  return inside;
}

}  // namespace

bool polygon_contains(std::span<const Point> polygon, const Pixel& p) {
  if (polygon.empty()) return false;
  const std::vector<IntVertex> v = rounded(polygon);
  if (on_boundary(v, p.row, p.col)) return true;
  return strictly_inside(v, static_cast<double>(p.row), static_cast<double>(p.col));
}

bool polygon_contains(std::span<const Point> polygon, const Point& p) {
  if (polygon.empty()) return false;
  const std::vector<IntVertex> v = rounded(polygon);
  const std::int64_t row = std::llround(p.row);
  const std::int64_t col = std::llround(p.col);
  if (static_cast<double>(row) == p.row && static_cast<double>(col) == p.col &&
      on_boundary(v, row, col))
    return true;
  return strictly_inside(v, p.row, p.col);
}

std::vector<std::int64_t> rasterize_polygon(std::span<const Point> polygon, int rows, int cols) {
  if (polygon.empty()) return {};
  const std::vector<IntVertex> v = rounded(polygon);
  const std::size_t k = v.size();

  std::vector<std::int64_t> keys;

  // Boundary pixels: lattice points of every closed-ring edge.
  for (std::size_t i = 0; i < k; ++i) {
    const IntVertex& a = v[i];
    const IntVertex& b = v[(i + 1) % k];
    const std::int64_t dr = b.row - a.row;
    const std::int64_t dc = b.col - a.col;
    const std::int64_t g = std::gcd(std::llabs(dr), std::llabs(dc));
    const std::int64_t steps = std::max<std::int64_t>(g, 1);
    for (std::int64_t s = 0; s <= steps; ++s) {
      const std::int64_t r = a.row + dr * s / steps;
      const std::int64_t c = a.col + dc * s / steps;
      if (r >= 0 && r < rows && c >= 0 && c < cols)
        keys.push_back(r * static_cast<std::int64_t>(cols) + c);
    }
  }

  // Interior pixels row by row. A crossing at an integer row can land on an
  // integer column only at a lattice point of the edge, which the boundary
  // pass already owns, so the strict interval (lo, hi) below loses nothing.
  std::int64_t rmin = v[0].row;
  std::int64_t rmax = v[0].row;
  for (const IntVertex& p : v) {
    rmin = std::min(rmin, p.row);
    rmax = std::max(rmax, p.row);
  }
  rmin = std::max<std::int64_t>(rmin, 0);
  rmax = std::min<std::int64_t>(rmax, rows - 1);

  std::vector<double> crossings;
  for (std::int64_t r = rmin; r <= rmax; ++r) {
    crossings.clear();
    const double row = static_cast<double>(r);
    for (std::size_t i = 0; i < k; ++i) {
      const IntVertex& a = v[i];
      const IntVertex& b = v[(i + 1) % k];
      const double ar = static_cast<double>(a.row);
      const double br = static_cast<double>(b.row);
      if ((ar > row) == (br > row)) continue;
      const double t = (row - ar) / (br - ar);
      crossings.push_back(static_cast<double>(a.col) +
                          t * (static_cast<double>(b.col) - static_cast<double>(a.col)));
    }
    std::sort(crossings.begin(), crossings.end());
    for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
      const std::int64_t lo = static_cast<std::int64_t>(std::floor(crossings[i])) + 1;
      const std::int64_t hi = static_cast<std::int64_t>(std::ceil(crossings[i + 1])) - 1;
      const std::int64_t c1 = std::max<std::int64_t>(lo, 0);
      const std::int64_t c2 = std::min<std::int64_t>(hi, cols - 1);
      for (std::int64_t c = c1; c <= c2; ++c)
        keys.push_back(r * static_cast<std::int64_t>(cols) + c);
    }
  }

  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

}  // namespace scriptorium
