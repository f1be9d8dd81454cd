#include "scriptorium/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace scriptorium {

// Lower-envelope scan, one row at a time. For row r, every seed s contributes
// the parabola f(c) = (c - s.col)^2 + (r - s.row)^2. The classic two-pass
// squared-distance transform assumes parabola vertices on the grid; here the
// vertices are the real-valued seed columns, which the envelope construction
// supports as long as the parabolas arrive sorted by vertex.
GrayRaster distance_to_nearest(std::span<const Point> seeds, int rows, int cols) {
  if (seeds.empty()) throw InputError("no components on page");

  std::vector<Point> sorted(seeds.begin(), seeds.end());
  std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
    return a.col < b.col || (a.col == b.col && a.row < b.row);
  });
  const int s_count = static_cast<int>(sorted.size());

  GrayRaster out(rows, cols);
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> height(sorted.size());         // parabola offset per seed
  std::vector<int> hull(sorted.size());              // seed indices on the envelope
  std::vector<double> boundary(sorted.size() + 1);   // hull[i] wins on [boundary[i], boundary[i+1])

  for (int r = 0; r < rows; ++r) {
    for (int i = 0; i < s_count; ++i) {
      const double dr = static_cast<double>(r) - sorted[i].row;
      height[i] = dr * dr;
    }

    int k = 0;
    hull[0] = 0;
    boundary[0] = -inf;
    boundary[1] = inf;
    for (int i = 1; i < s_count; ++i) {
      const double vi = sorted[i].col;
      const double fi = height[i];
      double cut = 0.0;
      while (true) {
        const int j = hull[k];
        const double vj = sorted[j].col;
        if (vi == vj) {
          // Same vertex column: one parabola dominates the other outright.
          if (fi >= height[j]) { cut = inf; break; }
          if (k == 0) { cut = -inf; break; }
          --k;
          continue;
        }
        cut = ((fi + vi * vi) - (height[j] + vj * vj)) / (2.0 * (vi - vj));
        if (cut <= boundary[k] && k > 0) {
          --k;
          continue;
        }
        break;
      }
      if (cut == inf) continue;  // dominated everywhere
      if (cut == -inf) {
        k = 0;
        hull[0] = i;
        boundary[0] = -inf;
        boundary[1] = inf;
        continue;
      }
      ++k;
      hull[k] = i;
      boundary[k] = cut;
      boundary[k + 1] = inf;
    }

    double* row_out = out.row_ptr(r);
    int seg = 0;
    for (int c = 0; c < cols; ++c) {
      while (boundary[seg + 1] < static_cast<double>(c)) ++seg;
      const Point& s = sorted[hull[seg]];
      const double dc = static_cast<double>(c) - s.col;
      row_out[c] = std::sqrt(dc * dc + height[hull[seg]]);
    }
  }
  return out;
}

}  // namespace scriptorium
