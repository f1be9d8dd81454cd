#include "scriptorium/polygons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scriptorium/contour.hpp"
#include "scriptorium/errors.hpp"
#include "scriptorium/filters.hpp"

namespace scriptorium {

namespace {

struct NormEdge {
  int a, b;
};

NormEdge normalize(int u, int v) {
  return u < v ? NormEdge{u, v} : NormEdge{v, u};
}

bool edge_less(const NormEdge& x, const NormEdge& y) {
  return x.a != y.a ? x.a < y.a : x.b < y.b;
}

void stamp_square(MaskRaster& canvas, int row, int col, int lo, int hi) {
  for (int dr = lo; dr <= hi; ++dr) {
    const int r = row + dr;
    if (r < 0 || r >= canvas.rows()) continue;
    for (int dc = lo; dc <= hi; ++dc) {
      const int c = col + dc;
      if (c < 0 || c >= canvas.cols()) continue;
      canvas(r, c) = 1;
    }
  }
}

void draw_segment(MaskRaster& canvas, Pixel from, Pixel to, int lo, int hi) {
  int r = from.row, c = from.col;
  const int dr = std::abs(to.row - r), dc = std::abs(to.col - c);
  const int sr = r < to.row ? 1 : -1, sc = c < to.col ? 1 : -1;
  int err = (dc > dr ? dc : -dr) / 2;
  while (true) {
    stamp_square(canvas, r, c, lo, hi);
    if (r == to.row && c == to.col) break;
    const int e = err;
    if (e > -dc) {
      err -= dr;
      c += sc;
    }
    if (e < dr) {
      err += dc;
      r += sr;
    }
  }
}

// 5x5 box dilation via integer prefix sums: a pixel turns on when any
// foreground lies within its (clipped) 5x5 window.
MaskRaster dilate5(const MaskRaster& mask) {
  const int n = mask.rows(), m = mask.cols();
  std::vector<int> prefix(static_cast<std::size_t>(n + 1) * (m + 1), 0);
  for (int r = 0; r < n; ++r) {
    const std::uint8_t* row = mask.row_ptr(r);
    int* out = prefix.data() + static_cast<std::size_t>(r + 1) * (m + 1);
    const int* up = prefix.data() + static_cast<std::size_t>(r) * (m + 1);
    int acc = 0;
    for (int c = 0; c < m; ++c) {
      acc += row[c];
      out[c + 1] = acc + up[c + 1];
    }
  }
  const auto rect = [&](int r0, int c0, int r1, int c1) {
    const auto* p = prefix.data();
    const std::size_t w = m + 1;
    return p[(r1 + 1) * w + (c1 + 1)] - p[r0 * w + (c1 + 1)] -
           p[(r1 + 1) * w + c0] + p[r0 * w + c0];
  };

  MaskRaster out(n, m);
  for (int r = 0; r < n; ++r) {
    const int r0 = std::max(r - 2, 0), r1 = std::min(r + 2, n - 1);
    std::uint8_t* o = out.row_ptr(r);
    for (int c = 0; c < m; ++c) {
      const int c0 = std::max(c - 2, 0), c1 = std::min(c + 2, m - 1);
      o[c] = rect(r0, c0, r1, c1) > 0 ? 1 : 0;
    }
  }
  return out;
}

Pixel rounded(const Point& p) {
  return Pixel{static_cast<int>(std::lround(p.row)),
               static_cast<int>(std::lround(p.col))};
}

// Perpendicular distance from p to the segment a-b.
double segment_distance(const Point& p, const Point& a, const Point& b) {
  const double vr = b.row - a.row, vc = b.col - a.col;
  const double wr = p.row - a.row, wc = p.col - a.col;
  const double len_sq = vr * vr + vc * vc;
  double t = len_sq > 0.0 ? (wr * vr + wc * vc) / len_sq : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dr = wr - t * vr, dc = wc - t * vc;
  return std::sqrt(dr * dr + dc * dc);
}

void peucker(std::span<const Point> pts, int from, int to, double tolerance,
             std::vector<char>& keep) {
  if (to - from < 2) return;
  double worst = -1.0;
  int worst_at = -1;
  for (int i = from + 1; i < to; ++i) {
    const double d = segment_distance(pts[i], pts[from], pts[to]);
    if (d > worst) {
      worst = d;
      worst_at = i;
    }
  }
  if (worst <= tolerance) return;
  keep[worst_at] = 1;
  peucker(pts, from, worst_at, tolerance, keep);
  peucker(pts, worst_at, to, tolerance, keep);
}

}  // namespace

std::vector<MstEdge> minimum_spanning_tree(std::span<const Point> centroids) {
  const int v = static_cast<int>(centroids.size());
  if (v == 0) throw InputError("minimum_spanning_tree: no centroids");
  if (v == 1) return {};

  const auto dist = [&](int a, int b) {
    const double dr = centroids[a].row - centroids[b].row;
    const double dc = centroids[a].col - centroids[b].col;
    return std::sqrt(dr * dr + dc * dc);
  };

  std::vector<char> in_tree(v, 0);
  std::vector<double> key(v, std::numeric_limits<double>::infinity());
  std::vector<int> parent(v, -1);
  in_tree[0] = 1;
  for (int u = 1; u < v; ++u) {
    key[u] = dist(0, u);
    parent[u] = 0;
  }

  std::vector<MstEdge> edges;
  edges.reserve(v - 1);
  for (int step = 1; step < v; ++step) {
    int pick = -1;
    for (int u = 0; u < v; ++u) {
      if (in_tree[u]) continue;
      if (pick < 0 || key[u] < key[pick] ||
          (key[u] == key[pick] &&
           edge_less(normalize(parent[u], u), normalize(parent[pick], pick))))
        pick = u;
    }
    in_tree[pick] = 1;
    const NormEdge e = normalize(parent[pick], pick);
    edges.push_back({e.a, e.b, key[pick]});

    for (int u = 0; u < v; ++u) {
      if (in_tree[u]) continue;
      const double d = dist(pick, u);
      if (d < key[u] || (d == key[u] && edge_less(normalize(pick, u),
                                                  normalize(parent[u], u)))) {
        key[u] = d;
        parent[u] = pick;
      }
    }
  }

  std::sort(edges.begin(), edges.end(), [](const MstEdge& x, const MstEdge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return edges;
}

MaskRaster render_line_canvas(const LineBin& bin, const ComponentSet& components,
                              std::span<const MstEdge> edges, int rows,
                              int cols, int stroke) {
  if (stroke < 1) throw InputError("MST edge stroke must be >= 1");
  MaskRaster canvas(rows, cols);
  for (const int member : bin.members) {
    for (const Pixel& p : components.items[member].pixels) {
      if (canvas.in_bounds(p.row, p.col)) canvas(p.row, p.col) = 1;
    }
  }
  const auto [lo, hi] = window_offsets(stroke, KernelAnchor::Centered);
  for (const MstEdge& edge : edges) {
    draw_segment(canvas, rounded(bin.centroids[edge.a]),
                 rounded(bin.centroids[edge.b]), lo, hi);
  }
  return canvas;
}

std::optional<std::vector<Point>> try_extract_polygon(const MaskRaster& canvas) {
  const MaskRaster fat = dilate5(canvas);
  const ComponentSet pieces = connected_components(fat, Connectivity::Eight);
  if (pieces.count() == 0) throw InputError("extract_polygon: empty canvas");
  if (pieces.count() > 1) return std::nullopt;

  const std::vector<Pixel> contour = trace_outer_contour(fat);
  std::vector<Point> vertices;
  vertices.reserve(contour.size());
  for (const Pixel& p : contour)
    vertices.push_back({static_cast<double>(p.row), static_cast<double>(p.col)});
  return vertices;
}

std::vector<Point> extract_polygon(const MaskRaster& canvas) {
  auto vertices = try_extract_polygon(canvas);
  if (!vertices) throw InputError("line fragmentation");
  return std::move(*vertices);
}

std::vector<Point> simplify_polygon(std::span<const Point> vertices,
                                    double tolerance) {
  std::vector<Point> out(vertices.begin(), vertices.end());
  if (tolerance <= 0.0 || vertices.size() < 4) return out;

  // Anchor the closed outline at vertex 0 and at the vertex farthest from it,
  // then decimate the two open chains independently.
  const int n = static_cast<int>(vertices.size());
  int far = 1;
  double far_dist = -1.0;
  for (int i = 1; i < n; ++i) {
    const double dr = vertices[i].row - vertices[0].row;
    const double dc = vertices[i].col - vertices[0].col;
    const double d = dr * dr + dc * dc;
    if (d > far_dist) {
      far_dist = d;
      far = i;
    }
  }

  std::vector<char> keep(n, 0);
  keep[0] = keep[far] = 1;
  peucker(vertices, 0, far, tolerance, keep);
  // Second chain wraps past the end; unroll it into a temporary.
  std::vector<Point> wrapped(vertices.begin() + far, vertices.end());
  wrapped.push_back(vertices[0]);
  std::vector<char> keep_wrapped(wrapped.size(), 0);
  keep_wrapped.front() = keep_wrapped.back() = 1;
  peucker(wrapped, 0, static_cast<int>(wrapped.size()) - 1, tolerance,
          keep_wrapped);
  for (std::size_t i = 1; i + 1 < wrapped.size(); ++i)
    if (keep_wrapped[i]) keep[far + static_cast<int>(i)] = 1;

  std::vector<Point> result;
  for (int i = 0; i < n; ++i)
    if (keep[i]) result.push_back(vertices[i]);
  if (result.size() < 3) return out;
  return result;
}

std::vector<LinePolygon> extract_line_polygons(std::span<const LineBin> bins,
                                               const ComponentSet& components,
                                               int rows, int cols,
                                               const PolygonParams& params) {
  std::vector<LinePolygon> polygons;
  polygons.reserve(bins.size());

  for (std::size_t b = 0; b < bins.size(); ++b) {
    const LineBin& bin = bins[b];
    const std::vector<MstEdge> edges = minimum_spanning_tree(bin.centroids);

    int r0 = rows, r1 = -1, c0 = cols, c1 = -1;
    for (const int member : bin.members) {
      for (const Pixel& p : components.items[member].pixels) {
        r0 = std::min(r0, p.row);
        r1 = std::max(r1, p.row);
        c0 = std::min(c0, p.col);
        c1 = std::max(c1, p.col);
      }
    }
    if (r1 < 0)
      throw InputError("cannot build a polygon for an empty bin " +
                       std::to_string(b));

    std::optional<std::vector<Point>> vertices;
    for (const int attempt : {params.stroke, 2 * params.stroke}) {
      // Pad enough that the stamp plus the 5x5 dilation never reach the
      // window edge; clipping then only happens at true page borders.
      const int margin = attempt + 3;
      const int wr0 = std::max(r0 - margin, 0);
      const int wr1 = std::min(r1 + margin, rows - 1);
      const int wc0 = std::max(c0 - margin, 0);
      const int wc1 = std::min(c1 + margin, cols - 1);

      LineBin local = bin;
      for (Point& p : local.centroids) {
        p.row -= wr0;
        p.col -= wc0;
      }
      MaskRaster canvas(wr1 - wr0 + 1, wc1 - wc0 + 1);
      for (const int member : bin.members)
        for (const Pixel& p : components.items[member].pixels)
          canvas(p.row - wr0, p.col - wc0) = 1;
      const auto [lo, hi] = window_offsets(attempt, KernelAnchor::Centered);
      for (const MstEdge& edge : edges)
        draw_segment(canvas, rounded(local.centroids[edge.a]),
                     rounded(local.centroids[edge.b]), lo, hi);

      vertices = try_extract_polygon(canvas);
      if (vertices) {
        for (Point& p : *vertices) {
          p.row += wr0;
          p.col += wc0;
        }
        break;
      }
    }
    if (!vertices)
      throw InputError("line fragmentation in bin " + std::to_string(b) +
                       " (key " + std::to_string(bin.key) + ")");

    LinePolygon poly;
    poly.line_index = static_cast<int>(b);
    poly.members = bin.members;
    poly.vertices = params.simplify_tolerance > 0.0
                        ? simplify_polygon(*vertices, params.simplify_tolerance)
                        : std::move(*vertices);
    polygons.push_back(std::move(poly));
  }
  return polygons;
}

}  // namespace scriptorium
