#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "scriptorium/errors.hpp"
#include "xml_reader.hpp"

namespace scriptorium::oracle {

GrayRaster random_raster(std::uint64_t seed, int rows, int cols, bool dyadic) {
  TestRng rng(seed);
  GrayRaster out(rows, cols);
  for (double& v : out.data())
    v = dyadic ? static_cast<double>(rng.engine() % 1024) / 1024.0 : rng.unit();
  return out;
}

std::vector<Point> random_points(std::uint64_t seed, int count, int rows,
                                 int cols) {
  TestRng rng(seed);
  std::vector<Point> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i)
    points.push_back(Point{rng.unit() * (rows - 1), rng.unit() * (cols - 1)});
  return points;
}

MaskRaster random_mask(std::uint64_t seed, int rows, int cols, double fill) {
  TestRng rng(seed);
  MaskRaster out(rows, cols);
  for (auto& v : out.data()) v = rng.chance(fill) ? 1 : 0;
  return out;
}

GrayRaster dense_box(const GrayRaster& in, int k, KernelAnchor row_anchor,
                     KernelAnchor col_anchor) {
  const Window wr = window_offsets(k, row_anchor);
  const Window wc = window_offsets(k, col_anchor);
  GrayRaster out(in.rows(), in.cols());
  for (int r = 0; r < in.rows(); ++r) {
    for (int c = 0; c < in.cols(); ++c) {
      double sum = 0.0;
      int count = 0;
      for (int dr = wr.lo; dr <= wr.hi; ++dr) {
        for (int dc = wc.lo; dc <= wc.hi; ++dc) {
          if (!in.in_bounds(r + dr, c + dc)) continue;
          sum += in(r + dr, c + dc);
          ++count;
        }
      }
      out(r, c) = sum / count;
    }
  }
  return out;
}

GrayRaster dense_plus(const GrayRaster& in, int g, KernelAnchor row_anchor,
                      KernelAnchor col_anchor) {
  const Window wr = window_offsets(g, row_anchor);
  const Window wc = window_offsets(g, col_anchor);
  GrayRaster out(in.rows(), in.cols());
  for (int r = 0; r < in.rows(); ++r) {
    for (int c = 0; c < in.cols(); ++c) {
      double sum = 0.0;
      int count = 0;
      for (int dc = wc.lo; dc <= wc.hi; ++dc) {
        if (!in.in_bounds(r, c + dc)) continue;
        sum += in(r, c + dc);
        ++count;
      }
      for (int dr = wr.lo; dr <= wr.hi; ++dr) {
        if (dr == 0) continue;  // center cell already counted once
        if (!in.in_bounds(r + dr, c)) continue;
        sum += in(r + dr, c);
        ++count;
      }
      out(r, c) = sum / count;
    }
  }
  return out;
}

GrayRaster brute_distance(std::span<const Point> seeds, int rows, int cols) {
  if (seeds.empty()) throw InputError("brute_distance: no seeds");
  GrayRaster out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& s : seeds) {
        const double dr = static_cast<double>(r) - s.row;
        const double dc = static_cast<double>(c) - s.col;
        best = std::min(best, dc * dc + dr * dr);
      }
      out(r, c) = std::sqrt(best);
    }
  }
  return out;
}

double enumerate_min_seam_cost(const GrayRaster& energy, int start_row,
                               SeamDirection direction, double beta) {
  const int n = energy.rows();
  const int m = energy.cols();
  const auto page_col = [&](int t) {
    return direction == SeamDirection::LeftToRight ? t : m - 1 - t;
  };

  std::function<double(int, int)> walk = [&](int r, int t) -> double {
    if (t == m - 1) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (const int dr : {-1, 0, 1}) {
      const int nr = r + dr;
      if (nr < 0 || nr >= n) continue;
      const double total =
          (energy(nr, page_col(t + 1)) + beta * std::abs(dr)) + walk(nr, t + 1);
      best = std::min(best, total);
    }
    return best;
  };
  return walk(start_row, 0);
}

namespace {

double point_distance(const Point& a, const Point& b) {
  const double dr = a.row - b.row;
  const double dc = a.col - b.col;
  return std::sqrt(dr * dr + dc * dc);
}

// Decodes a Pruefer sequence into its labelled tree's edges.
std::vector<std::pair<int, int>> pruefer_tree(std::span<const int> seq, int v) {
  std::vector<int> degree(v, 1);
  for (const int s : seq) ++degree[s];

  std::vector<std::pair<int, int>> edges;
  std::vector<bool> used(v, false);
  for (const int s : seq) {
    int leaf = -1;
    for (int i = 0; i < v; ++i) {
      if (degree[i] == 1 && !used[i]) {
        leaf = i;
        break;
      }
    }
    edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
    used[leaf] = true;
    --degree[s];
  }
  int a = -1, b = -1;
  for (int i = 0; i < v; ++i) {
    if (used[i] || degree[i] != 1) continue;
    (a < 0 ? a : b) = i;
  }
  edges.emplace_back(a, b);
  return edges;
}

}  // namespace

double edge_weight_sum(std::span<const Point> points,
                       std::span<const std::pair<int, int>> edges) {
  std::vector<std::pair<int, int>> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (const auto& [a, b] : sorted) total += point_distance(points[a], points[b]);
  return total;
}

double brute_mst_weight(std::span<const Point> points) {
  const int v = static_cast<int>(points.size());
  if (v <= 1) return 0.0;
  if (v == 2) return point_distance(points[0], points[1]);

  std::vector<int> seq(v - 2, 0);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    best = std::min(best, edge_weight_sum(points, pruefer_tree(seq, v)));
    int i = static_cast<int>(seq.size()) - 1;
    while (i >= 0 && seq[i] == v - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return best;
}

FloodResult flood_components(const MaskRaster& mask, Connectivity conn) {
  FloodResult result;
  result.label = Raster<int>(mask.rows(), mask.cols(), -1);
  const int dr8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
  const int dc8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
  const int dr4[] = {-1, 0, 0, 1};
  const int dc4[] = {0, -1, 1, 0};
  const bool eight = conn == Connectivity::Eight;
  const int* drs = eight ? dr8 : dr4;
  const int* dcs = eight ? dc8 : dc4;
  const int neighbours = eight ? 8 : 4;

  for (int r = 0; r < mask.rows(); ++r) {
    for (int c = 0; c < mask.cols(); ++c) {
      if (!mask(r, c) || result.label(r, c) >= 0) continue;
      const int id = result.count++;
      int area = 0;
      std::deque<Pixel> queue{{r, c}};
      result.label(r, c) = id;
      while (!queue.empty()) {
        const Pixel p = queue.front();
        queue.pop_front();
        ++area;
        for (int i = 0; i < neighbours; ++i) {
          const int nr = p.row + drs[i];
          const int nc = p.col + dcs[i];
          if (!mask.in_bounds(nr, nc) || !mask(nr, nc)) continue;
          if (result.label(nr, nc) >= 0) continue;
          result.label(nr, nc) = id;
          queue.push_back({nr, nc});
        }
      }
      result.areas.push_back(area);
    }
  }
  return result;
}

namespace {

void structural_error(const std::string& why) {
  throw InputError("page xml structure: " + why);
}

void check_coords(const xml::Node& owner, int width, int height,
                  const std::string& what) {
  const xml::Node* coords = owner.first("Coords");
  if (!coords) structural_error(what + " has no Coords");
  const std::string* points = coords->attribute("points");
  if (!points || points->empty()) structural_error(what + " has empty Coords");

  std::istringstream in(*points);
  std::string pair;
  int count = 0;
  while (in >> pair) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos)
      structural_error(what + " has a point without a comma: " + pair);
    int x = 0, y = 0;
    try {
      x = std::stoi(pair.substr(0, comma));
      y = std::stoi(pair.substr(comma + 1));
    } catch (const std::exception&) {
      structural_error(what + " has a non-integer point: " + pair);
    }
    if (x < 0 || x >= width || y < 0 || y >= height)
      structural_error(what + " has an out-of-bounds point: " + pair);
    ++count;
  }
  if (count < 3) structural_error(what + " has fewer than 3 points");
}

}  // namespace

void check_page_xml_structure(const std::string& xml_bytes) {
  const xml::Node root = xml::parse(xml_bytes);
  if (root.name != "PcGts") structural_error("root element is not PcGts");
  const std::string* ns = root.attribute("xmlns");
  if (!ns ||
      *ns != "http://schema.primaresearch.org/PAGE/gts/pagecontent/2013-07-15")
    structural_error("missing or unexpected PAGE namespace");

  const xml::Node* metadata = root.first("Metadata");
  if (!metadata) structural_error("missing Metadata");
  for (const char* field : {"Creator", "Created", "LastChange"})
    if (!metadata->first(field))
      structural_error(std::string("missing Metadata/") + field);

  const xml::Node* page = root.first("Page");
  if (!page) structural_error("missing Page");
  const std::string* filename = page->attribute("imageFilename");
  if (!filename || filename->empty())
    structural_error("missing Page imageFilename");
  int width = 0, height = 0;
  try {
    width = std::stoi(*page->attribute("imageWidth"));
    height = std::stoi(*page->attribute("imageHeight"));
  } catch (const std::exception&) {
    structural_error("missing or non-integer Page dimensions");
  }
  if (width < 1 || height < 1) structural_error("non-positive Page dimensions");

  std::vector<const xml::Node*> regions;
  page->collect("TextRegion", regions);
  if (regions.empty()) structural_error("missing TextRegion");
  for (const xml::Node* region : regions) {
    const std::string* id = region->attribute("id");
    if (!id || id->empty()) structural_error("TextRegion without id");
    check_coords(*region, width, height, "TextRegion " + *id);
  }

  std::vector<const xml::Node*> lines;
  page->collect("TextLine", lines);
  for (const xml::Node* line : lines) {
    const std::string* id = line->attribute("id");
    if (!id || id->empty()) structural_error("TextLine without id");
    check_coords(*line, width, height, "TextLine " + *id);
  }
}

}  // namespace scriptorium::oracle
