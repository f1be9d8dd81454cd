#pragma once

#include <optional>
#include <span>
#include <vector>

#include "scriptorium/binning.hpp"
#include "scriptorium/components.hpp"
#include "scriptorium/raster.hpp"

namespace scriptorium {

// Spanning-tree edge between two entries of a centroid list.
struct MstEdge {
  int a = 0;
  int b = 0;
  double weight = 0.0;
};

// One extracted text line: its closed outline (top-to-bottom line_index on
// the page) and the component indices it was built from.
struct LinePolygon {
  int line_index = 0;
  std::vector<Point> vertices;
  std::vector<int> members;
};

struct PolygonParams {
  int stroke = 3;                  // MST edge thickness in pixels
  double simplify_tolerance = 0.0;  // vertex decimation, 0 disables
};

// Minimum spanning tree of the complete Euclidean graph over the centroids.
// Prim's algorithm; ties broken by lexicographic (a, b) on normalized edges.
// Output edges have a < b and are sorted by (a, b).
std::vector<MstEdge> minimum_spanning_tree(std::span<const Point> centroids);

// Union of the bin's component pixels and its MST edges, each edge drawn as a
// Bresenham segment between rounded centroids stamped to `stroke` thickness.
MaskRaster render_line_canvas(const LineBin& bin, const ComponentSet& components,
                              std::span<const MstEdge> edges, int rows,
                              int cols, int stroke);

// Dilates the canvas by a 5x5 box (a blur thresholded above zero) and traces
// the outer contour. Returns nothing if the dilated canvas still has more
// than one component.
std::optional<std::vector<Point>> try_extract_polygon(const MaskRaster& canvas);

// As try_extract_polygon, but fragmentation throws InputError.
std::vector<Point> extract_polygon(const MaskRaster& canvas);

// Douglas-Peucker vertex decimation for a closed polygon; vertices farther
// than tolerance from the simplified outline are always kept.
std::vector<Point> simplify_polygon(std::span<const Point> vertices,
                                    double tolerance);

// Runs the render + extract stage for every bin, in bin order. Fragmented
// lines get one retry at doubled stroke before failing. Rendering happens on
// a padded bounding box per bin, which matches the page-sized construction.
std::vector<LinePolygon> extract_line_polygons(std::span<const LineBin> bins,
                                               const ComponentSet& components,
                                               int rows, int cols,
                                               const PolygonParams& params);

}  // namespace scriptorium
