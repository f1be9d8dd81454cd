#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "scriptorium/filters.hpp"
#include "scriptorium/raster.hpp"
#include "scriptorium/seams.hpp"

// Reference implementations the test suites compare the library against.
// Each one takes the most direct route available (nested loops, depth-first
// enumeration) and shares no code with the production algorithms.
namespace scriptorium::oracle {

// Deterministic sampling helper; identical output on every platform.
struct TestRng {
  std::mt19937_64 engine;
  explicit TestRng(std::uint64_t seed) : engine(seed) {}

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }
  double unit() { return (engine() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
};

// Random raster with values in [0, 1). dyadic restricts values to k/1024,
// which keeps every sum of them exact in double precision.
GrayRaster random_raster(std::uint64_t seed, int rows, int cols,
                         bool dyadic = false);

// Random sub-pixel points inside a rows-by-cols page.
std::vector<Point> random_points(std::uint64_t seed, int count, int rows,
                                 int cols);

// Random mask with the given fill probability.
MaskRaster random_mask(std::uint64_t seed, int rows, int cols, double fill);

// Mean over the clipped k-by-k window, straight nested loops.
GrayRaster dense_box(const GrayRaster& in, int k,
                     KernelAnchor row_anchor = KernelAnchor::Centered,
                     KernelAnchor col_anchor = KernelAnchor::Centered);

// Mean over the clipped plus-shaped window (center counted once).
GrayRaster dense_plus(const GrayRaster& in, int g,
                      KernelAnchor row_anchor = KernelAnchor::Centered,
                      KernelAnchor col_anchor = KernelAnchor::Centered);

// Min over all seeds of the Euclidean distance, one seed at a time.
GrayRaster brute_distance(std::span<const Point> seeds, int rows, int cols);

// Depth-first walk over every monotone path from the pinned start row to the
// far column; returns the cheapest total cost. Costs fold suffix-first,
// step = (energy + beta * |move|) + rest, mirroring the declared cost model.
double enumerate_min_seam_cost(const GrayRaster& energy, int start_row,
                               SeamDirection direction, double beta);

// Minimum spanning tree weight by enumerating every labelled tree via
// Pruefer sequences (feasible up to ~8 points). Edge weights are summed in
// sorted (a, b) edge order.
double brute_mst_weight(std::span<const Point> points);

// Sum of sqrt edge lengths in the order given, with the same per-edge
// arithmetic brute_mst_weight uses.
double edge_weight_sum(std::span<const Point> points,
                       std::span<const std::pair<int, int>> edges);

// Connected components by breadth-first flood fill.
struct FloodResult {
  int count = 0;
  std::vector<int> areas;      // in discovery (row-major) order
  Raster<int> label;           // -1 background, else component index
};
FloodResult flood_components(const MaskRaster& mask, Connectivity conn);

// Asserts the structural rules of a serialized PAGE document: namespace,
// required metadata, page attributes, and well-formed in-bounds Coords on
// every region and line. Throws InputError describing the first violation.
void check_page_xml_structure(const std::string& xml);

}  // namespace scriptorium::oracle
