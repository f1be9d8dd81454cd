#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scriptorium/polygons.hpp"
#include "scriptorium/raster.hpp"

namespace scriptorium {

// Sorted unique row-major pixel keys (row * cols + col).
using PixelSet = std::vector<std::int64_t>;

// |a iff b| / |a or b|, with iu(empty, empty) = 1.
double iu(const PixelSet& a, const PixelSet& b);

// The main-text pixels inside or on the polygon.
PixelSet line_pixel_set(std::span<const Point> polygon, const MaskRaster& mask);

// Per-page scores. matches pairs (predicted index, ground-truth index).
struct PageEval {
  std::string page;
  int tp = 0;
  int fp = 0;
  int fn = 0;
  double line_iu = 0.0;
  double pixel_iu = 0.0;
  std::vector<std::pair<int, int>> matches;
};

struct CorpusEval {
  std::vector<PageEval> pages;
  double line_iu = 0.0;   // unweighted mean over pages
  double pixel_iu = 0.0;  // unweighted mean over pages
};

// Scores predictions against ground truth on one page. Every line's pixel
// set is the text mask restricted to its polygon; pairs are matched greedily
// by descending IU, one-to-one, counting only pairs with iu >= theta as true
// positives. line_iu = TP / (TP + FP + FN); pixel_iu sums intersections and
// unions over the matched pairs.
PageEval evaluate_page(std::span<const LinePolygon> predicted,
                       std::span<const LinePolygon> ground_truth,
                       const MaskRaster& mask, double theta = 0.75);

// Unweighted page means; empty input yields an empty report with zero means.
CorpusEval summarize(std::vector<PageEval> pages);

// Machine-readable report: per-page rows plus the corpus means.
std::string eval_report_json(const CorpusEval& corpus);

// Human-readable table of the same report.
std::string eval_report_table(const CorpusEval& corpus);

}  // namespace scriptorium
