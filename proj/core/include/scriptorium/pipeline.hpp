#pragma once

#include "scriptorium/binning.hpp"
#include "scriptorium/energy.hpp"
#include "scriptorium/ingest.hpp"
#include "scriptorium/polygons.hpp"
#include "scriptorium/seams.hpp"

namespace scriptorium {

// Everything the segmenter needs, with the defaults the other modules
// declare. min_area < 0 selects the relative denoising threshold.
struct PipelineConfig {
  SeamParams seams;
  SmoothingConfig smoothing;
  PolygonParams polygons;
  int min_area = -1;
  int small_bin_threshold = 2;
  double d_min = 1.0;
  double theta = 0.75;  // evaluation match threshold, carried for the CLI
};

// Full result of segmenting one page. Seams are the merged set; bins and
// polygons are ordered top line first.
struct PageSegmentation {
  std::vector<LinePolygon> polygons;
  std::vector<Seam> seams;
  std::vector<LineBin> bins;
  MaskRaster mask;  // denoised text mask
  int component_count = 0;
  int min_area_used = 0;
};

// text mask -> denoise -> components -> energy -> seams -> bins -> polygons.
// An empty page (no text after denoising) yields an empty polygon list and a
// warning instead of an error.
PageSegmentation segment_page(const LabelImage& label,
                              const PipelineConfig& config);

}  // namespace scriptorium
