#pragma once

#include "scriptorium/components.hpp"
#include "scriptorium/raster.hpp"

namespace scriptorium {

// Kernel sides for the two smoothing passes. global_kernel 0 means "derive
// from the page": the row count, capped at 4096.
struct SmoothingConfig {
  int global_kernel = 0;
  int local_kernel = 32;
};

// The composite energy map: background (inverse centroid distance), text
// (background energy doubled on text pixels), smoothed (two-stage blur of
// background + text), and their pointwise total.
struct EnergyMap {
  GrayRaster background;
  GrayRaster text;
  GrayRaster smoothed;
  GrayRaster total;
};

// B(p) = 1 / max(dist(p, nearest centroid), d_min). Throws InputError when
// there are no components.
GrayRaster background_energy(const ComponentSet& components, int rows,
                             int cols, double d_min = 1.0);

// T(p) = B(p) on text pixels, 0 elsewhere.
GrayRaster text_energy(const GrayRaster& background, const MaskRaster& mask);

// S = box_filter(plus_filter(B + T, g), k) with g the global and k the local
// kernel side.
GrayRaster smoothed_energy(const GrayRaster& background, const GrayRaster& text,
                           const SmoothingConfig& config);

// Full map for a denoised text mask: components, B, T, S, and E = B + T + S.
EnergyMap total_energy(const MaskRaster& mask, const SmoothingConfig& config,
                       double d_min = 1.0);

// Min-max normalization to [0, 1]. A constant raster maps to all zeros.
GrayRaster normalize_unit(const GrayRaster& raster);

// The global kernel side actually used for a page with the given row count.
int resolve_global_kernel(const SmoothingConfig& config, int rows);

}  // namespace scriptorium
