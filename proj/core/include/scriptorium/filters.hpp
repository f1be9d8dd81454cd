#pragma once

#include "scriptorium/raster.hpp"

namespace scriptorium {

/// Window placement for even-sized kernels. A kernel of side k covers offsets
/// [-k/2, k/2-1] around the anchor pixel; Mirrored flips that to
/// [-(k-1)/2, k/2]. Odd kernels are symmetric either way.
enum class KernelAnchor { Centered, Mirrored };

struct Window {
  int lo;
  int hi;
};

/// Offset range a kernel of side k covers around its anchor pixel.
Window window_offsets(int k, KernelAnchor anchor);

/// Mean over the k-by-k window around each pixel. Windows are clipped to the
/// raster and renormalized by the in-bounds cell count, so borders average
/// over fewer cells instead of assuming zero padding.
GrayRaster box_filter(const GrayRaster& in, int k,
                      KernelAnchor row_anchor = KernelAnchor::Centered,
                      KernelAnchor col_anchor = KernelAnchor::Centered);

/// Mean over a plus-shaped window: the union of a horizontal and a vertical
/// segment of length g through the pixel. The center cell is counted once,
/// so the full-interior normalizer is 2g-1. Border handling matches
/// box_filter (in-bounds renormalization).
GrayRaster plus_filter(const GrayRaster& in, int g,
                       KernelAnchor row_anchor = KernelAnchor::Centered,
                       KernelAnchor col_anchor = KernelAnchor::Centered);

}  // namespace scriptorium
