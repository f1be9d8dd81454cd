#pragma once

#include <vector>

#include "scriptorium/raster.hpp"

namespace scriptorium {

/// One connected foreground region. Pixels are stored in row-major order.
struct Component {
  std::vector<Pixel> pixels;
  Point centroid;
  int area() const { return static_cast<int>(pixels.size()); }
};

struct ComponentSet {
  std::vector<Component> items;
  int count() const { return static_cast<int>(items.size()); }
};

/// Labels connected foreground regions of a binary mask. Components are
/// ordered by their smallest row-major pixel index, which makes the result
/// independent of anything but the mask contents.
ComponentSet connected_components(const MaskRaster& mask, Connectivity conn);

}  // namespace scriptorium
