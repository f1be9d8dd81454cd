#pragma once

#include <span>

#include "scriptorium/raster.hpp"

namespace scriptorium {

/// Exact Euclidean distance from every grid cell to the nearest seed point.
/// Seeds may sit at sub-pixel positions. Throws InputError when the seed
/// list is empty.
GrayRaster distance_to_nearest(std::span<const Point> seeds, int rows, int cols);

}  // namespace scriptorium
