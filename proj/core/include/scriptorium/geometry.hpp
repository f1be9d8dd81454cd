#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scriptorium/raster.hpp"

namespace scriptorium {

/// True when the pixel center lies inside the closed polygon or exactly on
/// its boundary (even-odd rule; vertices are rounded to the pixel lattice).
bool polygon_contains(std::span<const Point> polygon, const Pixel& p);

/// Even-odd test for sub-pixel query points. Points on the boundary count as
/// inside up to floating-point resolution.
bool polygon_contains(std::span<const Point> polygon, const Point& p);

/// All pixels inside or on the polygon, clipped to a rows-by-cols page.
/// Returned as sorted unique row-major keys (row * cols + col).
std::vector<std::int64_t> rasterize_polygon(std::span<const Point> polygon, int rows, int cols);

}  // namespace scriptorium
