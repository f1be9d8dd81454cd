#pragma once

#include <vector>

#include "scriptorium/raster.hpp"

namespace scriptorium {

/// Outer boundary of the single 8-connected foreground region in the mask,
/// traced clockwise with Moore neighborhood following. The walk stops as
/// soon as a (pixel, backtrack) state recurs, which subsumes Jacob's
/// stopping criterion and also terminates on shapes that re-enter the start
/// pixel from a different side. Pixels on one-pixel-wide protrusions can
/// appear twice; the polygon closes implicitly from the last vertex back to
/// the first. Throws InputError "empty line" when nothing is set and
/// "disconnected line" when more than one region exists.
std::vector<Pixel> trace_outer_contour(const MaskRaster& mask);

}  // namespace scriptorium
