#pragma once

#include <string>

#include "scriptorium/energy.hpp"
#include "scriptorium/image_io.hpp"
#include "scriptorium/ingest.hpp"
#include "scriptorium/pipeline.hpp"

namespace scriptorium {

// Page image with the segmentation drawn on top: left-to-right seams in red,
// right-to-left in blue, line polygons in green over the class-colored page.
RgbImage render_overlay(const LabelImage& label, const PageSegmentation& seg);

// Writes <prefix>_background/_text/_smoothed/_total.png as 16-bit grayscale,
// each min-max scaled over its own raster.
void write_energy_dumps(const EnergyMap& map, const std::string& prefix);

}  // namespace scriptorium
