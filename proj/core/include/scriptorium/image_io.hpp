#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scriptorium/raster.hpp"

namespace scriptorium {

/// Interleaved 8-bit RGB image, row-major.
struct RgbImage {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c * 3, 0) {}

  std::uint8_t* px(int r, int c) { return data.data() + 3 * (static_cast<std::size_t>(r) * cols + c); }
  const std::uint8_t* px(int r, int c) const {
    return data.data() + 3 * (static_cast<std::size_t>(r) * cols + c);
  }
};

/// Decodes a PNG or JPEG file from disk.
RgbImage read_rgb_image(const std::string& path);

/// Decodes a PNG or JPEG from an in-memory buffer.
RgbImage decode_rgb_image(std::span<const std::uint8_t> bytes);

void write_png(const RgbImage& image, const std::string& path);

std::vector<std::uint8_t> encode_png(const RgbImage& image);

/// 16-bit grayscale PNG, used for energy-map debug dumps.
void write_png16(const Raster<std::uint16_t>& image, const std::string& path);

}  // namespace scriptorium
