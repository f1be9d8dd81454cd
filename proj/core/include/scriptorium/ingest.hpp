#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scriptorium/components.hpp"
#include "scriptorium/image_io.hpp"
#include "scriptorium/raster.hpp"

namespace scriptorium {

// Canonical per-pixel class bits. A pixel may carry several classes at once.
enum LabelClass : std::uint8_t {
  kBackground = 0x01,
  kComment = 0x02,
  kDecoration = 0x04,
  kMainText = 0x08,
};

inline constexpr std::uint8_t kAllClasses =
    kBackground | kComment | kDecoration | kMainText;

// Pixel-labelled page: a class bitmask per pixel plus an optional boundary
// flag layer. Every pixel carries at least one class.
struct LabelImage {
  Raster<std::uint8_t> classes;
  MaskRaster boundary;

  LabelImage() = default;
  LabelImage(int rows, int cols) : classes(rows, cols), boundary(rows, cols) {}

  int rows() const { return classes.rows(); }
  int cols() const { return classes.cols(); }
};

// Maps label-map pixel values to class sets. Two styles are supported: class
// bits packed into one channel (the DIVA-HisDB layout) or an explicit RGB
// palette. Descriptors load from a small key=value config file; see
// LabelEncoding::from_file.
struct LabelEncoding {
  enum class Mode { Bits, Palette };

  struct PaletteEntry {
    std::uint8_t rgb[3];
    std::uint8_t classes;
  };

  Mode mode = Mode::Bits;

  // Bits mode: which channel holds the class bits and what each class's bit
  // value is inside that channel. The boundary flag may live in any channel.
  int class_channel = 2;
  std::uint8_t background_bit = 0x01;
  std::uint8_t comment_bit = 0x02;
  std::uint8_t decoration_bit = 0x04;
  std::uint8_t main_text_bit = 0x08;
  int boundary_channel = 0;
  std::uint8_t boundary_mask = 0x80;

  // Palette mode: exact RGB triples mapped to class sets.
  std::vector<PaletteEntry> palette;

  // DIVA-HisDB layout: class bits in blue, boundary flag in the red high bit.
  static LabelEncoding diva();

  // Parses a key=value descriptor file. '#' starts a comment. Keys:
  //   mode = bits | palette
  //   channel / boundary_channel = red | green | blue
  //   background / comment / decoration / main_text = <bit value>
  //   boundary_mask = <bit value>
  //   map = R,G,B <class>[+<class>...]   (repeatable, palette mode)
  static LabelEncoding from_file(const std::string& path);
};

// Decodes an RGB label map. Throws InputError naming the first pixel whose
// value matches no known class.
LabelImage decode_label_image(const RgbImage& image,
                              const LabelEncoding& encoding);

// Inverse of decode_label_image for the same descriptor. Throws InputError
// if a class set has no representation under the encoding.
RgbImage encode_label_image(const LabelImage& label,
                            const LabelEncoding& encoding);

// 1 where the pixel's class set contains main-text, else 0.
MaskRaster text_mask(const LabelImage& label);

// Removes foreground components smaller than min_area pixels. min_area 0 is
// the identity. Components use 8-connectivity.
MaskRaster denoise(const MaskRaster& mask, int min_area);

// Relative denoising threshold: 5% of the median component area, floor 8.
int auto_min_area(const ComponentSet& components);

}  // namespace scriptorium
