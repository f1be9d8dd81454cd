#include "scriptorium/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "scriptorium/errors.hpp"

namespace scriptorium {

namespace {

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

int parse_channel(const std::string& value, const std::string& key) {
  if (value == "red" || value == "r" || value == "0") return 0;
  if (value == "green" || value == "g" || value == "1") return 1;
  if (value == "blue" || value == "b" || value == "2") return 2;
  throw InputError("encoding descriptor: bad channel '" + value + "' for " +
                   key);
}

std::uint8_t parse_bits(const std::string& value, const std::string& key) {
  try {
    const int v = std::stoi(value, nullptr, 0);
    if (v < 0 || v > 255) throw InputError("");
    return static_cast<std::uint8_t>(v);
  } catch (const std::exception&) {
    throw InputError("encoding descriptor: bad bit value '" + value +
                     "' for " + key);
  }
}

std::uint8_t parse_class_set(const std::string& names) {
  std::uint8_t classes = 0;
  std::stringstream ss(names);
  std::string item;
  while (std::getline(ss, item, '+')) {
    item = trim(item);
    if (item == "background")
      classes |= kBackground;
    else if (item == "comment")
      classes |= kComment;
    else if (item == "decoration")
      classes |= kDecoration;
    else if (item == "main_text" || item == "main-text")
      classes |= kMainText;
    else
      throw InputError("encoding descriptor: unknown class '" + item + "'");
  }
  if (classes == 0)
    throw InputError("encoding descriptor: empty class set in map entry");
  return classes;
}

LabelEncoding::PaletteEntry parse_map_entry(const std::string& value) {
  // "R,G,B class[+class...]"
  const auto space = value.find_first_of(" \t");
  if (space == std::string::npos)
    throw InputError("encoding descriptor: map entry needs 'R,G,B classes': " +
                     value);
  const std::string rgb_part = trim(value.substr(0, space));
  const std::string class_part = trim(value.substr(space + 1));

  LabelEncoding::PaletteEntry entry{};
  std::stringstream ss(rgb_part);
  std::string item;
  int count = 0;
  while (std::getline(ss, item, ',')) {
    if (count >= 3) break;
    entry.rgb[count++] = parse_bits(trim(item), "map");
  }
  if (count != 3)
    throw InputError("encoding descriptor: map entry needs three RGB values: " +
                     value);
  entry.classes = parse_class_set(class_part);
  return entry;
}

std::string pixel_text(int row, int col) {
  return "(" + std::to_string(row) + ", " + std::to_string(col) + ")";
}

}  // namespace

LabelEncoding LabelEncoding::diva() { return LabelEncoding{}; }

LabelEncoding LabelEncoding::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("could not open encoding descriptor: " + path);

  LabelEncoding enc = diva();
  bool saw_mode = false;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("encoding descriptor: expected key=value, got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "mode") {
      if (value == "bits")
        enc.mode = Mode::Bits;
      else if (value == "palette")
        enc.mode = Mode::Palette;
      else
        throw InputError("encoding descriptor: unknown mode '" + value + "'");
      saw_mode = true;
    } else if (key == "channel") {
      enc.class_channel = parse_channel(value, key);
    } else if (key == "boundary_channel") {
      enc.boundary_channel = parse_channel(value, key);
    } else if (key == "boundary_mask") {
      enc.boundary_mask = parse_bits(value, key);
    } else if (key == "background") {
      enc.background_bit = parse_bits(value, key);
    } else if (key == "comment") {
      enc.comment_bit = parse_bits(value, key);
    } else if (key == "decoration") {
      enc.decoration_bit = parse_bits(value, key);
    } else if (key == "main_text") {
      enc.main_text_bit = parse_bits(value, key);
    } else if (key == "map") {
      enc.palette.push_back(parse_map_entry(value));
    } else {
      throw InputError("encoding descriptor: unknown key '" + key + "'");
    }
  }
  if (enc.mode == Mode::Palette && enc.palette.empty())
    throw InputError("encoding descriptor: palette mode needs map entries");
  if (!saw_mode && !enc.palette.empty()) enc.mode = Mode::Palette;
  return enc;
}

LabelImage decode_label_image(const RgbImage& image,
                              const LabelEncoding& encoding) {
  LabelImage out(image.rows, image.cols);

  if (encoding.mode == LabelEncoding::Mode::Bits) {
    const struct {
      std::uint8_t from;
      std::uint8_t to;
    } bit_map[] = {{encoding.background_bit, kBackground},
                   {encoding.comment_bit, kComment},
                   {encoding.decoration_bit, kDecoration},
                   {encoding.main_text_bit, kMainText}};
    for (int r = 0; r < image.rows; ++r) {
      for (int c = 0; c < image.cols; ++c) {
        const std::uint8_t* px = image.px(r, c);
        std::uint8_t classes = 0;
        for (const auto& bm : bit_map)
          if (bm.from != 0 && (px[encoding.class_channel] & bm.from) == bm.from)
            classes |= bm.to;
        if (classes == 0)
          throw InputError("label map: no recognized class at pixel " +
                           pixel_text(r, c));
        out.classes(r, c) = classes;
        out.boundary(r, c) =
            (px[encoding.boundary_channel] & encoding.boundary_mask) ? 1 : 0;
      }
    }
    return out;
  }

  for (int r = 0; r < image.rows; ++r) {
    for (int c = 0; c < image.cols; ++c) {
      const std::uint8_t* px = image.px(r, c);
      const LabelEncoding::PaletteEntry* hit = nullptr;
      for (const auto& entry : encoding.palette) {
        if (entry.rgb[0] == px[0] && entry.rgb[1] == px[1] &&
            entry.rgb[2] == px[2]) {
          hit = &entry;
          break;
        }
      }
      if (!hit)
        throw InputError("label map: color not in palette at pixel " +
                         pixel_text(r, c));
      out.classes(r, c) = hit->classes;
      out.boundary(r, c) = 0;
    }
  }
  return out;
}

RgbImage encode_label_image(const LabelImage& label,
                            const LabelEncoding& encoding) {
  RgbImage out(label.rows(), label.cols());

  if (encoding.mode == LabelEncoding::Mode::Bits) {
    const struct {
      std::uint8_t from;
      std::uint8_t to;
    } bit_map[] = {{kBackground, encoding.background_bit},
                   {kComment, encoding.comment_bit},
                   {kDecoration, encoding.decoration_bit},
                   {kMainText, encoding.main_text_bit}};
    for (int r = 0; r < label.rows(); ++r) {
      for (int c = 0; c < label.cols(); ++c) {
        const std::uint8_t classes = label.classes(r, c);
        std::uint8_t bits = 0;
        for (const auto& bm : bit_map)
          if (classes & bm.from) {
            if (bm.to == 0)
              throw InputError(
                  "label encoding has no bit for a class present at pixel " +
                  pixel_text(r, c));
            bits |= bm.to;
          }
        std::uint8_t* px = out.px(r, c);
        px[0] = px[1] = px[2] = 0;
        px[encoding.class_channel] |= bits;
        if (label.boundary.rows() > 0 && label.boundary(r, c))
          px[encoding.boundary_channel] |= encoding.boundary_mask;
      }
    }
    return out;
  }

  for (int r = 0; r < label.rows(); ++r) {
    for (int c = 0; c < label.cols(); ++c) {
      const std::uint8_t classes = label.classes(r, c);
      const LabelEncoding::PaletteEntry* hit = nullptr;
      for (const auto& entry : encoding.palette) {
        if (entry.classes == classes) {
          hit = &entry;
          break;
        }
      }
      if (!hit)
        throw InputError("label encoding palette has no entry for pixel " +
                         pixel_text(r, c));
      std::uint8_t* px = out.px(r, c);
      px[0] = hit->rgb[0];
      px[1] = hit->rgb[1];
      px[2] = hit->rgb[2];
    }
  }
  return out;
}

MaskRaster text_mask(const LabelImage& label) {
  MaskRaster mask(label.rows(), label.cols());
  for (int r = 0; r < label.rows(); ++r)
    for (int c = 0; c < label.cols(); ++c)
      mask(r, c) = (label.classes(r, c) & kMainText) ? 1 : 0;
  return mask;
}

MaskRaster denoise(const MaskRaster& mask, int min_area) {
  if (min_area < 0) throw InputError("denoise: min_area must be non-negative");
  if (min_area == 0) return mask;

  MaskRaster out(mask.rows(), mask.cols());
  const ComponentSet components =
      connected_components(mask, Connectivity::Eight);
  for (const Component& comp : components.items) {
    if (comp.area() < min_area) continue;
    for (const Pixel& p : comp.pixels) out(p.row, p.col) = 1;
  }
  return out;
}

int auto_min_area(const ComponentSet& components) {
  if (components.count() == 0) return 8;
  std::vector<int> areas;
  areas.reserve(components.count());
  for (const Component& comp : components.items)
    areas.push_back(comp.area());
  std::sort(areas.begin(), areas.end());
  const std::size_t n = areas.size();
  const double median =
      (n % 2 == 1) ? areas[n / 2]
                   : 0.5 * (areas[n / 2 - 1] + areas[n / 2]);
  return static_cast<int>(std::max(8L, std::lround(0.05 * median)));
}

}  // namespace scriptorium
