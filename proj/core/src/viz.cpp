#include "scriptorium/viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace scriptorium {

namespace {

struct Color {
  std::uint8_t r, g, b;
};

constexpr Color kBackgroundColor{245, 243, 234};
constexpr Color kMainTextColor{45, 40, 38};
constexpr Color kCommentColor{80, 120, 200};
constexpr Color kDecorationColor{160, 95, 170};
constexpr Color kSeamLtrColor{210, 45, 35};
constexpr Color kSeamRtlColor{35, 90, 215};
constexpr Color kPolygonColor{40, 165, 70};

void stamp(RgbImage& image, int row, int col, Color color) {
  if (row < 0 || row >= image.rows || col < 0 || col >= image.cols) return;
  auto* p = image.px(row, col);
  p[0] = color.r;
  p[1] = color.g;
  p[2] = color.b;
}

void stamp_segment(RgbImage& image, Pixel a, Pixel b, Color color) {
  int dr = std::abs(b.row - a.row);
  int dc = std::abs(b.col - a.col);
  int step_r = a.row < b.row ? 1 : -1;
  int step_c = a.col < b.col ? 1 : -1;
  int err = dc - dr;
  int row = a.row;
  int col = a.col;
  while (true) {
    stamp(image, row, col, color);
    if (row == b.row && col == b.col) break;
    int e2 = 2 * err;
    if (e2 > -dr) {
      err -= dr;
      col += step_c;
    }
    if (e2 < dc) {
      err += dr;
      row += step_r;
    }
  }
}

Pixel rounded(Point p) {
  return Pixel{static_cast<int>(std::lround(p.row)), static_cast<int>(std::lround(p.col))};
}

Raster<std::uint16_t> scaled16(const GrayRaster& raster) {
  double lo = 0.0;
  double hi = 0.0;
  if (!raster.empty()) {
    auto [mn, mx] = std::minmax_element(raster.data().begin(), raster.data().end());
    lo = *mn;
    hi = *mx;
  }
  Raster<std::uint16_t> out(raster.rows(), raster.cols());
  if (hi > lo) {
    double scale = 65535.0 / (hi - lo);
    for (std::size_t i = 0; i < raster.size(); ++i) {
      out.data()[i] = static_cast<std::uint16_t>(std::lround((raster.data()[i] - lo) * scale));
    }
  }
  return out;
}

}  // namespace

RgbImage render_overlay(const LabelImage& label, const PageSegmentation& seg) {
  RgbImage image(label.rows(), label.cols());
  for (int r = 0; r < label.rows(); ++r) {
    for (int c = 0; c < label.cols(); ++c) {
      std::uint8_t classes = label.classes(r, c);
      Color color = kBackgroundColor;
      if (classes & kMainText) {
        color = kMainTextColor;
      } else if (classes & kComment) {
        color = kCommentColor;
      } else if (classes & kDecoration) {
        color = kDecorationColor;
      }
      stamp(image, r, c, color);
    }
  }
  for (const Seam& seam : seg.seams) {
    Color color = seam.direction == SeamDirection::LeftToRight ? kSeamLtrColor : kSeamRtlColor;
    for (int c = 0; c < static_cast<int>(seam.rows.size()); ++c) {
      stamp(image, seam.rows[c], c, color);
      stamp(image, seam.rows[c] + 1, c, color);
    }
  }
  for (const LinePolygon& polygon : seg.polygons) {
    const auto& vs = polygon.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      stamp_segment(image, rounded(vs[i]), rounded(vs[(i + 1) % vs.size()]), kPolygonColor);
    }
  }
  return image;
}

void write_energy_dumps(const EnergyMap& map, const std::string& prefix) {
  write_png16(scaled16(map.background), prefix + "_background.png");
  write_png16(scaled16(map.text), prefix + "_text.png");
  write_png16(scaled16(map.smoothed), prefix + "_smoothed.png");
  write_png16(scaled16(map.total), prefix + "_total.png");
}

}  // namespace scriptorium
