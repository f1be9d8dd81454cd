#include "scriptorium/energy.hpp"

#include <algorithm>
#include <vector>

#include "scriptorium/distance.hpp"
#include "scriptorium/errors.hpp"
#include "scriptorium/filters.hpp"

namespace scriptorium {

int resolve_global_kernel(const SmoothingConfig& config, int rows) {
  if (config.global_kernel < 0)
    throw InputError("global smoothing kernel must be positive");
  if (config.global_kernel > 0) return config.global_kernel;
  return std::min(rows, 4096);
}

GrayRaster background_energy(const ComponentSet& components, int rows,
                             int cols, double d_min) {
  if (d_min <= 0.0) throw InputError("d_min must be positive");
  std::vector<Point> centroids;
  centroids.reserve(components.count());
  for (const Component& comp : components.items)
    centroids.push_back(comp.centroid);

  GrayRaster dist = distance_to_nearest(centroids, rows, cols);
  for (int r = 0; r < rows; ++r) {
    double* row = dist.row_ptr(r);
    for (int c = 0; c < cols; ++c) row[c] = 1.0 / std::max(row[c], d_min);
  }
  return dist;
}

GrayRaster text_energy(const GrayRaster& background, const MaskRaster& mask) {
  if (!background.same_shape(mask))
    throw InputError("text_energy: raster dimensions disagree");
  GrayRaster out(background.rows(), background.cols());
  for (int r = 0; r < background.rows(); ++r) {
    const double* b = background.row_ptr(r);
    const std::uint8_t* m = mask.row_ptr(r);
    double* t = out.row_ptr(r);
    for (int c = 0; c < background.cols(); ++c) t[c] = m[c] ? b[c] : 0.0;
  }
  return out;
}

GrayRaster smoothed_energy(const GrayRaster& background, const GrayRaster& text,
                           const SmoothingConfig& config) {
  if (!background.same_shape(text))
    throw InputError("smoothed_energy: raster dimensions disagree");
  if (config.local_kernel < 1)
    throw InputError("local smoothing kernel must be positive");

  GrayRaster sum(background.rows(), background.cols());
  for (int r = 0; r < background.rows(); ++r) {
    const double* b = background.row_ptr(r);
    const double* t = text.row_ptr(r);
    double* s = sum.row_ptr(r);
    for (int c = 0; c < background.cols(); ++c) s[c] = b[c] + t[c];
  }

  const int g = resolve_global_kernel(config, background.rows());
  return box_filter(plus_filter(sum, g), config.local_kernel);
}

EnergyMap total_energy(const MaskRaster& mask, const SmoothingConfig& config,
                       double d_min) {
  const ComponentSet components =
      connected_components(mask, Connectivity::Eight);

  EnergyMap map;
  map.background = background_energy(components, mask.rows(), mask.cols(), d_min);
  map.text = text_energy(map.background, mask);
  map.smoothed = smoothed_energy(map.background, map.text, config);

  map.total = GrayRaster(mask.rows(), mask.cols());
  for (int r = 0; r < mask.rows(); ++r) {
    const double* b = map.background.row_ptr(r);
    const double* t = map.text.row_ptr(r);
    const double* s = map.smoothed.row_ptr(r);
    double* e = map.total.row_ptr(r);
    for (int c = 0; c < mask.cols(); ++c) e[c] = b[c] + t[c] + s[c];
  }
  return map;
}

GrayRaster normalize_unit(const GrayRaster& raster) {
  double lo = raster(0, 0);
  double hi = raster(0, 0);
  for (int r = 0; r < raster.rows(); ++r) {
    const double* row = raster.row_ptr(r);
    for (int c = 0; c < raster.cols(); ++c) {
      lo = std::min(lo, row[c]);
      hi = std::max(hi, row[c]);
    }
  }

  GrayRaster out(raster.rows(), raster.cols());
  if (hi == lo) return out;
  const double scale = 1.0 / (hi - lo);
  for (int r = 0; r < raster.rows(); ++r) {
    const double* in = raster.row_ptr(r);
    double* o = out.row_ptr(r);
    for (int c = 0; c < raster.cols(); ++c) o[c] = (in[c] - lo) * scale;
  }
  return out;
}

}  // namespace scriptorium
