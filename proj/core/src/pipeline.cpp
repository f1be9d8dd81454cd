#include "scriptorium/pipeline.hpp"

#include <utility>

#include "scriptorium/log.hpp"

namespace scriptorium {

PageSegmentation segment_page(const LabelImage& label,
                              const PipelineConfig& config) {
  PageSegmentation out;

  MaskRaster mask = text_mask(label);
  ComponentSet components = connected_components(mask, Connectivity::Eight);
  if (components.count() == 0) {
    log_warn("page has no main-text pixels; emitting no lines");
    out.mask = std::move(mask);
    return out;
  }

  out.min_area_used =
      config.min_area >= 0 ? config.min_area : auto_min_area(components);
  if (out.min_area_used > 0) {
    mask = denoise(mask, out.min_area_used);
    components = connected_components(mask, Connectivity::Eight);
    if (components.count() == 0) {
      log_warn("denoising removed every component; emitting no lines");
      out.mask = std::move(mask);
      return out;
    }
  }
  out.component_count = components.count();

  GrayRaster background =
      background_energy(components, mask.rows(), mask.cols(), config.d_min);
  GrayRaster text = text_energy(background, mask);
  GrayRaster smoothed = smoothed_energy(background, text, config.smoothing);
  GrayRaster total(mask.rows(), mask.cols());
  for (int r = 0; r < mask.rows(); ++r) {
    const double* b = background.row_ptr(r);
    const double* t = text.row_ptr(r);
    const double* s = smoothed.row_ptr(r);
    double* e = total.row_ptr(r);
    for (int c = 0; c < mask.cols(); ++c) e[c] = b[c] + t[c] + s[c];
  }
  const GrayRaster normalized = normalize_unit(total);

  out.seams = merge_seams(cast_all(normalized, config.seams));
  out.bins = bin_centroids(components, out.seams, config.small_bin_threshold);
  out.polygons = extract_line_polygons(out.bins, components, mask.rows(),
                                       mask.cols(), config.polygons);
  out.mask = std::move(mask);
  return out;
}

}  // namespace scriptorium
