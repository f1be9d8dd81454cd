#include "scriptorium/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <mutex>
#include <thread>

#include "scriptorium/errors.hpp"
#include "scriptorium/image_io.hpp"
#include "scriptorium/log.hpp"
#include "scriptorium/pageio.hpp"
#include "scriptorium/viz.hpp"

namespace fs = std::filesystem;

namespace scriptorium {

namespace {

// Runs task(i) for i in [0, count) across the requested number of threads.
void parallel_for(int count, int jobs, const std::function<void(int)>& task);

}  // namespace

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<std::string> list_label_pages(const std::string& labels_dir) {
  if (!fs::is_directory(labels_dir))
    throw InputError("not a directory: " + labels_dir);
  std::vector<std::string> stems;
  for (const auto& entry : fs::directory_iterator(labels_dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() == ".png")
      stems.push_back(entry.path().stem().string());
  }
  std::sort(stems.begin(), stems.end());
  return stems;
}

BatchResult segment_directory(const std::string& labels_dir,
                              const std::string& out_dir,
                              const PipelineConfig& config,
                              const LabelEncoding& encoding, int jobs,
                              bool overlay) {
  const std::vector<std::string> stems = list_label_pages(labels_dir);
  if (stems.empty())
    throw InputError("no .png label maps in " + labels_dir);
  fs::create_directories(out_dir);

  BatchResult result;
  std::mutex mutex;
  parallel_for(static_cast<int>(stems.size()), jobs, [&](int i) {
    const std::string& stem = stems[i];
    const std::string image_name = stem + ".png";
    try {
      const RgbImage image =
          read_rgb_image((fs::path(labels_dir) / image_name).string());
      const LabelImage label = decode_label_image(image, encoding);
      const PageSegmentation seg = segment_page(label, config);
      const PageDocument doc = page_document_from_polygons(
          seg.polygons, image_name, label.cols(), label.rows());
      write_page_xml_file(doc, (fs::path(out_dir) / (stem + ".xml")).string());
      write_page_json_file(doc,
                           (fs::path(out_dir) / (stem + ".json")).string());
      if (overlay) {
        write_png(render_overlay(label, seg),
                  (fs::path(out_dir) / (stem + "_overlay.png")).string());
      }
      std::lock_guard<std::mutex> lock(mutex);
      ++result.succeeded;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(mutex);
      result.failures.emplace_back(stem, e.what());
      log_error("page " + stem + " failed: " + e.what());
    }
  });
  return result;
}

CorpusEval evaluate_directories(const std::string& pred_dir,
                                const std::string& gt_dir,
                                const std::string& labels_dir,
                                const LabelEncoding& encoding, double theta,
                                int jobs) {
  if (!fs::is_directory(gt_dir))
    throw InputError("not a directory: " + gt_dir);
  std::vector<std::string> stems;
  for (const auto& entry : fs::directory_iterator(gt_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml")
      stems.push_back(entry.path().stem().string());
  }
  std::sort(stems.begin(), stems.end());
  if (stems.empty()) throw InputError("no .xml ground truth in " + gt_dir);

  std::vector<PageEval> pages(stems.size());
  std::vector<std::string> errors(stems.size());
  parallel_for(static_cast<int>(stems.size()), jobs, [&](int i) {
    const std::string& stem = stems[i];
    try {
      const PageDocument gt_doc =
          read_page_xml_file((fs::path(gt_dir) / (stem + ".xml")).string());
      const RgbImage image =
          read_rgb_image((fs::path(labels_dir) / (stem + ".png")).string());
      const MaskRaster mask = text_mask(decode_label_image(image, encoding));

      std::vector<LinePolygon> predicted;
      const fs::path pred_path = fs::path(pred_dir) / (stem + ".xml");
      if (fs::exists(pred_path)) {
        predicted =
            polygons_from_page_document(read_page_xml_file(pred_path.string()));
      } else {
        log_warn("no prediction for " + stem + "; scoring an empty page");
      }
      PageEval eval = evaluate_page(
          predicted, polygons_from_page_document(gt_doc), mask, theta);
      eval.page = stem;
      pages[i] = std::move(eval);
    } catch (const std::exception& e) {
      errors[i] = e.what();
      log_error("page " + stem + " failed: " + e.what());
    }
  });

  std::vector<PageEval> good;
  good.reserve(pages.size());
  for (std::size_t i = 0; i < pages.size(); ++i)
    if (errors[i].empty()) good.push_back(std::move(pages[i]));
  if (good.empty()) throw InputError("no pages could be evaluated");
  return summarize(std::move(good));
}

std::vector<SweepCell> sweep_corpus(const std::string& labels_dir,
                                    const std::string& gt_dir,
                                    const std::vector<int>& alphas,
                                    const std::vector<double>& betas,
                                    const PipelineConfig& base,
                                    const LabelEncoding& encoding, int jobs) {
  if (alphas.empty() || betas.empty())
    throw InputError("sweep needs at least one alpha and one beta");
  const std::vector<std::string> stems = list_label_pages(labels_dir);
  if (stems.empty()) throw InputError("no .png label maps in " + labels_dir);

  const std::size_t cells = alphas.size() * betas.size();
  // scores[page][cell], filled independently and reduced in page order.
  std::vector<std::vector<std::pair<double, double>>> scores(
      stems.size(), std::vector<std::pair<double, double>>(cells));
  std::vector<std::string> errors(stems.size());

  parallel_for(static_cast<int>(stems.size()), jobs, [&](int i) {
    const std::string& stem = stems[i];
    try {
      const RgbImage image =
          read_rgb_image((fs::path(labels_dir) / (stem + ".png")).string());
      const LabelImage label = decode_label_image(image, encoding);
      const std::vector<LinePolygon> gt = polygons_from_page_document(
          read_page_xml_file((fs::path(gt_dir) / (stem + ".xml")).string()));

      const MaskRaster raw_mask = text_mask(label);
      ComponentSet components =
          connected_components(raw_mask, Connectivity::Eight);
      if (components.count() == 0)
        throw InputError("page has no main-text pixels");
      const int min_area =
          base.min_area >= 0 ? base.min_area : auto_min_area(components);
      MaskRaster mask = raw_mask;
      if (min_area > 0) {
        mask = denoise(raw_mask, min_area);
        components = connected_components(mask, Connectivity::Eight);
        if (components.count() == 0)
          throw InputError("denoising removed every component");
      }

      const GrayRaster background = background_energy(
          components, mask.rows(), mask.cols(), base.d_min);
      const GrayRaster text = text_energy(background, mask);
      const GrayRaster smoothed =
          smoothed_energy(background, text, base.smoothing);
      GrayRaster total(mask.rows(), mask.cols());
      for (int r = 0; r < mask.rows(); ++r)
        for (int c = 0; c < mask.cols(); ++c)
          total(r, c) = background(r, c) + text(r, c) + smoothed(r, c);
      const GrayRaster normalized = normalize_unit(total);

      for (std::size_t bi = 0; bi < betas.size(); ++bi) {
        const SeamField ltr(normalized, betas[bi],
                            SeamDirection::LeftToRight);
        const SeamField rtl(normalized, betas[bi],
                            SeamDirection::RightToLeft);
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
          // Same seam set and order cast_all would produce at this alpha.
          std::vector<Seam> seams;
          for (int start = 0; start < mask.rows(); start += alphas[ai])
            seams.push_back(ltr.cast(start));
          for (int start = 0; start < mask.rows(); start += alphas[ai])
            seams.push_back(rtl.cast(start));
          const std::vector<Seam> merged = merge_seams(std::move(seams));
          const std::vector<LineBin> bins =
              bin_centroids(components, merged, base.small_bin_threshold);
          const std::vector<LinePolygon> polygons = extract_line_polygons(
              bins, components, mask.rows(), mask.cols(), base.polygons);
          const PageEval eval =
              evaluate_page(polygons, gt, raw_mask, base.theta);
          scores[i][ai * betas.size() + bi] = {eval.line_iu, eval.pixel_iu};
        }
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
      log_error("page " + stem + " failed: " + e.what());
    }
  });

  int good_pages = 0;
  std::vector<SweepCell> out(cells);
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      out[ai * betas.size() + bi].alpha = alphas[ai];
      out[ai * betas.size() + bi].beta = betas[bi];
    }
  }
  for (std::size_t i = 0; i < stems.size(); ++i) {
    if (!errors[i].empty()) continue;
    ++good_pages;
    for (std::size_t cell = 0; cell < cells; ++cell) {
      out[cell].line_iu += scores[i][cell].first;
      out[cell].pixel_iu += scores[i][cell].second;
    }
  }
  if (good_pages == 0) throw InputError("no pages could be swept");
  for (SweepCell& cell : out) {
    cell.line_iu /= good_pages;
    cell.pixel_iu /= good_pages;
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::string out = "alpha,beta,line_iu,pixel_iu\n";
  char buf[96];
  for (const SweepCell& cell : cells) {
    std::snprintf(buf, sizeof(buf), "%d,%g,%.6f,%.6f\n", cell.alpha, cell.beta,
                  cell.line_iu, cell.pixel_iu);
    out += buf;
  }
  return out;
}

namespace {

void parallel_for(int count, int jobs, const std::function<void(int)>& task) {
  const int workers = std::min(resolve_jobs(jobs), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        task(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

}  // namespace scriptorium
