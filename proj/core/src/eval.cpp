#include "scriptorium/eval.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "scriptorium/errors.hpp"
#include "scriptorium/geometry.hpp"

namespace scriptorium {

namespace {

std::int64_t intersection_size(const PixelSet& a, const PixelSet& b) {
  std::int64_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

void check_polygons_in_page(std::span<const LinePolygon> polygons,
                            const MaskRaster& mask, const char* which) {
  for (const LinePolygon& poly : polygons) {
    for (const Point& v : poly.vertices) {
      if (v.row < 0.0 || v.row > mask.rows() - 1 || v.col < 0.0 ||
          v.col > mask.cols() - 1)
        throw InputError(std::string(which) + " polygon " +
                         std::to_string(poly.line_index) +
                         " falls outside the text mask's page");
    }
  }
}

}  // namespace

double iu(const PixelSet& a, const PixelSet& b) {
  if (a.empty() && b.empty()) return 1.0;
  const std::int64_t inter = intersection_size(a, b);
  const std::int64_t uni =
      static_cast<std::int64_t>(a.size() + b.size()) - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

PixelSet line_pixel_set(std::span<const Point> polygon,
                        const MaskRaster& mask) {
  PixelSet keys = rasterize_polygon(polygon, mask.rows(), mask.cols());
  PixelSet out;
  out.reserve(keys.size());
  const int cols = mask.cols();
  for (const std::int64_t key : keys) {
    const int r = static_cast<int>(key / cols);
    const int c = static_cast<int>(key % cols);
    if (mask(r, c)) out.push_back(key);
  }
  return out;
}

PageEval evaluate_page(std::span<const LinePolygon> predicted,
                       std::span<const LinePolygon> ground_truth,
                       const MaskRaster& mask, double theta) {
  if (theta <= 0.0 || theta > 1.0)
    throw InputError("match threshold theta must be in (0, 1]");
  check_polygons_in_page(predicted, mask, "predicted");
  check_polygons_in_page(ground_truth, mask, "ground-truth");

  std::vector<PixelSet> pred_sets;
  pred_sets.reserve(predicted.size());
  for (const LinePolygon& poly : predicted)
    pred_sets.push_back(line_pixel_set(poly.vertices, mask));
  std::vector<PixelSet> gt_sets;
  gt_sets.reserve(ground_truth.size());
  for (const LinePolygon& poly : ground_truth)
    gt_sets.push_back(line_pixel_set(poly.vertices, mask));

  struct Scored {
    double iu;
    int pred;
    int gt;
  };
  std::vector<Scored> candidates;
  for (std::size_t p = 0; p < pred_sets.size(); ++p) {
    for (std::size_t g = 0; g < gt_sets.size(); ++g) {
      const double score = iu(pred_sets[p], gt_sets[g]);
      if (score >= theta)
        candidates.push_back(
            {score, static_cast<int>(p), static_cast<int>(g)});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Scored& a, const Scored& b) {
              if (a.iu != b.iu) return a.iu > b.iu;
              if (a.pred != b.pred) return a.pred < b.pred;
              return a.gt < b.gt;
            });

  PageEval out;
  std::vector<char> pred_used(pred_sets.size(), 0);
  std::vector<char> gt_used(gt_sets.size(), 0);
  std::int64_t inter_sum = 0;
  std::int64_t union_sum = 0;
  for (const Scored& cand : candidates) {
    if (pred_used[cand.pred] || gt_used[cand.gt]) continue;
    pred_used[cand.pred] = 1;
    gt_used[cand.gt] = 1;
    out.matches.emplace_back(cand.pred, cand.gt);
    const std::int64_t inter =
        intersection_size(pred_sets[cand.pred], gt_sets[cand.gt]);
    inter_sum += inter;
    union_sum += static_cast<std::int64_t>(pred_sets[cand.pred].size() +
                                           gt_sets[cand.gt].size()) -
                 inter;
  }

  out.tp = static_cast<int>(out.matches.size());
  out.fp = static_cast<int>(pred_sets.size()) - out.tp;
  out.fn = static_cast<int>(gt_sets.size()) - out.tp;
  const int denom = out.tp + out.fp + out.fn;
  out.line_iu = denom == 0 ? 1.0 : static_cast<double>(out.tp) / denom;
  if (union_sum > 0)
    out.pixel_iu = static_cast<double>(inter_sum) /
                   static_cast<double>(union_sum);
  else
    out.pixel_iu = denom == 0 || out.tp == denom ? 1.0 : 0.0;
  return out;
}

CorpusEval summarize(std::vector<PageEval> pages) {
  CorpusEval corpus;
  corpus.pages = std::move(pages);
  if (corpus.pages.empty()) return corpus;
  double line_sum = 0.0, pixel_sum = 0.0;
  for (const PageEval& page : corpus.pages) {
    line_sum += page.line_iu;
    pixel_sum += page.pixel_iu;
  }
  corpus.line_iu = line_sum / corpus.pages.size();
  corpus.pixel_iu = pixel_sum / corpus.pages.size();
  return corpus;
}

std::string eval_report_json(const CorpusEval& corpus) {
  nlohmann::ordered_json j;
  j["pages"] = nlohmann::ordered_json::array();
  for (const PageEval& page : corpus.pages) {
    nlohmann::ordered_json row;
    row["page"] = page.page;
    row["tp"] = page.tp;
    row["fp"] = page.fp;
    row["fn"] = page.fn;
    row["line_iu"] = page.line_iu;
    row["pixel_iu"] = page.pixel_iu;
    j["pages"].push_back(std::move(row));
  }
  j["corpus"]["pages"] = corpus.pages.size();
  j["corpus"]["line_iu"] = corpus.line_iu;
  j["corpus"]["pixel_iu"] = corpus.pixel_iu;
  return j.dump(2) + "\n";
}

std::string eval_report_table(const CorpusEval& corpus) {
  std::string out =
      "page                                  tp  fp  fn  line_iu  pixel_iu\n";
  char buf[160];
  for (const PageEval& page : corpus.pages) {
    std::snprintf(buf, sizeof(buf), "%-36s %3d %3d %3d %8.4f %9.4f\n",
                  page.page.c_str(), page.tp, page.fp, page.fn, page.line_iu,
                  page.pixel_iu);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "corpus mean over %zu page(s): line_iu %.4f, pixel_iu %.4f\n",
                corpus.pages.size(), corpus.line_iu, corpus.pixel_iu);
  out += buf;
  return out;
}

}  // namespace scriptorium
