#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scriptorium/batch.hpp"
#include "scriptorium/errors.hpp"
#include "scriptorium/eval.hpp"
#include "scriptorium/image_io.hpp"
#include "scriptorium/ingest.hpp"
#include "scriptorium/pageio.hpp"
#include "scriptorium/pipeline.hpp"
#include "scriptorium/synth.hpp"
#include "scriptorium/viz.hpp"

namespace {

using namespace scriptorium;

struct PipelineOptions {
  PipelineConfig config;
  std::string encoding_path;
};

LabelEncoding load_encoding(const std::string& path) {
  return path.empty() ? LabelEncoding::diva() : LabelEncoding::from_file(path);
}

void add_pipeline_flags(CLI::App* cmd, PipelineOptions& opt,
                        bool with_seam_params = true) {
  if (with_seam_params) {
    cmd->add_option("--alpha", opt.config.seams.alpha,
                    "Seam start-row spacing in pixels")
        ->capture_default_str();
    cmd->add_option("--beta", opt.config.seams.beta, "Seam deviation penalty")
        ->capture_default_str();
  }
  cmd->add_option("--min-area", opt.config.min_area,
                  "Denoise area threshold; -1 selects 5% of the median "
                  "component area")
      ->capture_default_str();
  cmd->add_option("--bin-threshold", opt.config.small_bin_threshold,
                  "Bins this size or smaller dissolve into their neighbours")
      ->capture_default_str();
  cmd->add_option("--global-kernel", opt.config.smoothing.global_kernel,
                  "Plus-filter arm length; 0 selects min(page rows, 4096)")
      ->capture_default_str();
  cmd->add_option("--local-kernel", opt.config.smoothing.local_kernel,
                  "Box blur kernel side")
      ->capture_default_str();
  cmd->add_option("--stroke", opt.config.polygons.stroke,
                  "Line-tree edge thickness in pixels")
      ->capture_default_str();
  cmd->add_option("--simplify", opt.config.polygons.simplify_tolerance,
                  "Polygon simplification tolerance in pixels; 0 keeps every "
                  "contour vertex")
      ->capture_default_str();
  cmd->add_option("--d-min", opt.config.d_min,
                  "Distance floor for the background energy")
      ->capture_default_str();
  cmd->add_option("--encoding", opt.encoding_path,
                  "Label encoding descriptor file (default: DIVA-HisDB bits)");
}

struct SegmentArgs {
  PipelineOptions pipeline;
  std::string labels_dir;
  std::string out_dir;
  int jobs = 0;
  bool overlay = false;
};

int run_segment(const SegmentArgs& args) {
  const LabelEncoding encoding = load_encoding(args.pipeline.encoding_path);
  const BatchResult result =
      segment_directory(args.labels_dir, args.out_dir, args.pipeline.config,
                        encoding, args.jobs, args.overlay);
  std::printf("segmented %d page(s) into %s\n", result.succeeded,
              args.out_dir.c_str());
  if (!result.failures.empty()) {
    std::fprintf(stderr, "%zu page(s) failed:\n", result.failures.size());
    for (const auto& [page, reason] : result.failures)
      std::fprintf(stderr, "  %s: %s\n", page.c_str(), reason.c_str());
    return 1;
  }
  return 0;
}

struct EvalArgs {
  std::string pred_dir;
  std::string gt_dir;
  std::string labels_dir;
  std::string encoding_path;
  std::string json_path;
  double theta = 0.75;
  int jobs = 0;
};

int run_eval(const EvalArgs& args) {
  const LabelEncoding encoding = load_encoding(args.encoding_path);
  const CorpusEval corpus =
      evaluate_directories(args.pred_dir, args.gt_dir, args.labels_dir,
                           encoding, args.theta, args.jobs);
  std::fputs(eval_report_table(corpus).c_str(), stdout);
  if (!args.json_path.empty())
    write_text_file(args.json_path, eval_report_json(corpus));
  return 0;
}

struct VizArgs {
  PipelineOptions pipeline;
  std::string page_path;
  std::string out_path;
  std::string energy_prefix;
};

int run_viz(const VizArgs& args) {
  const LabelEncoding encoding = load_encoding(args.pipeline.encoding_path);
  const LabelImage label =
      decode_label_image(read_rgb_image(args.page_path), encoding);
  const PageSegmentation seg = segment_page(label, args.pipeline.config);
  write_png(render_overlay(label, seg), args.out_path);
  std::printf("wrote %s (%zu line(s), %zu seam(s))\n", args.out_path.c_str(),
              seg.polygons.size(), seg.seams.size());
  if (!args.energy_prefix.empty()) {
    const EnergyMap map = total_energy(seg.mask, args.pipeline.config.smoothing,
                                       args.pipeline.config.d_min);
    write_energy_dumps(map, args.energy_prefix);
    std::printf("wrote %s_{background,text,smoothed,total}.png\n",
                args.energy_prefix.c_str());
  }
  return 0;
}

struct SweepArgs {
  PipelineOptions pipeline;
  std::string labels_dir;
  std::string gt_dir;
  std::string csv_path;
  std::vector<int> alphas{60, 90, 120, 180};
  std::vector<double> betas{1.0, 3.0, 10.0};
  int jobs = 0;
};

int run_sweep(const SweepArgs& args) {
  const LabelEncoding encoding = load_encoding(args.pipeline.encoding_path);
  const std::vector<SweepCell> cells =
      sweep_corpus(args.labels_dir, args.gt_dir, args.alphas, args.betas,
                   args.pipeline.config, encoding, args.jobs);
  const std::string csv = sweep_csv(cells);
  if (args.csv_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_text_file(args.csv_path, csv);
    std::printf("wrote %s\n", args.csv_path.c_str());
  }
  const auto [worst, best] = std::minmax_element(
      cells.begin(), cells.end(),
      [](const SweepCell& a, const SweepCell& b) { return a.line_iu < b.line_iu; });
  std::printf("line IU over %zu cell(s): best %.4f at alpha=%d beta=%g, "
              "worst %.4f at alpha=%d beta=%g\n",
              cells.size(), best->line_iu, best->alpha, best->beta,
              worst->line_iu, worst->alpha, worst->beta);
  return 0;
}

struct SynthArgs {
  std::string out_dir;
  std::string spec_path;
  std::uint64_t seed = 0;
  int pages = 0;
};

int run_synth(const SynthArgs& args, bool seed_set, bool pages_set) {
  CorpusSpec spec = args.spec_path.empty() ? CorpusSpec{}
                                           : CorpusSpec::from_file(args.spec_path);
  if (seed_set) spec.seed = args.seed;
  if (pages_set) spec.pages = args.pages;
  generate_corpus(spec, args.out_dir);
  std::printf("wrote %d page(s) under %s (labels/ + gt/)\n", spec.pages,
              args.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scriptorium: text line segmentation for pixel-labelled "
               "document images"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");
  app.get_formatter()->column_width(30);

  SegmentArgs segment_args;
  CLI::App* segment_cmd = app.add_subcommand(
      "segment", "Segment every label map in a directory into line polygons");
  segment_cmd->add_option("--labels", segment_args.labels_dir,
                          "Directory of *.png label maps")
      ->required();
  segment_cmd->add_option("--out", segment_args.out_dir,
                          "Output directory for <page>.xml / <page>.json")
      ->required();
  add_pipeline_flags(segment_cmd, segment_args.pipeline);
  segment_cmd->add_option("--jobs", segment_args.jobs,
                          "Worker threads; 0 uses all cores")
      ->capture_default_str();
  segment_cmd->add_flag("--overlay", segment_args.overlay,
                        "Also write <page>_overlay.png debug images");

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "Score predicted line polygons against ground truth");
  eval_cmd->add_option("--pred", eval_args.pred_dir,
                       "Directory of predicted page XML files")
      ->required();
  eval_cmd->add_option("--gt", eval_args.gt_dir,
                       "Directory of ground-truth page XML files")
      ->required();
  eval_cmd->add_option("--labels", eval_args.labels_dir,
                       "Directory of the matching *.png label maps")
      ->required();
  eval_cmd->add_option("--theta", eval_args.theta,
                       "Minimum IU for a predicted/true line match")
      ->capture_default_str();
  eval_cmd->add_option("--encoding", eval_args.encoding_path,
                       "Label encoding descriptor file");
  eval_cmd->add_option("--json", eval_args.json_path,
                       "Also write the full report as JSON");
  eval_cmd->add_option("--jobs", eval_args.jobs,
                       "Worker threads; 0 uses all cores")
      ->capture_default_str();

  VizArgs viz_args;
  CLI::App* viz_cmd = app.add_subcommand(
      "viz", "Render one page's seams and polygons as an overlay PNG");
  viz_cmd->add_option("--page", viz_args.page_path, "Label map PNG")
      ->required();
  viz_cmd->add_option("--out", viz_args.out_path, "Overlay PNG path")
      ->required();
  viz_cmd->add_option("--energy", viz_args.energy_prefix,
                      "Also dump the energy stages as 16-bit PNGs under this "
                      "path prefix");
  add_pipeline_flags(viz_cmd, viz_args.pipeline);

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Evaluate an alpha-by-beta parameter grid over a corpus");
  sweep_cmd->add_option("--labels", sweep_args.labels_dir,
                        "Directory of *.png label maps")
      ->required();
  sweep_cmd->add_option("--gt", sweep_args.gt_dir,
                        "Directory of ground-truth page XML files")
      ->required();
  sweep_cmd->add_option("--out", sweep_args.csv_path,
                        "CSV output path (default: stdout)");
  sweep_cmd->add_option("--alpha", sweep_args.alphas,
                        "Comma-separated seam spacings")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--beta", sweep_args.betas,
                        "Comma-separated deviation penalties")
      ->delimiter(',')
      ->capture_default_str();
  add_pipeline_flags(sweep_cmd, sweep_args.pipeline,
                     /*with_seam_params=*/false);
  sweep_cmd->add_option("--jobs", sweep_args.jobs,
                        "Worker threads; 0 uses all cores")
      ->capture_default_str();

  SynthArgs synth_args;
  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "Generate a synthetic labelled corpus with ground truth");
  synth_cmd->add_option("--out", synth_args.out_dir, "Output directory")
      ->required();
  synth_cmd->add_option("--spec", synth_args.spec_path,
                        "Corpus spec file (key=value; all keys optional)");
  CLI::Option* seed_opt =
      synth_cmd->add_option("--seed", synth_args.seed, "Override the spec seed");
  CLI::Option* pages_opt = synth_cmd->add_option(
      "--pages", synth_args.pages, "Override the spec page count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*segment_cmd) return run_segment(segment_args);
    if (*eval_cmd) return run_eval(eval_args);
    if (*viz_cmd) return run_viz(viz_args);
    if (*sweep_cmd) return run_sweep(sweep_args);
    if (*synth_cmd)
      return run_synth(synth_args, seed_opt->count() > 0,
                       pages_opt->count() > 0);
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  return 0;
}
