#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scriptorium/eval.hpp"
#include "scriptorium/ingest.hpp"
#include "scriptorium/pipeline.hpp"

namespace scriptorium {

// Pages processed in parallel; failures are collected per page and never
// abort the rest of the run.
struct BatchResult {
  int succeeded = 0;
  std::vector<std::pair<std::string, std::string>> failures;  // page, reason
};

// Number of worker threads actually used for a requested job count
// (<= 0 selects the hardware concurrency).
int resolve_jobs(int jobs);

// Sorted stems of the *.png label maps in a directory.
std::vector<std::string> list_label_pages(const std::string& labels_dir);

// Segments every label map in labels_dir and writes <stem>.xml and
// <stem>.json page documents into out_dir, plus <stem>_overlay.png when
// overlay is set.
BatchResult segment_directory(const std::string& labels_dir,
                              const std::string& out_dir,
                              const PipelineConfig& config,
                              const LabelEncoding& encoding, int jobs,
                              bool overlay = false);

// Scores predictions against ground truth, pairing files by stem: for every
// gt <stem>.xml there must be a labels_dir/<stem>.png (for the text mask);
// a missing prediction counts as an empty one. Pages appear in sorted order.
CorpusEval evaluate_directories(const std::string& pred_dir,
                                const std::string& gt_dir,
                                const std::string& labels_dir,
                                const LabelEncoding& encoding, double theta,
                                int jobs);

struct SweepCell {
  int alpha = 0;
  double beta = 0.0;
  double line_iu = 0.0;
  double pixel_iu = 0.0;
};

// Evaluates the full alpha-by-beta grid over a corpus. The energy map is
// computed once per page and the seam dynamic program once per (page, beta),
// so each extra alpha costs only extraction, binning, and scoring. Cell
// scores are unweighted page means, accumulated in page order regardless of
// scheduling. Any cell equals a standalone segment+eval run at its (alpha,
// beta).
std::vector<SweepCell> sweep_corpus(const std::string& labels_dir,
                                    const std::string& gt_dir,
                                    const std::vector<int>& alphas,
                                    const std::vector<double>& betas,
                                    const PipelineConfig& base,
                                    const LabelEncoding& encoding, int jobs);

// "alpha,beta,line_iu,pixel_iu" rows in grid order, with a header line.
std::string sweep_csv(const std::vector<SweepCell>& cells);

}  // namespace scriptorium
