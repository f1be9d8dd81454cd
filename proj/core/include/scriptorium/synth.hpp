#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scriptorium/ingest.hpp"
#include "scriptorium/polygons.hpp"
#include "scriptorium/raster.hpp"

namespace scriptorium {

// Parameters for one synthetic page. Pages are horizontal bands of main-text
// letter blobs separated by wide gaps, with optional comment-class glosses in
// the gaps and decoration-class marks in the margins.
//
// Band placement keeps every band (plus clearance) strictly between
// consecutive multiples of 60 or 90, and every gap wider than 180 rows. Seams
// cast at any of the usual spacings (60, 90, 120, 180) therefore start in the
// gaps, never inside a line, and every pair of adjacent lines has a seam
// between them. rows = 0 sizes the page to fit the layout (at least
// min_rows).
struct SynthSpec {
  std::uint64_t seed = 1;
  int rows = 0;
  int min_rows = 1400;
  int cols = 1000;
  int line_count = 8;
  int line_height = 36;
  int line_gap = 210;                  // base gap; placement may widen it
  int letter_min = 7, letter_max = 13; // letter width in pixels
  int word_min = 3, word_max = 7;      // letters per word
  double gloss_probability = 0.9;      // per inter-line gap
  double decoration_probability = 0.3; // per margin side
  double spur_probability = 0.25;      // ascender/descender per word
  int skew = 2;                        // max +- row drift of a band edge
};

// A band's nominal placement; its top edge at column c is
// top + round(tilt * (c / (cols-1) - 0.5)).
struct LineBand {
  int top = 0;
  int height = 0;
  int tilt = 0;
};

// Generated page with its built-in ground truth: tight line polygons (same
// dilate-and-trace construction the segmenter uses) and a per-pixel map from
// main-text pixels to their line index (-1 elsewhere).
struct SynthPage {
  LabelImage label;
  std::vector<LinePolygon> gt_polygons;
  Raster<std::int16_t> line_of;
  std::vector<LineBand> bands;
  int rows = 0;
  int cols = 0;
};

SynthPage generate_page(const SynthSpec& spec);

// Corpus-level parameters: per-page line counts, band heights, and gaps are
// sampled from these ranges with a per-page seed derived from `seed`.
struct CorpusSpec {
  std::uint64_t seed = 1;
  int pages = 50;
  int cols = 1000;
  int min_rows = 1400;
  int lines_min = 3, lines_max = 12;
  int height_min = 28, height_max = 42;
  int gap_min = 184, gap_max = 240;
  double gloss_probability = 0.9;
  double decoration_probability = 0.3;
  double spur_probability = 0.25;
  int skew = 2;

  // Parses the documented key=value format; unknown keys fail.
  static CorpusSpec from_file(const std::string& path);
};

// The fully resolved per-page spec for page `index` of the corpus.
SynthSpec page_spec(const CorpusSpec& corpus, int index);

// Writes <out_dir>/labels/page_NNN.png plus ground truth
// <out_dir>/gt/page_NNN.xml and .json for every page of the corpus.
void generate_corpus(const CorpusSpec& corpus, const std::string& out_dir);

}  // namespace scriptorium
