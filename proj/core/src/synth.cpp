#include "scriptorium/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "scriptorium/components.hpp"
#include "scriptorium/errors.hpp"
#include "scriptorium/image_io.hpp"
#include "scriptorium/log.hpp"
#include "scriptorium/pageio.hpp"

namespace scriptorium {

namespace {

// Sampling goes through engine() directly so that outputs are bit-identical
// across standard library implementations.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }
  double unit() { return (engine() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr int kTextMarginCols = 40;
constexpr int kPageMargin = 60;

int band_top_at(const LineBand& band, int col, int cols) {
  const double t = cols > 1 ? static_cast<double>(col) / (cols - 1) : 0.5;
  return band.top + static_cast<int>(std::lround(band.tilt * (t - 0.5)));
}

struct LineBounds {
  int r0, r1, c0, c1;
};

struct Painter {
  Raster<std::uint8_t>& classes;
  Raster<std::int16_t>& line_of;
  std::vector<LineBounds>& bounds;

  void paint(int r, int c, std::uint8_t cls, int line) {
    if (r < 0 || r >= classes.rows() || c < 0 || c >= classes.cols()) return;
    classes(r, c) = cls;
    if (line >= 0) {
      line_of(r, c) = static_cast<std::int16_t>(line);
      LineBounds& b = bounds[line];
      b.r0 = std::min(b.r0, r);
      b.r1 = std::max(b.r1, r);
      b.c0 = std::min(b.c0, c);
      b.c1 = std::max(b.c1, c);
    }
  }

  void rect(int r0, int c0, int h, int w, std::uint8_t cls, int line) {
    for (int r = r0; r < r0 + h; ++r)
      for (int c = c0; c < c0 + w; ++c) paint(r, c, cls, line);
  }

  void ellipse(int r0, int c0, int h, int w, std::uint8_t cls, int line) {
    const double cr = r0 + (h - 1) / 2.0, cc = c0 + (w - 1) / 2.0;
    const double ar = h / 2.0, ac = w / 2.0;
    for (int r = r0; r < r0 + h; ++r) {
      for (int c = c0; c < c0 + w; ++c) {
        const double dr = (r - cr) / ar, dc = (c - cc) / ac;
        if (dr * dr + dc * dc <= 1.0) paint(r, c, cls, line);
      }
    }
  }
};

// Rows where a seam cast at spacing 60, 90, 120, or 180 would start. Bands
// are placed to keep clear of all of them.
constexpr int kSeamRowClearance = 4;

int next_seam_start_row(int r) {
  const int a = ((r + 59) / 60) * 60;
  const int b = ((r + 89) / 90) * 90;
  return std::min(a, b);
}

// Smallest top >= desired such that the band envelope (tilt and rounding
// included) plus clearance contains no seam start row.
int snap_band_top(int desired, int height, int skew) {
  const int drift = skew / 2 + 1;
  int top = desired;
  for (;;) {
    const int lo = top - drift - kSeamRowClearance;
    const int hi = top + height - 1 + drift + kSeamRowClearance;
    const int blocker = next_seam_start_row(lo);
    if (blocker > hi) return top;
    top = blocker + 1 + drift + kSeamRowClearance;
  }
}

void validate(const SynthSpec& spec) {
  const auto bad = [](const std::string& why) {
    throw InputError("synth spec: " + why);
  };
  if (spec.cols < 200) bad("page must be at least 200 columns wide");
  if (spec.line_count < 1) bad("line count must be >= 1");
  if (spec.line_height < 12) bad("line height must be >= 12");
  // Band plus tilt, rounding, and clearance has to fit inside one of the
  // 60-row windows between consecutive seam start rows.
  if (spec.line_height + spec.skew + 2 * kSeamRowClearance + 4 > 58)
    bad("line height plus skew too tall to dodge seam start rows");
  if (spec.line_gap < 184)
    bad("line gap must be >= 184 so every gap contains a seam start row");
  if (spec.letter_min < 4 || spec.letter_max < spec.letter_min)
    bad("bad letter width range");
  if (spec.word_min < 1 || spec.word_max < spec.word_min)
    bad("bad word-length range");
  for (const double p : {spec.gloss_probability, spec.decoration_probability,
                         spec.spur_probability})
    if (p < 0.0 || p > 1.0) bad("probabilities must be in [0, 1]");
  if (spec.skew < 0 || spec.skew > 6) bad("skew must be in [0, 6]");
}

// Tight outline of one line's pixels using the segmenter's construction:
// connected components, centroid MST, stroked edges, 5x5 dilation, trace.
LinePolygon gt_polygon_for_line(const Raster<std::int16_t>& line_of, int line,
                                const LineBounds& b, int rows, int cols) {
  const int r0 = b.r0, r1 = b.r1, c0 = b.c0, c1 = b.c1;
  if (r1 < 0) throw InvariantError("synthetic line has no pixels");

  // Work on a padded window so the dilation halo never clips except at true
  // page borders.
  constexpr int kPad = 16;
  const int wr0 = std::max(r0 - kPad, 0), wr1 = std::min(r1 + kPad, rows - 1);
  const int wc0 = std::max(c0 - kPad, 0), wc1 = std::min(c1 + kPad, cols - 1);
  MaskRaster local(wr1 - wr0 + 1, wc1 - wc0 + 1);
  for (int r = wr0; r <= wr1; ++r)
    for (int c = wc0; c <= wc1; ++c)
      if (line_of(r, c) == line) local(r - wr0, c - wc0) = 1;

  const ComponentSet components =
      connected_components(local, Connectivity::Eight);
  LineBin bin;
  bin.key = 0;
  for (int i = 0; i < components.count(); ++i) {
    bin.members.push_back(i);
    bin.centroids.push_back(components.items[i].centroid);
  }
  const std::vector<LineBin> bins{bin};
  std::vector<LinePolygon> polys = extract_line_polygons(
      bins, components, local.rows(), local.cols(), PolygonParams{});
  LinePolygon poly = std::move(polys.front());
  poly.line_index = line;
  poly.members.clear();
  for (Point& v : poly.vertices) {
    v.row += wr0;
    v.col += wc0;
  }
  return poly;
}

}  // namespace

SynthPage generate_page(const SynthSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);

  // Place the bands first: base gaps are sampled, then each top is snapped
  // down-page until the band dodges every seam start row.
  std::vector<LineBand> bands;
  int cursor_row = kPageMargin + rng.range(0, 40);
  for (int i = 0; i < spec.line_count; ++i) {
    LineBand band;
    band.top = snap_band_top(cursor_row, spec.line_height, spec.skew);
    band.height = spec.line_height;
    band.tilt = spec.skew > 0 ? rng.range(-spec.skew, spec.skew) : 0;
    bands.push_back(band);
    cursor_row = band.top + band.height + spec.line_gap + rng.range(0, 12);
  }

  const int spur_len_max = 16;
  const int body_end = bands.back().top + spec.line_height + spur_len_max;
  int rows = spec.rows;
  if (rows == 0) rows = std::max(spec.min_rows, body_end + kPageMargin);
  const int cols = spec.cols;
  if (body_end + 2 > rows)
    throw InputError("synth spec: lines do not fit the page");

  SynthPage page;
  page.rows = rows;
  page.cols = cols;
  page.bands = std::move(bands);
  page.label = LabelImage(rows, cols);
  for (auto& v : page.label.classes.data()) v = kBackground;
  page.line_of = Raster<std::int16_t>(rows, cols, -1);
  std::vector<LineBounds> bounds(spec.line_count,
                                 LineBounds{rows, -1, cols, -1});
  Painter painter{page.label.classes, page.line_of, bounds};

  const int text_c0 = kTextMarginCols;
  const int text_c1 = cols - kTextMarginCols - 1;

  // Each line is a dense run of letter blobs: near-band-height so the band is
  // expensive for a seam to cross, separated by 2-3 columns so every letter
  // is its own component.
  for (int i = 0; i < spec.line_count; ++i) {
    const LineBand& band = page.bands[i];
    int cursor = text_c0 + rng.range(0, 10);
    while (cursor + spec.letter_max <= text_c1) {
      const int letters = rng.range(spec.word_min, spec.word_max);
      const bool spurred = rng.chance(spec.spur_probability);
      const int spur_letter = spurred ? rng.range(0, letters - 1) : -1;
      const bool spur_up = rng.chance(0.5);

      for (int b = 0; b < letters; ++b) {
        const int bw = rng.range(spec.letter_min, spec.letter_max);
        const int bh = spec.line_height - rng.range(0, 6);
        if (cursor + bw > text_c1) break;
        const int top_here = band_top_at(band, cursor, cols);
        const int br = top_here + rng.range(0, spec.line_height - bh);
        if (rng.chance(0.5))
          painter.rect(br, cursor, bh, bw, kMainText, i);
        else
          painter.ellipse(br, cursor, bh, bw, kMainText, i);

        if (b == spur_letter) {
          const int len = rng.range(8, spur_len_max);
          const int sw = 3;
          const int sc = cursor + rng.range(0, std::max(bw - sw, 0));
          const int mid = br + bh / 2;
          if (spur_up) {
            const int sr = std::max(top_here - len, 2);
            painter.rect(sr, sc, mid - sr, sw, kMainText, i);
          } else {
            const int end = std::min(top_here + spec.line_height - 1 + len,
                                     rows - 3);
            painter.rect(mid, sc, end - mid + 1, sw, kMainText, i);
          }
        }
        cursor += bw + rng.range(2, 3);
      }
      cursor += rng.range(6, 10);
    }
  }

  // Interlinear glosses: comment-class blobs centered in the gaps, clear of
  // every band and spur.
  for (int g = 0; g + 1 < spec.line_count; ++g) {
    if (!rng.chance(spec.gloss_probability)) continue;
    const int count = rng.range(1, 3);
    for (int k = 0; k < count; ++k) {
      const int gw = rng.range(5, 10);
      const int gh = rng.range(5, 8);
      const int gc = rng.range(text_c0, text_c1 - gw);
      const int bottom_i = band_top_at(page.bands[g], gc, cols) +
                           spec.line_height;
      const int top_next = band_top_at(page.bands[g + 1], gc, cols);
      const int center = (bottom_i + top_next) / 2 + rng.range(-2, 2);
      painter.rect(center - gh / 2, gc, gh, gw, kComment, -1);
    }
  }

  // Margin decorations.
  for (const bool left : {true, false}) {
    if (!rng.chance(spec.decoration_probability)) continue;
    const int dw = rng.range(8, std::max(8, kTextMarginCols - 14));
    const int dh = rng.range(10, 24);
    const int dc = left ? rng.range(4, kTextMarginCols - 10 - dw)
                        : cols - rng.range(4, kTextMarginCols - 10 - dw) - dw;
    const int dr = rng.range(kPageMargin, std::max(kPageMargin, rows - dh - kPageMargin));
    painter.ellipse(dr, dc, dh, dw, kDecoration, -1);
  }

  for (int i = 0; i < spec.line_count; ++i)
    page.gt_polygons.push_back(
        gt_polygon_for_line(page.line_of, i, bounds[i], rows, cols));
  return page;
}

SynthSpec page_spec(const CorpusSpec& corpus, int index) {
  SynthSpec spec;
  Rng rng(mix_seed(corpus.seed, static_cast<std::uint64_t>(index)));
  spec.seed = rng.engine();
  spec.rows = 0;
  spec.min_rows = corpus.min_rows;
  spec.cols = corpus.cols;
  spec.line_count = rng.range(corpus.lines_min, corpus.lines_max);
  spec.line_height = rng.range(corpus.height_min, corpus.height_max);
  spec.line_gap = rng.range(corpus.gap_min, corpus.gap_max);
  spec.gloss_probability = corpus.gloss_probability;
  spec.decoration_probability = corpus.decoration_probability;
  spec.spur_probability = corpus.spur_probability;
  spec.skew = corpus.skew;
  return spec;
}

namespace {

std::string trim_copy(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

}  // namespace

CorpusSpec CorpusSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("could not open corpus spec: " + path);

  CorpusSpec spec;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim_copy(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("corpus spec: expected key=value, got: " + line);
    const std::string key = trim_copy(line.substr(0, eq));
    const std::string value = trim_copy(line.substr(eq + 1));
    try {
      if (key == "seed")
        spec.seed = std::stoull(value);
      else if (key == "pages")
        spec.pages = std::stoi(value);
      else if (key == "cols")
        spec.cols = std::stoi(value);
      else if (key == "min_rows")
        spec.min_rows = std::stoi(value);
      else if (key == "lines_min")
        spec.lines_min = std::stoi(value);
      else if (key == "lines_max")
        spec.lines_max = std::stoi(value);
      else if (key == "height_min")
        spec.height_min = std::stoi(value);
      else if (key == "height_max")
        spec.height_max = std::stoi(value);
      else if (key == "gap_min")
        spec.gap_min = std::stoi(value);
      else if (key == "gap_max")
        spec.gap_max = std::stoi(value);
      else if (key == "gloss_probability")
        spec.gloss_probability = std::stod(value);
      else if (key == "decoration_probability")
        spec.decoration_probability = std::stod(value);
      else if (key == "spur_probability")
        spec.spur_probability = std::stod(value);
      else if (key == "skew")
        spec.skew = std::stoi(value);
      else
        throw InputError("corpus spec: unknown key '" + key + "'");
    } catch (const InputError&) {
      throw;
    } catch (const std::exception&) {
      throw InputError("corpus spec: bad value for '" + key + "'");
    }
  }
  if (spec.pages < 1) throw InputError("corpus spec: pages must be >= 1");
  if (spec.lines_min < 1 || spec.lines_max < spec.lines_min)
    throw InputError("corpus spec: bad line count range");
  return spec;
}

void generate_corpus(const CorpusSpec& corpus, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path labels = fs::path(out_dir) / "labels";
  const fs::path gt = fs::path(out_dir) / "gt";
  fs::create_directories(labels);
  fs::create_directories(gt);

  for (int i = 0; i < corpus.pages; ++i) {
    const SynthPage page = generate_page(page_spec(corpus, i));

    char name[32];
    std::snprintf(name, sizeof(name), "page_%03d", i);
    const std::string image_name = std::string(name) + ".png";

    const RgbImage encoded =
        encode_label_image(page.label, LabelEncoding::diva());
    write_png(encoded, (labels / image_name).string());

    const PageDocument doc = page_document_from_polygons(
        page.gt_polygons, image_name, page.cols, page.rows);
    write_page_xml_file(doc, (gt / (std::string(name) + ".xml")).string());
    write_page_json_file(doc, (gt / (std::string(name) + ".json")).string());
    log_info("generated " + image_name);
  }
}

}  // namespace scriptorium
