#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "scriptorium/errors.hpp"
#include "scriptorium/eval.hpp"
#include "scriptorium/pageio.hpp"
#include "test_util.hpp"

using namespace scriptorium;
using oracle::TestRng;

namespace {

PageDocument sample_document() {
  PageDocument doc;
  doc.image_filename = "page_007.png";
  doc.image_width = 640;
  doc.image_height = 480;
  doc.lines.push_back(PageLine{"line_0", {{10, 12}, {10, 600}, {40, 600}, {40, 12}}});
  doc.lines.push_back(PageLine{"line_1", {{80, 5}, {92, 320}, {120, 7}}});
  return doc;
}

void check_equal(const PageDocument& a, const PageDocument& b) {
  CHECK(a.image_filename == b.image_filename);
  CHECK(a.image_width == b.image_width);
  CHECK(a.image_height == b.image_height);
  REQUIRE(a.lines.size() == b.lines.size());
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    CHECK(a.lines[i].id == b.lines[i].id);
    REQUIRE(a.lines[i].vertices.size() == b.lines[i].vertices.size());
    for (std::size_t v = 0; v < a.lines[i].vertices.size(); ++v) {
      CHECK(a.lines[i].vertices[v].row == b.lines[i].vertices[v].row);
      CHECK(a.lines[i].vertices[v].col == b.lines[i].vertices[v].col);
    }
  }
}

// Closed rectangle over the inclusive pixel range [r0, r1] x [c0, c1].
std::vector<Point> rect(double r0, double c0, double r1, double c1) {
  return {{r0, c0}, {r0, c1}, {r1, c1}, {r1, c0}};
}

LinePolygon poly(int index, std::vector<Point> vertices) {
  LinePolygon p;
  p.line_index = index;
  p.vertices = std::move(vertices);
  return p;
}

}  // namespace

TEST_CASE("page xml writing is deterministic and structurally sound") {
  const PageDocument doc = sample_document();
  const std::string xml = write_page_xml(doc);
  CHECK(xml == write_page_xml(doc));
  oracle::check_page_xml_structure(xml);  // throws on violation
}

TEST_CASE("page xml round-trips through the parser") {
  const PageDocument doc = sample_document();
  check_equal(parse_page_xml(write_page_xml(doc)), doc);
}

TEST_CASE("page json round-trips and matches the xml form") {
  const PageDocument doc = sample_document();
  check_equal(parse_page_json(write_page_json(doc)), doc);
  check_equal(parse_page_json(write_page_json(doc)),
              parse_page_xml(write_page_xml(doc)));
}

TEST_CASE("the parser accepts other PAGE namespace versions") {
  const std::string xml =
      "<?xml version=\"1.0\"?>\n"
      "<PcGts xmlns=\"http://schema.primaresearch.org/PAGE/gts/pagecontent/"
      "2019-07-15\">\n"
      " <Page imageFilename=\"x.png\" imageWidth=\"20\" imageHeight=\"10\">\n"
      "  <TextRegion id=\"r0\">\n"
      "   <Coords points=\"0,0 19,0 19,9 0,9\"/>\n"
      "   <TextLine id=\"l0\"><Coords points=\"0,0 10,0 5,5\"/></TextLine>\n"
      "  </TextRegion>\n"
      " </Page>\n"
      "</PcGts>\n";
  const PageDocument doc = parse_page_xml(xml);
  CHECK(doc.image_filename == "x.png");
  CHECK(doc.image_width == 20);
  CHECK(doc.image_height == 10);
  REQUIRE(doc.lines.size() == 1);
  CHECK(doc.lines[0].id == "l0");
  REQUIRE(doc.lines[0].vertices.size() == 3);
  // Coords points are "x,y" pairs: x is the column, y the row.
  CHECK(doc.lines[0].vertices[0].row == 0);
  CHECK(doc.lines[0].vertices[0].col == 0);
  CHECK(doc.lines[0].vertices[1].row == 0);
  CHECK(doc.lines[0].vertices[1].col == 10);
  CHECK(doc.lines[0].vertices[2].row == 5);
  CHECK(doc.lines[0].vertices[2].col == 5);
}

TEST_CASE("a text line without coordinates is rejected by name") {
  const std::string xml =
      "<PcGts><Page imageFilename=\"x\" imageWidth=\"5\" imageHeight=\"5\">"
      "<TextRegion id=\"r\"><Coords points=\"0,0 1,0 1,1\"/>"
      "<TextLine id=\"broken_line\"/></TextRegion></Page></PcGts>";
  try {
    parse_page_xml(xml);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("broken_line") != std::string::npos);
  }
}

TEST_CASE("documents built from polygons round and clamp vertices") {
  std::vector<LinePolygon> polygons;
  polygons.push_back(poly(0, {{-0.6, 3.4}, {2.0, 12.3}, {9.7, 5.0}}));
  const PageDocument doc =
      page_document_from_polygons(polygons, "img.png", 10, 10);
  REQUIRE(doc.lines.size() == 1);
  CHECK(doc.lines[0].id == "line_0");
  const std::vector<Pixel>& v = doc.lines[0].vertices;
  REQUIRE(v.size() == 3);
  CHECK(v[0].row == 0);   // -0.6 rounds to -1, clamps to 0
  CHECK(v[0].col == 3);
  CHECK(v[1].row == 2);
  CHECK(v[1].col == 9);   // 12.3 clamps to the last column
  CHECK(v[2].row == 9);   // 9.7 rounds to 10, clamps to 9
  CHECK(v[2].col == 5);

  const std::vector<LinePolygon> back = polygons_from_page_document(doc);
  REQUIRE(back.size() == 1);
  CHECK(back[0].line_index == 0);
  CHECK(back[0].members.empty());
  CHECK(back[0].vertices[1].row == 2.0);
  CHECK(back[0].vertices[1].col == 9.0);
}

TEST_CASE("intersection-over-union on frozen sets") {
  const PixelSet a = {1, 2, 3, 4, 5, 6};
  const PixelSet b = {5, 6, 7, 8};
  CHECK(iu(a, b) == 0.25);  // 2 shared out of 8 total
  CHECK(iu(b, a) == 0.25);
  CHECK(iu(a, a) == 1.0);
  CHECK(iu({}, {}) == 1.0);
  CHECK(iu(a, {7, 8, 9}) == 0.0);
}

TEST_CASE("line pixel sets keep only text pixels inside the polygon") {
  MaskRaster mask(8, 8, 0);
  mask(2, 2) = 1;
  mask(2, 5) = 1;
  mask(6, 2) = 1;  // text, but outside the polygon below
  const PixelSet set = line_pixel_set(rect(1, 1, 4, 6), mask);
  CHECK(set == PixelSet{2 * 8 + 2, 2 * 8 + 5});
}

namespace {

struct SplitFixture {
  MaskRaster mask{30, 40, 0};
  std::vector<LinePolygon> gt;
  std::vector<LinePolygon> pred;

  SplitFixture() {
    for (const int top : {2, 12, 22})
      for (int r = top; r < top + 5; ++r)
        for (int c = 2; c <= 37; ++c) mask(r, c) = 1;
    gt.push_back(poly(0, rect(2, 2, 6, 37)));
    gt.push_back(poly(1, rect(12, 2, 16, 37)));
    gt.push_back(poly(2, rect(22, 2, 26, 37)));
    pred.push_back(poly(0, rect(2, 2, 6, 37)));
    pred.push_back(poly(1, rect(12, 2, 16, 37)));
    pred.push_back(poly(2, rect(22, 2, 26, 19)));   // left half of line 2
    pred.push_back(poly(3, rect(22, 20, 26, 37)));  // right half of line 2
  }
};

}  // namespace

TEST_CASE("page evaluation scores a split line as two false positives") {
  const SplitFixture fix;
  const PageEval eval = evaluate_page(fix.pred, fix.gt, fix.mask);
  CHECK(eval.tp == 2);
  CHECK(eval.fp == 2);
  CHECK(eval.fn == 1);
  CHECK(eval.line_iu == 0.4);
  CHECK(eval.pixel_iu == 1.0);  // over matched pairs, which are exact here
  REQUIRE(eval.matches.size() == 2);
}

TEST_CASE("removing an unmatched prediction raises the line score") {
  const SplitFixture fix;
  const double base = evaluate_page(fix.pred, fix.gt, fix.mask).line_iu;
  for (const int drop : {2, 3}) {
    std::vector<LinePolygon> fewer;
    for (int i = 0; i < static_cast<int>(fix.pred.size()); ++i)
      if (i != drop) fewer.push_back(fix.pred[i]);
    CHECK(evaluate_page(fewer, fix.gt, fix.mask).line_iu > base);
  }
}

TEST_CASE("evaluation is invariant to line order") {
  const SplitFixture fix;
  const PageEval base = evaluate_page(fix.pred, fix.gt, fix.mask);

  std::vector<LinePolygon> pred = {fix.pred[3], fix.pred[1], fix.pred[0],
                                   fix.pred[2]};
  std::vector<LinePolygon> gt = {fix.gt[2], fix.gt[0], fix.gt[1]};
  const PageEval shuffled = evaluate_page(pred, gt, fix.mask);
  CHECK(shuffled.tp == base.tp);
  CHECK(shuffled.fp == base.fp);
  CHECK(shuffled.fn == base.fn);
  CHECK(shuffled.line_iu == base.line_iu);
  CHECK(shuffled.pixel_iu == base.pixel_iu);
}

TEST_CASE("evaluating nothing against nothing is perfect") {
  const MaskRaster mask(5, 5, 0);
  const PageEval eval = evaluate_page({}, {}, mask);
  CHECK(eval.line_iu == 1.0);
  CHECK(eval.pixel_iu == 1.0);

  const SplitFixture fix;
  const PageEval missed = evaluate_page({}, fix.gt, fix.mask);
  CHECK(missed.line_iu == 0.0);
  CHECK(missed.pixel_iu == 0.0);
  CHECK(missed.fn == 3);
}

TEST_CASE("evaluation validates the match threshold") {
  const MaskRaster mask(5, 5, 0);
  CHECK_THROWS_AS(evaluate_page({}, {}, mask, 0.0), InputError);
  CHECK_THROWS_AS(evaluate_page({}, {}, mask, 1.5), InputError);
}

TEST_CASE("corpus summary is the unweighted page mean") {
  PageEval a;
  a.page = "p0";
  a.line_iu = 1.0;
  a.pixel_iu = 0.9;
  PageEval b;
  b.page = "p1";
  b.line_iu = 0.5;
  b.pixel_iu = 0.7;
  const CorpusEval corpus = summarize({a, b});
  CHECK(corpus.line_iu == 0.75);
  CHECK(corpus.pixel_iu == doctest::Approx(0.8));

  const CorpusEval empty = summarize({});
  CHECK(empty.pages.empty());
  CHECK(empty.line_iu == 0.0);
  CHECK(empty.pixel_iu == 0.0);
}

TEST_CASE("the json report carries per-page rows and corpus means") {
  PageEval a;
  a.page = "p0";
  a.tp = 3;
  a.fp = 1;
  a.fn = 0;
  a.line_iu = 0.75;
  a.pixel_iu = 0.5;
  const CorpusEval corpus = summarize({a});

  const auto parsed = nlohmann::json::parse(eval_report_json(corpus));
  REQUIRE(parsed.contains("pages"));
  REQUIRE(parsed["pages"].size() == 1);
  CHECK(parsed["pages"][0]["page"] == "p0");
  CHECK(parsed["pages"][0]["tp"] == 3);
  CHECK(parsed["pages"][0]["fp"] == 1);
  CHECK(parsed["pages"][0]["line_iu"].get<double>() == doctest::Approx(0.75));
  REQUIRE(parsed.contains("corpus"));
  CHECK(parsed["corpus"]["pages"] == 1);
  CHECK(parsed["corpus"]["line_iu"].get<double>() == doctest::Approx(0.75));
  CHECK(parsed["corpus"]["pixel_iu"].get<double>() == doctest::Approx(0.5));

  CHECK(eval_report_table(corpus).find("p0") != std::string::npos);
}

TEST_SUITE("properties") {

TEST_CASE("iu is symmetric and bounded") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    INFO("seed ", seed);
    TestRng rng(seed * 2213);
    PixelSet a, b;
    for (int i = 0; i < 40; ++i) {
      if (rng.chance(0.3)) a.push_back(i);
      if (rng.chance(0.3)) b.push_back(i);
    }
    const double ab = iu(a, b);
    CHECK(ab == iu(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(iu(a, a) == 1.0);
  }
}

TEST_CASE("documents survive both serializations byte for byte") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    INFO("seed ", seed);
    TestRng rng(seed * 2333);
    PageDocument doc;
    doc.image_filename = "page_" + std::to_string(seed) + ".png";
    doc.image_width = rng.range(10, 4000);
    doc.image_height = rng.range(10, 4000);
    const int lines = rng.range(0, 6);
    for (int i = 0; i < lines; ++i) {
      PageLine line;
      line.id = "line_" + std::to_string(i);
      const int verts = rng.range(3, 9);
      for (int v = 0; v < verts; ++v)
        line.vertices.push_back(Pixel{rng.range(0, doc.image_height - 1),
                                      rng.range(0, doc.image_width - 1)});
      doc.lines.push_back(std::move(line));
    }

    const std::string xml = write_page_xml(doc);
    CHECK(xml == write_page_xml(doc));
    check_equal(parse_page_xml(xml), doc);
    check_equal(parse_page_json(write_page_json(doc)), doc);
    if (!doc.lines.empty()) oracle::check_page_xml_structure(xml);
  }
}

TEST_CASE("self-evaluation is always perfect") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    INFO("seed ", seed);
    TestRng rng(seed * 2441);
    MaskRaster mask(50, 50, 0);
    std::vector<LinePolygon> lines;
    const int count = rng.range(1, 4);
    for (int i = 0; i < count; ++i) {
      const int top = 3 + i * 12;
      for (int r = top; r < top + 6; ++r)
        for (int c = 4; c < 46; ++c)
          if (rng.chance(0.7)) mask(r, c) = 1;
      lines.push_back(poly(i, rect(top, 3, top + 6, 46)));
    }
    const PageEval eval = evaluate_page(lines, lines, mask);
    CHECK(eval.line_iu == 1.0);
    CHECK(eval.pixel_iu == 1.0);
    CHECK(eval.fp == 0);
    CHECK(eval.fn == 0);
  }
}

}  // TEST_SUITE
