#pragma once

#include <span>
#include <string>
#include <vector>

#include "scriptorium/polygons.hpp"
#include "scriptorium/raster.hpp"

namespace scriptorium {

// One serialized text line: an id and an integer-coordinate closed polygon.
struct PageLine {
  std::string id;
  std::vector<Pixel> vertices;
};

// A page's worth of line polygons plus the source image metadata.
struct PageDocument {
  std::string image_filename;
  int image_width = 0;
  int image_height = 0;
  std::vector<PageLine> lines;
};

// Serializes to PAGE XML (2013-07-15 namespace): one TextRegion wrapping all
// TextLine elements, Coords as space-separated "x,y" pairs with x=column and
// y=row. Byte-deterministic for identical documents.
std::string write_page_xml(const PageDocument& doc);
void write_page_xml_file(const PageDocument& doc, const std::string& path);

// Accepts any PAGE namespace version; unknown elements are ignored. A
// TextLine without Coords points fails, naming the line id.
PageDocument parse_page_xml(std::string_view bytes);
PageDocument read_page_xml_file(const std::string& path);

// JSON sidecar: {"image", "width", "height", "lines": [{"id", "polygon":
// [[x,y], ...]}]}. Same conventions and determinism as the XML form.
std::string write_page_json(const PageDocument& doc);
void write_page_json_file(const PageDocument& doc, const std::string& path);
PageDocument parse_page_json(std::string_view bytes);
PageDocument read_page_json_file(const std::string& path);

// Rounds polygon vertices to integers (clamped to the page) and assigns
// sequential "line_<index>" ids.
PageDocument page_document_from_polygons(std::span<const LinePolygon> polygons,
                                         const std::string& image_filename,
                                         int width, int height);

// Back-conversion for evaluation; member lists come back empty.
std::vector<LinePolygon> polygons_from_page_document(const PageDocument& doc);

// Small file helpers shared by the CLI and tests.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace scriptorium
