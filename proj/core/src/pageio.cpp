#include "scriptorium/pageio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "scriptorium/errors.hpp"
#include "xml_reader.hpp"

namespace scriptorium {

namespace {

constexpr std::string_view kPageNamespace =
    "http://schema.primaresearch.org/PAGE/gts/pagecontent/2013-07-15";

void check_document(const PageDocument& doc) {
  if (doc.image_width < 1 || doc.image_height < 1)
    throw InputError("page document needs positive image dimensions");
  for (const PageLine& line : doc.lines) {
    if (line.vertices.size() < 3)
      throw InputError("line '" + line.id + "' has fewer than 3 vertices");
    for (const Pixel& v : line.vertices) {
      if (v.col < 0 || v.col >= doc.image_width || v.row < 0 ||
          v.row >= doc.image_height)
        throw InputError("line '" + line.id +
                         "' has a vertex outside the page");
    }
  }
}

std::string coords_points(const std::vector<Pixel>& vertices) {
  std::string out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(vertices[i].col);
    out.push_back(',');
    out += std::to_string(vertices[i].row);
  }
  return out;
}

std::vector<Pixel> parse_points(const std::string& points,
                                const std::string& line_id) {
  std::vector<Pixel> vertices;
  std::stringstream ss(points);
  std::string pair;
  while (ss >> pair) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos)
      throw InputError("line '" + line_id + "': bad Coords pair '" + pair +
                       "'");
    try {
      const int x = std::stoi(pair.substr(0, comma));
      const int y = std::stoi(pair.substr(comma + 1));
      vertices.push_back({y, x});
    } catch (const std::exception&) {
      throw InputError("line '" + line_id + "': bad Coords pair '" + pair +
                       "'");
    }
  }
  return vertices;
}

int parse_int_attr(const xml::Node& node, const char* key) {
  const std::string* raw = node.attribute(key);
  if (!raw) throw InputError(std::string("Page is missing ") + key);
  try {
    return std::stoi(*raw);
  } catch (const std::exception&) {
    throw InputError(std::string("Page has a non-numeric ") + key);
  }
}

}  // namespace

std::string write_page_xml(const PageDocument& doc) {
  check_document(doc);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
  out += "<PcGts xmlns=\"";
  out += kPageNamespace;
  out += "\" xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"";
  out += kPageNamespace;
  out += " ";
  out += kPageNamespace;
  out += "/pagecontent.xsd\">\n";
  out += "  <Metadata>\n";
  out += "    <Creator>scriptorium</Creator>\n";
  out += "    <Created>1970-01-01T00:00:00</Created>\n";
  out += "    <LastChange>1970-01-01T00:00:00</LastChange>\n";
  out += "  </Metadata>\n";
  out += "  <Page imageFilename=\"" + xml::escape(doc.image_filename) +
         "\" imageWidth=\"" + std::to_string(doc.image_width) +
         "\" imageHeight=\"" + std::to_string(doc.image_height) + "\">\n";
  out += "    <TextRegion id=\"region_0\">\n";
  const int w = doc.image_width - 1, h = doc.image_height - 1;
  out += "      <Coords points=\"0,0 " + std::to_string(w) + ",0 " +
         std::to_string(w) + "," + std::to_string(h) + " 0," +
         std::to_string(h) + "\"/>\n";
  for (const PageLine& line : doc.lines) {
    out += "      <TextLine id=\"" + xml::escape(line.id) + "\">\n";
    out += "        <Coords points=\"" + coords_points(line.vertices) +
           "\"/>\n";
    out += "      </TextLine>\n";
  }
  out += "    </TextRegion>\n";
  out += "  </Page>\n";
  out += "</PcGts>\n";
  return out;
}

PageDocument parse_page_xml(std::string_view bytes) {
  const xml::Node root = xml::parse(bytes);
  if (root.name != "PcGts")
    throw InputError("not a PAGE document: root element is <" + root.name +
                     ">");

  std::vector<const xml::Node*> pages;
  root.collect("Page", pages);
  if (pages.empty()) throw InputError("PAGE document has no <Page> element");
  const xml::Node& page = *pages.front();

  PageDocument doc;
  if (const std::string* name = page.attribute("imageFilename"))
    doc.image_filename = *name;
  doc.image_width = parse_int_attr(page, "imageWidth");
  doc.image_height = parse_int_attr(page, "imageHeight");

  std::vector<const xml::Node*> text_lines;
  page.collect("TextLine", text_lines);
  for (const xml::Node* line_node : text_lines) {
    PageLine line;
    if (const std::string* id = line_node->attribute("id")) line.id = *id;
    const xml::Node* coords = line_node->first("Coords");
    const std::string* points = coords ? coords->attribute("points") : nullptr;
    if (!points)
      throw InputError("TextLine '" + line.id + "' has no Coords points");
    line.vertices = parse_points(*points, line.id);
    doc.lines.push_back(std::move(line));
  }
  return doc;
}

std::string write_page_json(const PageDocument& doc) {
  check_document(doc);
  nlohmann::ordered_json j;
  j["image"] = doc.image_filename;
  j["width"] = doc.image_width;
  j["height"] = doc.image_height;
  j["lines"] = nlohmann::ordered_json::array();
  for (const PageLine& line : doc.lines) {
    nlohmann::ordered_json entry;
    entry["id"] = line.id;
    auto polygon = nlohmann::ordered_json::array();
    for (const Pixel& v : line.vertices)
      polygon.push_back({v.col, v.row});
    entry["polygon"] = std::move(polygon);
    j["lines"].push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

PageDocument parse_page_json(std::string_view bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad page JSON: ") + e.what());
  }
  try {
    PageDocument doc;
    doc.image_filename = j.value("image", std::string());
    doc.image_width = j.at("width").get<int>();
    doc.image_height = j.at("height").get<int>();
    for (const auto& entry : j.at("lines")) {
      PageLine line;
      line.id = entry.value("id", std::string());
      for (const auto& v : entry.at("polygon"))
        line.vertices.push_back({v.at(1).get<int>(), v.at(0).get<int>()});
      doc.lines.push_back(std::move(line));
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad page JSON: ") + e.what());
  }
}

PageDocument page_document_from_polygons(std::span<const LinePolygon> polygons,
                                         const std::string& image_filename,
                                         int width, int height) {
  PageDocument doc;
  doc.image_filename = image_filename;
  doc.image_width = width;
  doc.image_height = height;
  for (const LinePolygon& poly : polygons) {
    PageLine line;
    line.id = "line_" + std::to_string(poly.line_index);
    line.vertices.reserve(poly.vertices.size());
    for (const Point& p : poly.vertices) {
      const int row = std::clamp(static_cast<int>(std::lround(p.row)), 0,
                                 height - 1);
      const int col = std::clamp(static_cast<int>(std::lround(p.col)), 0,
                                 width - 1);
      line.vertices.push_back({row, col});
    }
    doc.lines.push_back(std::move(line));
  }
  return doc;
}

std::vector<LinePolygon> polygons_from_page_document(const PageDocument& doc) {
  std::vector<LinePolygon> polygons;
  polygons.reserve(doc.lines.size());
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    LinePolygon poly;
    poly.line_index = static_cast<int>(i);
    for (const Pixel& v : doc.lines[i].vertices)
      poly.vertices.push_back(
          {static_cast<double>(v.row), static_cast<double>(v.col)});
    polygons.push_back(std::move(poly));
  }
  return polygons;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("could not open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("could not write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InputError("could not write file: " + path);
}

void write_page_xml_file(const PageDocument& doc, const std::string& path) {
  write_text_file(path, write_page_xml(doc));
}

PageDocument read_page_xml_file(const std::string& path) {
  return parse_page_xml(read_text_file(path));
}

void write_page_json_file(const PageDocument& doc, const std::string& path) {
  write_text_file(path, write_page_json(doc));
}

PageDocument read_page_json_file(const std::string& path) {
  return parse_page_json(read_text_file(path));
}

}  // namespace scriptorium
