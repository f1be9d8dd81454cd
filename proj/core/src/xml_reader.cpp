#include "xml_reader.hpp"

#include <cctype>

#include "scriptorium/errors.hpp"

namespace scriptorium::xml {

namespace {

[[noreturn]] void fail(const std::string& why) {
  throw InputError("malformed XML: " + why);
}

std::string strip_prefix(std::string_view name) {
  const auto colon = name.rfind(':');
  if (colon == std::string_view::npos) return std::string(name);
  return std::string(name.substr(colon + 1));
}

std::string decode_entities(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '&') {
      out.push_back(raw[i]);
      continue;
    }
    const auto end = raw.find(';', i);
    if (end == std::string_view::npos) fail("unterminated entity reference");
    const std::string_view entity = raw.substr(i + 1, end - i - 1);
    if (entity == "amp")
      out.push_back('&');
    else if (entity == "lt")
      out.push_back('<');
    else if (entity == "gt")
      out.push_back('>');
    else if (entity == "quot")
      out.push_back('"');
    else if (entity == "apos")
      out.push_back('\'');
    else if (!entity.empty() && entity[0] == '#') {
      int code = 0;
      try {
        code = entity[1] == 'x' || entity[1] == 'X'
                   ? std::stoi(std::string(entity.substr(2)), nullptr, 16)
                   : std::stoi(std::string(entity.substr(1)));
      } catch (const std::exception&) {
        fail("bad numeric entity");
      }
      if (code < 1 || code > 127) fail("numeric entity outside ASCII");
      out.push_back(static_cast<char>(code));
    } else {
      fail("unknown entity '" + std::string(entity) + "'");
    }
    i = end;
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view bytes) : in_(bytes) {}

  Node run() {
    std::optional<Node> root;
    while (true) {
      skip_misc();
      if (pos_ >= in_.size()) break;
      if (root) fail("content after the root element");
      root = element();
    }
    if (!root) fail("no root element");
    return std::move(*root);
  }

 private:
  void skip_ws() {
    while (pos_ < in_.size() &&
           std::isspace(static_cast<unsigned char>(in_[pos_])))
      ++pos_;
  }

  // Skips whitespace, the XML declaration, comments, and DOCTYPE.
  void skip_misc() {
    while (true) {
      skip_ws();
      if (!lookahead("<")) return;
      if (lookahead("<?")) {
        const auto end = in_.find("?>", pos_);
        if (end == std::string_view::npos) fail("unterminated declaration");
        pos_ = end + 2;
      } else if (lookahead("<!--")) {
        const auto end = in_.find("-->", pos_ + 4);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos_ = end + 3;
      } else if (lookahead("<!")) {
        const auto end = in_.find('>', pos_);
        if (end == std::string_view::npos) fail("unterminated <! section");
        pos_ = end + 1;
      } else {
        return;
      }
    }
  }

  bool lookahead(std::string_view what) const {
    return in_.compare(pos_, what.size(), what) == 0;
  }

  std::string name_token() {
    const std::size_t from = pos_;
    while (pos_ < in_.size()) {
      const char c = in_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '-' || c == '.' || c == ':')
        ++pos_;
      else
        break;
    }
    if (pos_ == from) fail("expected a name");
    return std::string(in_.substr(from, pos_ - from));
  }

  Node element() {
    if (!lookahead("<")) fail("expected an element");
    ++pos_;
    Node node;
    node.name = strip_prefix(name_token());

    while (true) {
      skip_ws();
      if (pos_ >= in_.size()) fail("unterminated start tag");
      if (lookahead("/>")) {
        pos_ += 2;
        return node;
      }
      if (lookahead(">")) {
        ++pos_;
        break;
      }
      const std::string key = strip_prefix(name_token());
      skip_ws();
      if (!lookahead("=")) fail("attribute '" + key + "' missing '='");
      ++pos_;
      skip_ws();
      if (pos_ >= in_.size() || (in_[pos_] != '"' && in_[pos_] != '\''))
        fail("attribute '" + key + "' missing quoted value");
      const char quote = in_[pos_++];
      const auto end = in_.find(quote, pos_);
      if (end == std::string_view::npos)
        fail("unterminated value for attribute '" + key + "'");
      node.attributes.emplace_back(
          key, decode_entities(in_.substr(pos_, end - pos_)));
      pos_ = end + 1;
    }

    // Content: children and character data until the matching end tag.
    while (true) {
      const std::size_t text_from = pos_;
      while (pos_ < in_.size() && in_[pos_] != '<') ++pos_;
      if (pos_ > text_from)
        node.text += decode_entities(in_.substr(text_from, pos_ - text_from));
      if (pos_ >= in_.size()) fail("unterminated element <" + node.name + ">");
      if (lookahead("</")) {
        pos_ += 2;
        const std::string closing = strip_prefix(name_token());
        if (closing != node.name)
          fail("mismatched end tag </" + closing + "> for <" + node.name + ">");
        skip_ws();
        if (!lookahead(">")) fail("malformed end tag");
        ++pos_;
        return node;
      }
      if (lookahead("<!--")) {
        const auto end = in_.find("-->", pos_ + 4);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos_ = end + 3;
        continue;
      }
      if (lookahead("<?")) {
        const auto end = in_.find("?>", pos_);
        if (end == std::string_view::npos) fail("unterminated declaration");
        pos_ = end + 2;
        continue;
      }
      node.children.push_back(element());
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

const std::string* Node::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes)
    if (k == key) return &v;
  return nullptr;
}

const Node* Node::first(std::string_view child_name) const {
  for (const Node& child : children)
    if (child.name == child_name) return &child;
  return nullptr;
}

void Node::collect(std::string_view descendant_name,
                   std::vector<const Node*>& out) const {
  for (const Node& child : children) {
    if (child.name == descendant_name) out.push_back(&child);
    child.collect(descendant_name, out);
  }
}

Node parse(std::string_view bytes) { return Parser(bytes).run(); }

std::string escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (const char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace scriptorium::xml
