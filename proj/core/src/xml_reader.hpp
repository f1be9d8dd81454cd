#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scriptorium::xml {

// Minimal DOM for well-formed XML subsets. Element and attribute names are
// stored with any namespace prefix stripped, which makes consumers tolerant
// to namespace version changes.
struct Node {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Node> children;
  std::string text;

  const std::string* attribute(std::string_view key) const;
  const Node* first(std::string_view child_name) const;
  void collect(std::string_view descendant_name,
               std::vector<const Node*>& out) const;
};

// Parses a document with a single root element. Declarations, comments,
// DOCTYPE, and processing instructions are skipped. Throws InputError on
// malformed input.
Node parse(std::string_view bytes);

// Escapes &, <, >, and the two quote characters for attribute values.
std::string escape(std::string_view raw);

}  // namespace scriptorium::xml
