#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "linarb/coloring.hpp"
#include "linarb/graph.hpp"

namespace linarb {

/// Unreadable files and malformed input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// First graph6 record of the file; blank lines and a >>graph6<< header
/// are skipped.
Graph read_graph_file(const std::string& path);

// Colouring file: one `u v colour` line per edge, `#` comments.
EdgeColoring parse_coloring(std::string_view text, const Graph& g);
std::string format_coloring(const EdgeColoring& c);

}  // namespace linarb
