#include "linarb/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace linarb {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw InputError("cannot write " + path);
}

Graph read_graph_file(const std::string& path) {
  std::istringstream lines(read_text_file(path));
  std::string line;
  while (std::getline(lines, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line == ">>graph6<<") continue;
    try {
      return parse_graph6(line);
    } catch (const GraphError& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  throw InputError(path + ": no graph found");
}

EdgeColoring parse_coloring(std::string_view text, const Graph& g) {
  EdgeColoring c;
  std::istringstream lines{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long u, v, color;
    if (!(fields >> u)) continue;
    std::string extra;
    if (!(fields >> v >> color) || (fields >> extra))
      throw InputError("colouring line " + std::to_string(number) + ": expected `u v colour`");
    if (u < 0 || v < 0 || u >= g.order() || v >= g.order() || !g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v)))
      throw InputError("colouring line " + std::to_string(number) + ": " + std::to_string(u) + "-" + std::to_string(v) +
                       " is not an edge");
    if (color < 0 || color >= kColorCount)
      throw InputError("colouring line " + std::to_string(number) + ": colour out of range");
    Edge e(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (c.contains(e)) throw InputError("colouring line " + std::to_string(number) + ": edge coloured twice");
    c.set(e, static_cast<Color>(color));
  }
  for (const Edge& e : g.edges())
    if (!c.contains(e))
      throw InputError("colouring misses edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  return c;
}

std::string format_coloring(const EdgeColoring& c) {
  std::ostringstream out;
  out << "# u v colour\n";
  for (const auto& [e, color] : c.entries()) out << e.u << ' ' << e.v << ' ' << color << '\n';
  return out.str();
}

}  // namespace linarb
