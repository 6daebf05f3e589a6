#include "linarb/plane_graph.hpp"

#include <algorithm>
#include <sstream>

namespace linarb {

PlaneGraph::PlaneGraph(std::vector<std::vector<Vertex>> rotation) : rotation_(std::move(rotation)) {
  const int n = static_cast<int>(rotation_.size());
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> sorted = rotation_[v];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw GraphError("rotation at " + std::to_string(v) + " repeats a neighbour");
    for (Vertex w : sorted) {
      if (w < 0 || w >= n) throw GraphError("rotation at " + std::to_string(v) + " names unknown vertex " + std::to_string(w));
      if (w == v) throw GraphError("rotation at " + std::to_string(v) + " contains a loop");
      if (v < w) edges.emplace_back(v, w);
    }
  }
  graph_ = Graph::build(n, edges);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : rotation_[v])
      if (!std::count(rotation_[w].begin(), rotation_[w].end(), v))
        throw GraphError("rotation lists disagree on edge (" + std::to_string(v) + "," + std::to_string(w) + ")");
}

Vertex PlaneGraph::successor(Vertex v, Vertex w) const {
  const auto& rv = rotation_.at(v);
  auto it = std::find(rv.begin(), rv.end(), w);
  if (it == rv.end()) throw GraphError("not a neighbour");
  ++it;
  return it == rv.end() ? rv.front() : *it;
}

std::vector<Face> trace_faces(const PlaneGraph& pg) {
  const Graph& g = pg.graph();
  if (!g.connected()) throw GraphError("face tracing needs a connected plane graph");
  const int n = g.order();
  if (g.size() == 0) return {Face{}};

  std::vector<int> offset(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) offset[v + 1] = offset[v] + g.degree(v);
  std::vector<char> used(offset[n], 0);

  // position of u in rotation(v), for the dart u -> v
  auto position = [&](Vertex v, Vertex u) {
    const auto& rv = pg.rotation(v);
    return static_cast<int>(std::find(rv.begin(), rv.end(), u) - rv.begin());
  };

  std::vector<Face> faces;
  for (Vertex s = 0; s < n; ++s)
    for (int k = 0; k < g.degree(s); ++k) {
      if (used[offset[s] + k]) continue;
      Face face;
      Vertex u = s;
      int slot = k;
      while (!used[offset[u] + slot]) {
        used[offset[u] + slot] = 1;
        face.walk.push_back(u);
        Vertex v = pg.rotation(u)[slot];
        int back = position(v, u);
        slot = (back + 1) % g.degree(v);
        u = v;
      }
      faces.push_back(std::move(face));
    }
  return faces;
}

VertexSegments vertex_segments(const PlaneGraph& pg, const std::vector<Face>& faces, Vertex v) {
  VertexSegments out;
  if (pg.graph().degree(v) < 2) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& walk = faces[f].walk;
    const int len = static_cast<int>(walk.size());
    for (int i = 0; i < len; ++i)
      if (walk[i] == v)
        out.segments.push_back(Segment{walk[(i + len - 1) % len], v, walk[(i + 1) % len], static_cast<int>(f), len});
  }
  return out;
}

VertexSegments vertex_segments(const PlaneGraph& pg, Vertex v) { return vertex_segments(pg, trace_faces(pg), v); }

PlaneGraph parse_rotation(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<Vertex, std::vector<Vertex>>> rows;
  int line_no = 0;
  Vertex max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw GraphError("rotation line " + std::to_string(line_no) + ": missing ':'");
    std::istringstream head(line.substr(0, colon));
    Vertex v;
    std::string rest;
    if (!(head >> v) || (head >> rest) || v < 0)
      throw GraphError("rotation line " + std::to_string(line_no) + ": bad vertex id");
    std::istringstream tail(line.substr(colon + 1));
    std::vector<Vertex> nbrs;
    std::string token;
    while (tail >> token) {
      std::size_t used = 0;
      int w = -1;
      try {
        w = std::stoi(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || w < 0)
        throw GraphError("rotation line " + std::to_string(line_no) + ": bad neighbour '" + token + "'");
      nbrs.push_back(w);
      max_id = std::max(max_id, w);
    }
    max_id = std::max(max_id, v);
    rows.emplace_back(v, std::move(nbrs));
  }
  if (rows.empty()) throw GraphError("rotation file has no vertices");
  std::vector<std::vector<Vertex>> rotation(max_id + 1);
  std::vector<char> seen(max_id + 1, 0);
  for (auto& [v, nbrs] : rows) {
    if (seen[v]) throw GraphError("rotation lists vertex " + std::to_string(v) + " twice");
    seen[v] = 1;
    rotation[v] = std::move(nbrs);
  }
  for (Vertex v = 0; v <= max_id; ++v)
    if (!seen[v]) throw GraphError("rotation file has no line for vertex " + std::to_string(v));
  return PlaneGraph(std::move(rotation));
}

std::string format_rotation(const PlaneGraph& pg) {
  std::ostringstream out;
  for (Vertex v = 0; v < pg.order(); ++v) {
    out << v << ':';
    for (Vertex w : pg.rotation(v)) out << ' ' << w;
    out << '\n';
  }
  return out.str();
}

}  // namespace linarb
