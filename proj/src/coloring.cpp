#include "linarb/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace linarb {

std::optional<Color> EdgeColoring::get(Edge e) const {
  auto it = colors_.find(e);
  if (it == colors_.end()) return std::nullopt;
  return it->second;
}

int color_degree(const EdgeColoring& c, Vertex v, Color i) {
  int count = 0;
  for (const auto& [e, color] : c.entries())
    if (color == i && e.has(v)) ++count;
  return count;
}

std::string Violation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::matching_degree: out << "matching colour " << color << " has degree > 1 at vertex "; break;
    case Kind::forest_degree: out << "forest colour " << color << " has degree > 2 at vertex "; break;
    case Kind::monochromatic_cycle: out << "monochromatic cycle in colour " << color << ":"; break;
  }
  for (std::size_t k = 0; k < vertices.size(); ++k) out << (k || kind == Kind::monochromatic_cycle ? " " : "") << vertices[k];
  return out.str();
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Path from s to t inside the forest given by adjacency lists.
std::vector<Vertex> tree_path(const std::vector<std::vector<Vertex>>& adj, Vertex s, Vertex t) {
  std::vector<Vertex> parent(adj.size(), -1);
  std::vector<Vertex> stack{s};
  parent[s] = s;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    if (x == t) break;
    for (Vertex y : adj[x])
      if (parent[y] < 0) {
        parent[y] = x;
        stack.push_back(y);
      }
  }
  std::vector<Vertex> path;
  for (Vertex x = t; x != s; x = parent[x]) path.push_back(x);
  path.push_back(s);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<Violation> validate(const Graph& g, const EdgeColoring& c, const PartitionSpec& spec) {
  if (spec.forests < 0 || spec.matchings < 0 || spec.colors() < 1) throw ColoringError("invalid partition spec");
  for (const auto& [e, color] : c.entries()) {
    if (!g.adjacent(e.u, e.v))
      throw ColoringError("coloured pair (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not an edge");
    if (color < 0 || color >= spec.colors())
      throw ColoringError("colour " + std::to_string(color) + " out of range on edge (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ")");
  }
  for (const Edge& e : g.edges())
    if (!c.contains(e))
      throw ColoringError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not coloured");

  std::vector<Violation> out;
  const int n = g.order();
  std::vector<std::vector<int>> degree(spec.colors(), std::vector<int>(n, 0));
  for (const auto& [e, color] : c.entries()) {
    ++degree[color][e.u];
    ++degree[color][e.v];
  }
  for (Color i = 0; i < spec.colors(); ++i)
    for (Vertex v = 0; v < n; ++v) {
      if (spec.is_matching(i) && degree[i][v] > 1)
        out.push_back({Violation::Kind::matching_degree, i, {v}});
      else if (!spec.is_matching(i) && degree[i][v] > 2)
        out.push_back({Violation::Kind::forest_degree, i, {v}});
    }

  for (Color i = spec.matchings; i < spec.colors(); ++i) {
    UnionFind uf(n);
    std::vector<std::vector<Vertex>> forest(n);
    for (const auto& [e, color] : c.entries()) {
      if (color != i) continue;
      if (!uf.unite(e.u, e.v)) {
        out.push_back({Violation::Kind::monochromatic_cycle, i, tree_path(forest, e.u, e.v)});
        continue;
      }
      forest[e.u].push_back(e.v);
      forest[e.v].push_back(e.u);
    }
  }
  return out;
}

std::string format_multiset(const ColorCounts& counts) {
  std::string out = "{";
  bool first = true;
  for (Color i = 0; i < kColorCount; ++i)
    for (int k = 0; k < counts[i]; ++k) {
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

ColoringClass extract_outer_class(const Graph& g, const EdgeColoring& c, std::span<const Vertex> h_vertices,
                                  std::span<const Edge> h_edges) {
  std::set<Edge> inner(h_edges.begin(), h_edges.end());
  for (const Edge& e : inner)
    if (!g.adjacent(e.u, e.v)) throw ColoringError("configuration edge is not a host edge");

  auto outer_color = [&](Vertex a, Vertex b) -> Color {
    auto col = c.get(Edge(a, b));
    if (!col) throw ColoringError("outer edge (" + std::to_string(a) + "," + std::to_string(b) + ") is not coloured");
    if (*col < 0 || *col >= kColorCount) throw ColoringError("colour out of range");
    return *col;
  };
  auto is_outer = [&](Vertex a, Vertex b) { return !inner.count(Edge(a, b)); };

  std::vector<int> index_of(g.order(), -1);
  for (std::size_t k = 0; k < h_vertices.size(); ++k) {
    if (index_of.at(h_vertices[k]) >= 0) throw ColoringError("configuration image is not injective");
    index_of[h_vertices[k]] = static_cast<int>(k);
  }

  ColoringClass cls;
  cls.multisets.resize(h_vertices.size(), ColorCounts{});
  for (std::size_t k = 0; k < h_vertices.size(); ++k) {
    Vertex x = h_vertices[k];
    for (Vertex y : g.neighbours(x))
      if (is_outer(x, y)) ++cls.multisets[k][outer_color(x, y)];
    const auto& m = cls.multisets[k];
    if (m[0] > 1 || m[1] > 2 || m[2] > 2 || m[3] > 2 || m[4] > 2)
      throw ColoringError("invalid colouring: colour degree exceeded at vertex " + std::to_string(x));
  }

  for (Color i = 1; i < kColorCount; ++i)
    for (std::size_t k = 0; k < h_vertices.size(); ++k) {
      if (cls.multisets[k][i] != 1) continue;
      // follow the outer i-path leaving h_vertices[k]
      Vertex prev = h_vertices[k];
      Vertex cur = -1;
      for (Vertex y : g.neighbours(prev))
        if (is_outer(prev, y) && outer_color(prev, y) == i) cur = y;
      std::size_t steps = 0;
      while (true) {
        if (++steps > g.size()) throw ColoringError("invalid colouring: monochromatic cycle in colour " + std::to_string(i));
        Vertex next = -1;
        for (Vertex y : g.neighbours(cur))
          if (y != prev && is_outer(cur, y) && outer_color(cur, y) == i) {
            if (next >= 0) throw ColoringError("invalid colouring: colour degree exceeded at vertex " + std::to_string(cur));
            next = y;
          }
        if (next < 0) break;
        prev = cur;
        cur = next;
      }
      int end = index_of[cur];
      if (end > static_cast<int>(k) && cls.multisets[end][i] == 1)
        cls.paths.push_back({i, static_cast<int>(k), end});
    }
  std::sort(cls.paths.begin(), cls.paths.end());
  return cls;
}

}  // namespace linarb
