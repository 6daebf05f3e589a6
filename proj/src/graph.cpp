#include "linarb/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace linarb {

Graph::Graph(int n) {
  if (n < 0) throw GraphError("negative vertex count");
  adjacency_.resize(n);
}

Graph Graph::build(int n, std::span<const std::pair<int, int>> edge_list) {
  Graph g(n);
  for (auto [a, b] : edge_list) g.add_edge(a, b);
  return g;
}

Graph Graph::build(int n, std::span<const Edge> edge_list) {
  Graph g(n);
  for (const Edge& e : edge_list) g.add_edge(e.u, e.v);
  return g;
}

void Graph::add_edge(Vertex a, Vertex b) {
  if (a < 0 || b < 0 || a >= order() || b >= order())
    throw GraphError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
  if (a == b) throw GraphError("loop at vertex " + std::to_string(a));
  auto& na = adjacency_[a];
  auto pos = std::lower_bound(na.begin(), na.end(), b);
  if (pos != na.end() && *pos == b)
    throw GraphError("duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  na.insert(pos, b);
  auto& nb = adjacency_[b];
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
  edges_.emplace_back(a, b);
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& nb : adjacency_) best = std::max(best, static_cast<int>(nb.size()));
  return best;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= order() || v >= order()) return false;
  const auto& nu = adjacency_[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::optional<std::size_t> Graph::edge_index(Vertex u, Vertex v) const {
  if (!adjacent(u, v)) return std::nullopt;
  Edge key(u, v);
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i] == key) return i;
  return std::nullopt;
}

bool Graph::connected() const {
  if (order() == 0) return false;
  std::vector<char> seen(order(), 0);
  std::queue<Vertex> todo;
  todo.push(0);
  seen[0] = 1;
  int count = 1;
  while (!todo.empty()) {
    Vertex v = todo.front();
    todo.pop();
    for (Vertex w : adjacency_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        todo.push(w);
      }
  }
  return count == order();
}

Graph Graph::without_edges(std::span<const Edge> removed) const {
  std::set<Edge> drop(removed.begin(), removed.end());
  for (const Edge& e : drop)
    if (!adjacent(e.u, e.v))
      throw GraphError("cannot remove missing edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
  Graph g(order());
  for (const Edge& e : edges_)
    if (!drop.count(e)) g.add_edge(e.u, e.v);
  return g;
}

Graph Graph::with_edges(std::span<const Edge> added) const {
  Graph g = *this;
  for (const Edge& e : added) g.add_edge(e.u, e.v);
  return g;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return a.adjacency_ == b.adjacency_;
}

int triangles_on_edge(const Graph& g, Vertex u, Vertex v) {
  auto nu = g.neighbours(u);
  auto nv = g.neighbours(v);
  int count = 0;
  // both lists are sorted
  auto i = nu.begin();
  auto j = nv.begin();
  while (i != nu.end() && j != nv.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

NeighbourKind classify_neighbour(const Graph& g, Vertex u, Vertex v) {
  if (!g.adjacent(u, v))
    throw GraphError("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
  switch (triangles_on_edge(g, u, v)) {
    case 2: return NeighbourKind::weak;
    case 1: return NeighbourKind::semi_weak;
    default: return NeighbourKind::plain;
  }
}

std::string to_string(NeighbourKind kind) {
  switch (kind) {
    case NeighbourKind::weak: return "weak";
    case NeighbourKind::semi_weak: return "semi-weak";
    case NeighbourKind::plain: return "plain";
  }
  return "?";
}

}  // namespace linarb
