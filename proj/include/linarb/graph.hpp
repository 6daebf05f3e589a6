#pragma once

#include <cstddef>
#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace linarb {

using Vertex = int;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool has(Vertex x) const { return u == x || v == x; }
  Vertex other(Vertex x) const { return x == u ? v : u; }

  auto operator<=>(const Edge&) const = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph on vertices 0..n-1. Immutable once built; the
/// edit helpers return new graphs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  /// Throws GraphError on loops, duplicate edges or out-of-range endpoints.
  static Graph build(int n, std::span<const std::pair<int, int>> edge_list);
  static Graph build(int n, std::span<const Edge> edge_list);

  int order() const { return static_cast<int>(adjacency_.size()); }
  std::size_t size() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  /// Sorted neighbour list.
  std::span<const Vertex> neighbours(Vertex v) const { return adjacency_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(adjacency_.at(v).size()); }
  int max_degree() const;
  bool adjacent(Vertex u, Vertex v) const;
  std::optional<std::size_t> edge_index(Vertex u, Vertex v) const;
  bool connected() const;

  Graph without_edges(std::span<const Edge> removed) const;
  Graph with_edges(std::span<const Edge> added) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void add_edge(Vertex a, Vertex b);

  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Triangle-count classification of a neighbour.
enum class NeighbourKind { weak, semi_weak, plain };

/// Number of triangles containing the edge uv.
int triangles_on_edge(const Graph& g, Vertex u, Vertex v);

/// weak: uv lies in exactly two triangles; semi-weak: exactly one.
NeighbourKind classify_neighbour(const Graph& g, Vertex u, Vertex v);

std::string to_string(NeighbourKind kind);

// graph6 interchange format.
Graph parse_graph6(std::string_view text);
std::string to_graph6(const Graph& g);

}  // namespace linarb
