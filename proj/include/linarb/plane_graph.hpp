#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "linarb/graph.hpp"

namespace linarb {

/// A graph together with a rotation system: for every vertex the cyclic
/// (clockwise) order of its neighbours.
class PlaneGraph {
 public:
  PlaneGraph() = default;
  /// Edges are read off the rotation lists; every list must be a
  /// permutation of the vertex's neighbourhood and the lists must agree.
  explicit PlaneGraph(std::vector<std::vector<Vertex>> rotation);

  const Graph& graph() const { return graph_; }
  const std::vector<Vertex>& rotation(Vertex v) const { return rotation_.at(v); }
  int order() const { return graph_.order(); }

  /// Neighbour following w in the rotation at v.
  Vertex successor(Vertex v, Vertex w) const;

 private:
  Graph graph_;
  std::vector<std::vector<Vertex>> rotation_;
};

/// Closed facial walk; walk[i] -> walk[i+1] are the directed edges of the
/// face. length() counts edge incidences, so bridges count twice.
struct Face {
  std::vector<Vertex> walk;
  int length() const { return static_cast<int>(walk.size()); }
};

/// Three consecutive vertices (x, y, z) of a facial walk; y is the incident
/// vertex.
struct Segment {
  Vertex x = 0;
  Vertex y = 0;
  Vertex z = 0;
  int face = 0;
  int length = 0;

  bool triangular() const { return length == 3; }
  auto operator<=>(const Segment&) const = default;
};

/// Traces every face of a connected plane graph. Throws GraphError for
/// disconnected (or empty) inputs.
std::vector<Face> trace_faces(const PlaneGraph& pg);

struct VertexSegments {
  std::vector<Segment> segments;
  bool degenerate = false;  // degree < 2: no segment is defined
};

/// All y-segments with y = v, in face order then walk order.
VertexSegments vertex_segments(const PlaneGraph& pg, const std::vector<Face>& faces, Vertex v);
VertexSegments vertex_segments(const PlaneGraph& pg, Vertex v);

// Rotation file: one `v: n1 n2 ... nk` line per vertex (clockwise),
// `#` starts a comment, vertex ids are 0-based.
PlaneGraph parse_rotation(std::string_view text);
std::string format_rotation(const PlaneGraph& pg);

struct PlaneGenOptions {
  int vertices = 20;
  int max_degree = 9;
  double keep_edge_probability = 0.75;  // chance to keep each non-bridge edge
};

/// Random connected plane graph: grows a triangulation by inserting vertices
/// into faces and flipping edges while respecting the degree cap, then
/// deletes a random subset of edges without disconnecting.
PlaneGraph random_plane_graph(std::mt19937_64& rng, const PlaneGenOptions& options);

}  // namespace linarb
