#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "linarb/graph.hpp"

namespace linarb {

using Color = int;

/// Colour 0 is the matching, colours 1..4 are the linear forests.
inline constexpr Color kMatchingColor = 0;
inline constexpr int kColorCount = 5;

/// How many colours of each kind a partition uses. Matching colours come
/// first: colours 0..matchings-1 are matchings, the rest linear forests.
struct PartitionSpec {
  int forests = 4;
  int matchings = 1;

  int colors() const { return forests + matchings; }
  bool is_matching(Color c) const { return c < matchings; }
  bool operator==(const PartitionSpec&) const = default;
};

class ColoringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partial map from edges to colours.
class EdgeColoring {
 public:
  void set(Edge e, Color c) { colors_[e] = c; }
  void erase(Edge e) { colors_.erase(e); }
  std::optional<Color> get(Edge e) const;
  bool contains(Edge e) const { return colors_.count(e) != 0; }
  std::size_t size() const { return colors_.size(); }
  const std::map<Edge, Color>& entries() const { return colors_; }

  bool operator==(const EdgeColoring&) const = default;

 private:
  std::map<Edge, Color> colors_;
};

/// d_i(c, v): number of edges at v coloured i.
int color_degree(const EdgeColoring& c, Vertex v, Color i);

struct Violation {
  enum class Kind { matching_degree, forest_degree, monochromatic_cycle };
  Kind kind;
  Color color;
  std::vector<Vertex> vertices;  // the vertex, or the cycle in order

  std::string describe() const;
};

/// Empty result iff every matching colour is a matching and every forest
/// colour is a linear forest. Throws ColoringError when c is not total on
/// E(g), names a non-edge, or uses a colour outside spec.
std::vector<Violation> validate(const Graph& g, const EdgeColoring& c, const PartitionSpec& spec = {});

struct BruteForceOptions {
  std::size_t max_edges = 25;
  int workers = 1;
};

class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive backtracking. Edges are tried by descending degree sum (ties
/// by edge index), colours ascending, so the witness is deterministic; with
/// several workers the first edge's colour choices are split and the lowest
/// successful branch wins.
std::optional<EdgeColoring> brute_force_partition(const Graph& g, const PartitionSpec& spec,
                                                  const BruteForceOptions& options = {});

// ---- coloring classes -------------------------------------------------

/// Colour multiset as multiplicities of colours 0..4.
using ColorCounts = std::array<std::uint8_t, kColorCount>;

/// Outer i-coloured path joining configuration vertices u < v.
struct PathTriple {
  Color color = 1;
  int u = 0;
  int v = 0;
  auto operator<=>(const PathTriple&) const = default;
};

/// (C, P): per configuration vertex the multiset of outer colours, plus the
/// outer monochromatic paths between configuration vertices.
struct ColoringClass {
  std::vector<ColorCounts> multisets;
  std::vector<PathTriple> paths;  // sorted

  bool operator==(const ColoringClass&) const = default;
};

std::string format_multiset(const ColorCounts& counts);

/// Reads the class of c relative to a configuration image. h_vertices[k] is
/// the host vertex playing configuration vertex k; h_edges are the host
/// edges of the image. Edges outside h_edges must be coloured; edges of
/// h_edges are ignored.
ColoringClass extract_outer_class(const Graph& g, const EdgeColoring& c, std::span<const Vertex> h_vertices,
                                  std::span<const Edge> h_edges);

}  // namespace linarb
