#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "linarb/coloring.hpp"
#include "linarb/configuration.hpp"

namespace linarb {

class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximum degree above 9.
class DegreeError : public PartitionError {
 public:
  using PartitionError::PartitionError;
};

/// A reducible configuration failed to extend a colouring.
class ExtensionError : public PartitionError {
 public:
  using PartitionError::PartitionError;
};

struct ReductionStep {
  enum class Surgery { remove_edge, c3_shared, c3_distinct };

  std::string configuration;
  std::vector<Vertex> occurrence;  // image of the configuration vertices
  std::vector<std::string> labels;
  Surgery surgery = Surgery::remove_edge;
  std::vector<Edge> removed;
  std::vector<Edge> added;
  // C3 roles: v the 9-vertex, x and y its 2-neighbours, a and b their other neighbours
  Vertex a = -1, b = -1, v = -1, x = -1, y = -1;
  std::string extension;  // filled in by extend()
};

std::string to_string(ReductionStep::Surgery s);

/// One reduction on the first catalog configuration found in g. Vertices
/// are never renumbered; removed vertices stay behind isolated.
std::pair<Graph, ReductionStep> reduce_step(const Graph& g);
/// The same reduction for a given catalog configuration and occurrence.
std::pair<Graph, ReductionStep> reduce_with(const Graph& g, const Configuration& conf, const Occurrence& occurrence);

/// Lifts a colouring of the reduced graph back to g.
EdgeColoring extend(const Graph& g, ReductionStep& step, const EdgeColoring& sub);

struct PartitionOptions {
  std::size_t base_edges = 6;  // brute force at or below this many edges
};

/// Four linear forests (colours 1..4) and a matching (colour 0).
EdgeColoring partition(const Graph& g, std::vector<ReductionStep>* trace = nullptr, const PartitionOptions& options = {});

nlohmann::json to_json(const ReductionStep& step);

}  // namespace linarb
