#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linarb/graph.hpp"

namespace linarb {

inline constexpr int kMaxDegree = 9;

class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pattern graph H with an upper bound on the host degree of every
/// vertex and the anchor edge removed by the standard reducibility proof.
class Configuration {
 public:
  /// Throws ConfigurationError unless degree_H(v) <= bound(v) <= 9 for all
  /// v and the anchor is an edge of H.
  Configuration(std::string name, std::vector<std::string> labels, Graph pattern, std::vector<int> bounds, Edge anchor,
                std::string family = {});

  const std::string& name() const { return name_; }
  /// Catalog family, e.g. "C2" for "C2(4)". Equals name() for singletons.
  const std::string& family() const { return family_; }
  const Graph& pattern() const { return pattern_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int v) const { return labels_.at(v); }
  int bound(int v) const { return bounds_.at(v); }
  const std::vector<int>& bounds() const { return bounds_; }
  Edge anchor() const { return anchor_; }
  std::size_t anchor_index() const;

  /// Number of outer edge slots at v: bound(v) - degree_H(v).
  int slots(int v) const { return bounds_.at(v) - pattern_.degree(v); }
  int order() const { return pattern_.order(); }

  Configuration with_anchor(Edge anchor) const;
  Configuration with_bounds(std::vector<int> bounds) const;

  std::string edge_label(Edge e) const { return label(e.u) + label(e.v); }

 private:
  std::string name_;
  std::string family_;
  std::vector<std::string> labels_;
  Graph pattern_;
  std::vector<int> bounds_;
  Edge anchor_;
};

/// Configurations C1..C10 in priority order.
const std::vector<Configuration>& catalog();

/// Catalog entries whose name or family equals key, in catalog order.
std::vector<Configuration> catalog_lookup(const std::string& key);

/// The anchor rule used by the catalog: among edges at a vertex of smallest
/// bound, the one with the smallest bound sum; ties by edge index.
Edge default_anchor(const Graph& pattern, const std::vector<int>& bounds);

// JSON schema: {name, vertices:[{id, bound}], edges:[[u,v]], anchor:[u,v]}
// with string or integer ids.
nlohmann::json to_json(const Configuration& conf);
Configuration configuration_from_json(const nlohmann::json& j);

/// Injective map V(H) -> V(G).
struct Occurrence {
  std::vector<Vertex> image;
  bool operator==(const Occurrence&) const = default;
  auto operator<=>(const Occurrence&) const = default;
};

/// All injective, edge-preserving embeddings of the pattern whose images
/// respect the degree bounds (non-induced).
std::vector<Occurrence> match(const Graph& g, const Configuration& conf);
std::optional<Occurrence> match_first(const Graph& g, const Configuration& conf);

struct Hit {
  Configuration configuration;
  Occurrence occurrence;
};

/// First occurrence of a catalog configuration, in catalog priority order.
std::optional<Hit> find_any(const Graph& g);

}  // namespace linarb
