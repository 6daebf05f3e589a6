#include "linarb/configuration.hpp"

#include <algorithm>
#include <map>

namespace linarb {

Configuration::Configuration(std::string name, std::vector<std::string> labels, Graph pattern, std::vector<int> bounds,
                             Edge anchor, std::string family)
    : name_(std::move(name)),
      family_(family.empty() ? name_ : std::move(family)),
      labels_(std::move(labels)),
      pattern_(std::move(pattern)),
      bounds_(std::move(bounds)),
      anchor_(anchor) {
  const int n = pattern_.order();
  if (n == 0) throw ConfigurationError(name_ + ": empty pattern");
  if (static_cast<int>(bounds_.size()) != n || static_cast<int>(labels_.size()) != n)
    throw ConfigurationError(name_ + ": bounds/labels do not match the pattern");
  for (int v = 0; v < n; ++v) {
    if (bounds_[v] < pattern_.degree(v))
      throw ConfigurationError(name_ + ": bound of " + labels_[v] + " is below its pattern degree");
    if (bounds_[v] > kMaxDegree) throw ConfigurationError(name_ + ": bound of " + labels_[v] + " exceeds 9");
  }
  if (!pattern_.adjacent(anchor_.u, anchor_.v)) throw ConfigurationError(name_ + ": anchor is not a pattern edge");
}

std::size_t Configuration::anchor_index() const { return *pattern_.edge_index(anchor_.u, anchor_.v); }

Configuration Configuration::with_anchor(Edge anchor) const {
  return Configuration(name_, labels_, pattern_, bounds_, anchor, family_);
}

Configuration Configuration::with_bounds(std::vector<int> bounds) const {
  return Configuration(name_, labels_, pattern_, std::move(bounds), anchor_, family_);
}

Edge default_anchor(const Graph& pattern, const std::vector<int>& bounds) {
  if (pattern.size() == 0) throw ConfigurationError("pattern has no edges");
  int lowest = kMaxDegree + 1;
  for (const Edge& e : pattern.edges()) lowest = std::min({lowest, bounds.at(e.u), bounds.at(e.v)});
  std::optional<Edge> best;
  int best_sum = 0;
  for (const Edge& e : pattern.edges()) {
    if (bounds[e.u] != lowest && bounds[e.v] != lowest) continue;
    int sum = bounds[e.u] + bounds[e.v];
    if (!best || sum < best_sum) {
      best = e;
      best_sum = sum;
    }
  }
  return *best;
}

namespace {

struct VertexSpec {
  std::string label;
  int bound;
};

Configuration make(std::string name, std::string family, std::vector<VertexSpec> vertices,
                   std::vector<std::pair<std::string, std::string>> edges) {
  std::map<std::string, int> id;
  std::vector<std::string> labels;
  std::vector<int> bounds;
  for (const auto& [label, bound] : vertices) {
    id[label] = static_cast<int>(labels.size());
    labels.push_back(label);
    bounds.push_back(bound);
  }
  std::vector<Edge> list;
  for (const auto& [a, b] : edges) list.emplace_back(id.at(a), id.at(b));
  Graph pattern = Graph::build(static_cast<int>(labels.size()), list);
  Edge anchor = default_anchor(pattern, bounds);
  return Configuration(std::move(name), std::move(labels), std::move(pattern), std::move(bounds), anchor,
                       std::move(family));
}

std::vector<Configuration> build_catalog() {
  std::vector<Configuration> out;
  // C1: an edge uv with d(u) + d(v) <= 10, as its maximal cap pairs
  for (int a = 1; a <= 5; ++a)
    out.push_back(make("C1(" + std::to_string(a) + "," + std::to_string(10 - a) + ")", "C1",
                       {{"u", a}, {"v", 10 - a}}, {{"u", "v"}}));
  // C2: triangle uvw plus a pendant neighbour x of u, d(v) = d(x) = 11 - d(u)
  for (int k = 3; k <= 9; ++k)
    out.push_back(make("C2(" + std::to_string(k) + ")", "C2", {{"u", k}, {"v", 11 - k}, {"w", 9}, {"x", 11 - k}},
                       {{"u", "v"}, {"v", "w"}, {"u", "w"}, {"u", "x"}}));
  // C3: a vertex with two 2-neighbours
  out.push_back(make("C3", "C3", {{"u", 2}, {"v", 9}, {"w", 2}}, {{"u", "v"}, {"v", "w"}}));
  // C4: u adjacent to every vertex of the path x y w s t, d(y) = d(s) = 3
  out.push_back(make("C4", "C4", {{"u", 9}, {"x", 9}, {"y", 3}, {"w", 9}, {"s", 3}, {"t", 9}},
                     {{"u", "x"}, {"u", "y"}, {"u", "w"}, {"u", "s"}, {"u", "t"},
                      {"x", "y"}, {"y", "w"}, {"w", "s"}, {"s", "t"}}));
  // C5: u with weak 3-neighbours y (triangles uxy, uwy) and s (uzs, ust) and a third 3-neighbour r
  out.push_back(make("C5", "C5",
                     {{"u", 9}, {"x", 9}, {"y", 3}, {"w", 9}, {"z", 9}, {"s", 3}, {"t", 9}, {"r", 3}},
                     {{"u", "x"}, {"u", "y"}, {"u", "w"}, {"u", "z"}, {"u", "s"}, {"u", "t"}, {"u", "r"},
                      {"x", "y"}, {"y", "w"}, {"z", "s"}, {"s", "t"}}));
  // C6: u with a weak 3-neighbour y (triangles uxy, uyz) and a 2-neighbour w
  out.push_back(make("C6", "C6", {{"u", 9}, {"x", 9}, {"y", 3}, {"z", 9}, {"w", 2}},
                     {{"u", "x"}, {"u", "y"}, {"u", "z"}, {"u", "w"}, {"x", "y"}, {"y", "z"}}));
  // C7: an 8-vertex u with a weak 3-neighbour y and a 4-neighbour w
  out.push_back(make("C7", "C7", {{"u", 8}, {"x", 9}, {"y", 3}, {"z", 9}, {"w", 4}},
                     {{"u", "x"}, {"u", "y"}, {"u", "z"}, {"u", "w"}, {"x", "y"}, {"y", "z"}}));
  // C8: a triangle with d(u) <= 5, d(v) <= 6, d(w) <= 8
  out.push_back(make("C8", "C8", {{"u", 5}, {"v", 6}, {"w", 8}}, {{"u", "v"}, {"v", "w"}, {"u", "w"}}));
  // C9: u with 3-neighbours w, z, a 2-neighbour x, and a neighbour y adjacent to z and x
  out.push_back(make("C9", "C9", {{"u", 9}, {"w", 3}, {"z", 3}, {"x", 2}, {"y", 9}},
                     {{"u", "w"}, {"u", "z"}, {"u", "x"}, {"u", "y"}, {"y", "x"}, {"y", "z"}}));
  // C10: u with a 2-neighbour v and 3-neighbours y, s sharing the neighbour z; x ~ y, t ~ s
  out.push_back(make("C10", "C10", {{"u", 9}, {"v", 2}, {"x", 9}, {"y", 3}, {"z", 9}, {"s", 3}, {"t", 9}},
                     {{"u", "v"}, {"u", "x"}, {"u", "y"}, {"u", "s"}, {"u", "t"},
                      {"x", "y"}, {"y", "z"}, {"z", "s"}, {"s", "t"}}));
  return out;
}

}  // namespace

const std::vector<Configuration>& catalog() {
  static const std::vector<Configuration> entries = build_catalog();
  return entries;
}

std::vector<Configuration> catalog_lookup(const std::string& key) {
  std::vector<Configuration> out;
  for (const auto& conf : catalog())
    if (conf.name() == key || conf.family() == key) out.push_back(conf);
  return out;
}

nlohmann::json to_json(const Configuration& conf) {
  nlohmann::json vertices = nlohmann::json::array();
  for (int v = 0; v < conf.order(); ++v) vertices.push_back({{"id", conf.label(v)}, {"bound", conf.bound(v)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : conf.pattern().edges()) edges.push_back({conf.label(e.u), conf.label(e.v)});
  return {{"name", conf.name()},
          {"vertices", vertices},
          {"edges", edges},
          {"anchor", {conf.label(conf.anchor().u), conf.label(conf.anchor().v)}}};
}

Configuration configuration_from_json(const nlohmann::json& j) {
  try {
    std::string name = j.at("name").get<std::string>();
    auto id_string = [](const nlohmann::json& id) {
      if (id.is_string()) return id.get<std::string>();
      if (id.is_number_integer()) return std::to_string(id.get<long long>());
      throw ConfigurationError("vertex ids must be strings or integers");
    };
    std::map<std::string, int> index;
    std::vector<std::string> labels;
    std::vector<int> bounds;
    for (const auto& v : j.at("vertices")) {
      std::string id = id_string(v.at("id"));
      if (index.count(id)) throw ConfigurationError(name + ": duplicate vertex id " + id);
      index[id] = static_cast<int>(labels.size());
      labels.push_back(id);
      bounds.push_back(v.at("bound").get<int>());
    }
    auto lookup = [&](const nlohmann::json& id) {
      auto it = index.find(id_string(id));
      if (it == index.end()) throw ConfigurationError(name + ": unknown vertex " + id_string(id));
      return it->second;
    };
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ConfigurationError(name + ": edges must be pairs");
      edges.emplace_back(lookup(e[0]), lookup(e[1]));
    }
    Graph pattern = Graph::build(static_cast<int>(labels.size()), edges);
    Edge anchor;
    if (j.contains("anchor")) {
      const auto& a = j.at("anchor");
      if (!a.is_array() || a.size() != 2) throw ConfigurationError(name + ": anchor must be a pair");
      anchor = Edge(lookup(a[0]), lookup(a[1]));
    } else {
      anchor = default_anchor(pattern, bounds);
    }
    return Configuration(name, std::move(labels), std::move(pattern), std::move(bounds), anchor);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("malformed configuration JSON: ") + e.what());
  } catch (const GraphError& e) {
    throw ConfigurationError(std::string("malformed configuration pattern: ") + e.what());
  }
}

}  // namespace linarb
