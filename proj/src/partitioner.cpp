#include "linarb/partitioner.hpp"

#include <algorithm>

#include "linarb/reducer.hpp"

namespace linarb {

std::string to_string(ReductionStep::Surgery s) {
  switch (s) {
    case ReductionStep::Surgery::remove_edge: return "remove-edge";
    case ReductionStep::Surgery::c3_shared: return "c3-shared-neighbour";
    case ReductionStep::Surgery::c3_distinct: return "c3-distinct-neighbours";
  }
  return "?";
}

namespace {

Vertex other_neighbour(const Graph& g, Vertex x, Vertex v) {
  for (Vertex w : g.neighbours(x))
    if (w != v) return w;
  return -1;
}

std::pair<Graph, ReductionStep> c3_surgery(const Graph& g, ReductionStep step) {
  // pattern order is u, v, w with u and w the 2-neighbours of v
  step.x = step.occurrence[0];
  step.v = step.occurrence[1];
  step.y = step.occurrence[2];
  if (g.degree(step.x) != 2 || g.degree(step.y) != 2) throw PartitionError("C3 needs two 2-neighbours");
  step.a = other_neighbour(g, step.x, step.v);
  step.b = other_neighbour(g, step.y, step.v);
  if (step.a == step.y || g.adjacent(step.a, step.v) || g.adjacent(step.b, step.v))
    throw PartitionError("C3 met without C2 excluded");
  if (step.a == step.b) {
    step.surgery = ReductionStep::Surgery::c3_shared;
    step.removed = {Edge(step.a, step.x), Edge(step.x, step.v)};
    step.added = {Edge(step.a, step.v)};
  } else {
    step.surgery = ReductionStep::Surgery::c3_distinct;
    step.removed = {Edge(step.a, step.x), Edge(step.x, step.v), Edge(step.v, step.y), Edge(step.y, step.b)};
    step.added = {Edge(step.a, step.v), Edge(step.v, step.b)};
  }
  Graph next = g.without_edges(step.removed).with_edges(step.added);
  return {std::move(next), std::move(step)};
}

Color sub_color(const EdgeColoring& c, Vertex p, Vertex q) {
  auto col = c.get(Edge(p, q));
  if (!col) throw ExtensionError("edge " + std::to_string(p) + "-" + std::to_string(q) + " is not coloured");
  return *col;
}

}  // namespace

std::pair<Graph, ReductionStep> reduce_step(const Graph& g) {
  if (g.size() == 0) throw PartitionError("graph has no edges");
  auto hit = find_any(g);
  if (!hit) throw PartitionError("no configuration found: input not planar or out of scope");
  return reduce_with(g, hit->configuration, hit->occurrence);
}

std::pair<Graph, ReductionStep> reduce_with(const Graph& g, const Configuration& conf, const Occurrence& occurrence) {
  ReductionStep step;
  step.configuration = conf.name();
  step.occurrence = occurrence.image;
  step.labels = conf.labels();
  if (conf.family() == "C3") return c3_surgery(g, std::move(step));
  const Edge anchor = conf.anchor();
  step.removed = {Edge(step.occurrence[anchor.u], step.occurrence[anchor.v])};
  Graph next = g.without_edges(step.removed);
  return {std::move(next), std::move(step)};
}

EdgeColoring extend(const Graph& g, ReductionStep& step, const EdgeColoring& sub) {
  EdgeColoring c = sub;
  for (const Edge& e : step.added) c.erase(e);

  if (step.surgery == ReductionStep::Surgery::c3_shared) {
    const Color alpha = sub_color(sub, step.a, step.y);
    const Color beta = sub_color(sub, step.y, step.v);
    const Color gamma = sub_color(sub, step.a, step.v);
    c.set(Edge(step.y, step.v), gamma);
    c.set(Edge(step.a, step.x), gamma);
    c.set(Edge(step.x, step.v), beta);
    step.extension = "ay=" + std::to_string(alpha) + " yv=" + std::to_string(gamma) + " ax=" + std::to_string(gamma) +
                     " xv=" + std::to_string(beta);
    return c;
  }
  if (step.surgery == ReductionStep::Surgery::c3_distinct) {
    const Color alpha = sub_color(sub, step.a, step.v);
    const Color beta = sub_color(sub, step.v, step.b);
    c.set(Edge(step.a, step.x), alpha);
    c.set(Edge(step.x, step.v), beta);
    c.set(Edge(step.v, step.y), alpha);
    c.set(Edge(step.y, step.b), beta);
    step.extension = "ax=" + std::to_string(alpha) + " xv=" + std::to_string(beta) + " vy=" + std::to_string(alpha) +
                     " yb=" + std::to_string(beta);
    return c;
  }

  const auto found = catalog_lookup(step.configuration);
  if (found.empty()) throw ExtensionError("unknown configuration " + step.configuration);
  const Configuration& conf = found.front();
  const auto& image = step.occurrence;

  if (conf.family() == "C1") {
    const Vertex u = image[0];
    const Vertex v = image[1];
    Color chosen = kMatchingColor;
    for (Color i = 1; i < kColorCount; ++i)
      if (color_degree(c, u, i) + color_degree(c, v, i) <= 1) {
        chosen = i;
        break;
      }
    if (chosen == kMatchingColor && (color_degree(c, u, 0) > 0 || color_degree(c, v, 0) > 0))
      throw ExtensionError("no colour left for the C1 edge");
    c.set(Edge(u, v), chosen);
    step.extension = "uv=" + std::to_string(chosen);
    return c;
  }

  std::vector<Edge> h_edges;
  for (const Edge& e : conf.pattern().edges()) h_edges.emplace_back(image[e.u], image[e.v]);
  for (const Edge& e : h_edges) c.erase(e);
  const ColoringClass cls = extract_outer_class(g, c, image, h_edges);
  const auto inner = find_consistent_inner(conf, cls, true);
  if (!inner) throw ExtensionError(conf.name() + " failed to extend a colouring");
  step.extension.clear();
  for (std::size_t k = 0; k < h_edges.size(); ++k) {
    c.set(h_edges[k], (*inner)[k]);
    if (!step.extension.empty()) step.extension += ' ';
    step.extension += conf.edge_label(conf.pattern().edges()[k]) + "=" + std::to_string((*inner)[k]);
  }
  return c;
}

EdgeColoring partition(const Graph& g, std::vector<ReductionStep>* trace, const PartitionOptions& options) {
  if (g.max_degree() > kMaxDegree)
    throw DegreeError("maximum degree " + std::to_string(g.max_degree()) + " exceeds 9");

  std::vector<std::pair<Graph, ReductionStep>> stack;
  Graph current = g;
  while (current.size() > options.base_edges) {
    auto [next, step] = reduce_step(current);
    if (next.size() >= current.size()) throw PartitionError("reduction did not shrink the graph");
    stack.emplace_back(std::move(current), std::move(step));
    current = std::move(next);
  }

  auto base = brute_force_partition(current, PartitionSpec{});
  if (!base) throw PartitionError("base graph has no partition");
  EdgeColoring c = std::move(*base);
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) c = extend(it->first, it->second, c);

  if (!validate(g, c).empty()) throw ExtensionError("extended colouring failed validation");
  if (trace) {
    trace->clear();
    for (auto& [graph, step] : stack) trace->push_back(std::move(step));
  }
  return c;
}

nlohmann::json to_json(const ReductionStep& step) {
  nlohmann::json occurrence = nlohmann::json::object();
  for (std::size_t k = 0; k < step.occurrence.size(); ++k) occurrence[step.labels.at(k)] = step.occurrence[k];
  auto edges = [](const std::vector<Edge>& list) {
    nlohmann::json out = nlohmann::json::array();
    for (const Edge& e : list) out.push_back({e.u, e.v});
    return out;
  };
  return {{"configuration", step.configuration},
          {"occurrence", occurrence},
          {"surgery", to_string(step.surgery)},
          {"removed", edges(step.removed)},
          {"added", edges(step.added)},
          {"extension", step.extension}};
}

}  // namespace linarb
