#include <array>
#include <algorithm>
#include <numeric>

#include "linarb/plane_graph.hpp"

namespace linarb {
namespace {

using Rotation = std::vector<std::vector<Vertex>>;

void insert_after(std::vector<Vertex>& rot, Vertex anchor, Vertex added) {
  auto it = std::find(rot.begin(), rot.end(), anchor);
  rot.insert(it + 1, added);
}

void erase_value(std::vector<Vertex>& rot, Vertex value) { rot.erase(std::find(rot.begin(), rot.end(), value)); }

// Face walks of a triangulated rotation; only triangles are returned.
std::vector<std::array<Vertex, 3>> triangles(const Rotation& rot) {
  std::vector<std::array<Vertex, 3>> out;
  for (const Face& f : trace_faces(PlaneGraph(rot)))
    if (f.length() == 3) out.push_back({f.walk[0], f.walk[1], f.walk[2]});
  return out;
}

// Inserts a new vertex into the face walked a -> b -> c.
void stack_vertex(Rotation& rot, const std::array<Vertex, 3>& face) {
  auto [a, b, c] = face;
  Vertex d = static_cast<Vertex>(rot.size());
  insert_after(rot[b], a, d);
  insert_after(rot[c], b, d);
  insert_after(rot[a], c, d);
  rot.push_back({b, a, c});
}

// Replaces edge uv, shared by faces u->v->x and v->u->y, with xy.
bool flip(Rotation& rot, Vertex u, Vertex v, int max_degree) {
  PlaneGraph pg(rot);
  Vertex x = pg.successor(v, u);
  Vertex y = pg.successor(u, v);
  if (x == y || pg.graph().adjacent(x, y)) return false;
  if (pg.successor(x, v) != u || pg.successor(y, u) != v) return false;  // not two triangles
  if (pg.graph().degree(u) <= 3 || pg.graph().degree(v) <= 3) return false;
  if (pg.graph().degree(x) >= max_degree || pg.graph().degree(y) >= max_degree) return false;
  erase_value(rot[u], v);
  erase_value(rot[v], u);
  insert_after(rot[y], u, x);
  insert_after(rot[x], v, y);
  return true;
}

}  // namespace

PlaneGraph random_plane_graph(std::mt19937_64& rng, const PlaneGenOptions& options) {
  if (options.vertices < 1) throw GraphError("random_plane_graph: need at least one vertex");
  if (options.vertices == 1) return PlaneGraph(Rotation(1));
  if (options.vertices == 2) return PlaneGraph(Rotation{{1}, {0}});
  const int cap = std::max(3, options.max_degree);

  Rotation rot{{1, 2}, {2, 0}, {0, 1}};
  std::vector<int> degree{2, 2, 2};
  while (static_cast<int>(rot.size()) < options.vertices) {
    auto faces = triangles(rot);
    std::vector<std::array<Vertex, 3>> open;
    for (const auto& f : faces)
      if (degree[f[0]] < cap && degree[f[1]] < cap && degree[f[2]] < cap) open.push_back(f);
    if (open.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const auto face = open[pick(rng)];
    stack_vertex(rot, face);
    for (Vertex w : face) ++degree[w];
    degree.push_back(3);

    // a few random flips keep the triangulation from being purely stacked
    std::uniform_int_distribution<Vertex> any(0, static_cast<Vertex>(rot.size()) - 1);
    for (int attempt = 0; attempt < 2; ++attempt) {
      Vertex u = any(rng);
      if (rot[u].empty()) continue;
      std::uniform_int_distribution<std::size_t> nb(0, rot[u].size() - 1);
      Vertex v = rot[u][nb(rng)];
      if (flip(rot, u, v, cap)) {
        for (Vertex w = 0; w < static_cast<Vertex>(rot.size()); ++w) degree[w] = static_cast<int>(rot[w].size());
      }
    }
  }

  // delete edges while keeping the graph connected
  std::vector<Edge> edges = PlaneGraph(rot).graph().edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  std::bernoulli_distribution keep(options.keep_edge_probability);
  for (const Edge& e : edges) {
    if (keep(rng)) continue;
    Rotation trial = rot;
    erase_value(trial[e.u], e.v);
    erase_value(trial[e.v], e.u);
    PlaneGraph candidate(trial);
    if (candidate.graph().connected()) rot = std::move(trial);
  }
  return PlaneGraph(std::move(rot));
}

}  // namespace linarb
