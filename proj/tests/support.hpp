#pragma once

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "linarb/coloring.hpp"
#include "linarb/configuration.hpp"
#include "linarb/plane_graph.hpp"

namespace support {

using namespace linarb;

inline std::string data_path(const std::string& name) { return std::string(LINARB_TEST_DATA) + "/" + name; }

inline std::vector<Graph> load_corpus() {
  std::ifstream in(data_path("planar_le8.g6"));
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(parse_graph6(line));
  return out;
}

inline PlaneGraph load_rotation(const std::string& name) {
  std::ifstream in(data_path(name));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_rotation(text);
}

// planar embedding from boost; nullopt for non-planar graphs
inline std::optional<PlaneGraph> embed(const Graph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::property<boost::vertex_index_t, int>,
                                   boost::property<boost::edge_index_t, int>>;
  BG bg(g.order());
  for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, bg);
  int k = 0;
  boost::graph_traits<BG>::edge_iterator ei, ee;
  for (boost::tie(ei, ee) = boost::edges(bg); ei != ee; ++ei) boost::put(boost::edge_index, bg, *ei, k++);
  using Embedding = std::vector<std::vector<boost::graph_traits<BG>::edge_descriptor>>;
  Embedding emb(g.order());
  if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                           boost::boyer_myrvold_params::embedding = &emb[0]))
    return std::nullopt;
  std::vector<std::vector<Vertex>> rotation(g.order());
  for (int v = 0; v < g.order(); ++v)
    for (const auto& e : emb[v]) {
      int s = static_cast<int>(boost::source(e, bg));
      int t = static_cast<int>(boost::target(e, bg));
      rotation[v].push_back(s == v ? t : s);
    }
  return PlaneGraph(std::move(rotation));
}

// Random valid (4,1) colouring by randomised greedy with restarts.
inline std::optional<EdgeColoring> random_coloring(const Graph& g, std::mt19937_64& rng, int attempts = 400) {
  std::vector<Edge> edges = g.edges();
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::shuffle(edges.begin(), edges.end(), rng);
    // constrained edges first
    std::stable_sort(edges.begin(), edges.end(), [&](Edge a, Edge b) {
      return g.degree(a.u) + g.degree(a.v) > g.degree(b.u) + g.degree(b.v);
    });
    std::vector<std::array<int, kColorCount>> deg(g.order(), std::array<int, kColorCount>{});
    std::vector<std::vector<int>> parent(kColorCount, std::vector<int>(g.order()));
    for (auto& p : parent) std::iota(p.begin(), p.end(), 0);
    auto find = [&](std::vector<int>& p, int x) {
      while (p[x] != x) x = p[x] = p[p[x]];
      return x;
    };
    EdgeColoring c;
    bool ok = true;
    for (const Edge& e : edges) {
      std::vector<Color> options;
      for (Color i = 0; i < kColorCount; ++i) {
        int cap = i == 0 ? 1 : 2;
        if (deg[e.u][i] >= cap || deg[e.v][i] >= cap) continue;
        if (i > 0 && find(parent[i], e.u) == find(parent[i], e.v)) continue;
        options.push_back(i);
      }
      if (options.empty()) {
        ok = false;
        break;
      }
      Color i = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      ++deg[e.u][i];
      ++deg[e.v][i];
      if (i > 0) parent[i][find(parent[i], e.u)] = find(parent[i], e.v);
      c.set(e, i);
    }
    if (ok) return c;
  }
  return std::nullopt;
}

// Host graph containing conf on vertices 0..n-1 (identity occurrence).
// Spare degree goes to a pool of extra vertices, sometimes to other
// configuration vertices, so outer paths and non-induced edges occur.
inline Graph random_host(const Configuration& conf, std::mt19937_64& rng, int pool = 10) {
  const int n = conf.order();
  std::vector<Edge> edges = conf.pattern().edges();
  std::vector<int> deg(n + pool, 0);
  for (const Edge& e : edges) ++deg[e.u], ++deg[e.v];
  auto has = [&](Vertex a, Vertex b) { return std::find(edges.begin(), edges.end(), Edge(a, b)) != edges.end(); };
  std::uniform_int_distribution<int> coin(0, 99);
  for (int v = 0; v < n; ++v) {
    int target = conf.bound(v) - (coin(rng) < 20 ? 1 : 0);
    for (int tries = 0; deg[v] < target && tries < 200; ++tries) {
      Vertex w;
      if (coin(rng) < 10) w = std::uniform_int_distribution<int>(0, n - 1)(rng);
      else w = n + std::uniform_int_distribution<int>(0, pool - 1)(rng);
      if (w == v || has(v, w)) continue;
      if (w < n && deg[w] >= conf.bound(w)) continue;
      if (w >= n && deg[w] >= 4) continue;
      edges.emplace_back(v, w);
      ++deg[v], ++deg[w];
    }
  }
  for (int k = 0; k < pool; ++k) {
    Vertex a = n + std::uniform_int_distribution<int>(0, pool - 1)(rng);
    Vertex b = n + std::uniform_int_distribution<int>(0, pool - 1)(rng);
    if (a != b && !has(a, b) && deg[a] < 4 && deg[b] < 4) {
      edges.emplace_back(a, b);
      ++deg[a], ++deg[b];
    }
  }
  return Graph::build(n + pool, edges);
}

}  // namespace support
