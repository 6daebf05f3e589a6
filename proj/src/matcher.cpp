#include <algorithm>
#include <functional>
#include <set>

#include "linarb/configuration.hpp"

namespace linarb {
namespace {

// Pattern vertices in search order: lowest bound first, then repeatedly the
// vertex with most already-placed neighbours.
std::vector<int> search_order(const Configuration& conf) {
  const Graph& h = conf.pattern();
  const int n = h.order();
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  while (static_cast<int>(order.size()) < n) {
    int best = -1;
    std::tuple<int, int, int> best_key{};
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      int links = 0;
      for (int w : h.neighbours(v)) links += placed[w];
      std::tuple<int, int, int> key{links, -conf.bound(v), h.degree(v)};
      if (best < 0 || key > best_key) {
        best = v;
        best_key = key;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }
  return order;
}

// Calls visit(image) for each embedding until it returns false.
void embed(const Graph& g, const Configuration& conf, const std::function<bool(const std::vector<Vertex>&)>& visit) {
  const Graph& h = conf.pattern();
  const int n = h.order();
  if (n > g.order()) return;
  const std::vector<int> order = search_order(conf);
  std::vector<Vertex> image(n, -1);
  std::vector<char> used(g.order(), 0);

  auto fits = [&](int p, Vertex x) {
    if (used[x]) return false;
    if (g.degree(x) > conf.bound(p) || g.degree(x) < h.degree(p)) return false;
    for (int q : h.neighbours(p))
      if (image[q] >= 0 && !g.adjacent(image[q], x)) return false;
    return true;
  };

  std::function<bool(int)> step = [&](int k) -> bool {
    if (k == n) return visit(image);
    const int p = order[k];
    int via = -1;
    for (int q : h.neighbours(p))
      if (image[q] >= 0) {
        via = q;
        break;
      }
    auto try_vertex = [&](Vertex x) {
      if (!fits(p, x)) return true;
      image[p] = x;
      used[x] = 1;
      bool go_on = step(k + 1);
      used[x] = 0;
      image[p] = -1;
      return go_on;
    };
    if (via >= 0) {
      for (Vertex x : g.neighbours(image[via]))
        if (!try_vertex(x)) return false;
    } else {
      for (Vertex x = 0; x < g.order(); ++x)
        if (!try_vertex(x)) return false;
    }
    return true;
  };
  step(0);
}

// Permutations of V(H) preserving edges and bounds.
std::vector<std::vector<int>> automorphisms(const Configuration& conf) {
  const Graph& h = conf.pattern();
  std::vector<std::vector<int>> out;
  // an automorphism is an embedding of H into itself with equal bounds
  embed(h, conf, [&](const std::vector<Vertex>& image) {
    for (int v = 0; v < h.order(); ++v)
      if (conf.bound(image[v]) != conf.bound(v)) return true;
    out.push_back(image);
    return true;
  });
  return out;
}

}  // namespace

std::vector<Occurrence> match(const Graph& g, const Configuration& conf) {
  // occurrences differing by a bound-preserving automorphism of H are the
  // same subgraph; keep the lexicographically smallest image
  const auto autos = automorphisms(conf);

  std::set<Occurrence> seen;
  std::vector<Occurrence> out;
  embed(g, conf, [&](const std::vector<Vertex>& image) {
    Occurrence canonical{image};
    for (const auto& sigma : autos) {
      Occurrence moved{std::vector<Vertex>(image.size())};
      for (std::size_t v = 0; v < image.size(); ++v) moved.image[v] = image[sigma[v]];
      canonical = std::min(canonical, moved);
    }
    if (seen.insert(canonical).second) out.push_back(canonical);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Occurrence> match_first(const Graph& g, const Configuration& conf) {
  std::optional<Occurrence> out;
  embed(g, conf, [&](const std::vector<Vertex>& image) {
    out = Occurrence{image};
    return false;
  });
  return out;
}

std::optional<Hit> find_any(const Graph& g) {
  for (const auto& conf : catalog())
    if (auto occ = match_first(g, conf)) return Hit{conf, *occ};
  return std::nullopt;
}

}  // namespace linarb
