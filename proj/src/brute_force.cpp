#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "linarb/coloring.hpp"

namespace linarb {
namespace {

// Backtracking state. Every forest colour class is a disjoint union of
// paths, so it suffices to know, for each path endpoint, the other end.
class PartitionSearch {
 public:
  PartitionSearch(const Graph& g, const PartitionSpec& spec, std::vector<Edge> order)
      : spec_(spec), order_(std::move(order)), n_(g.order()) {
    degree_.assign(spec.colors(), std::vector<int>(n_, 0));
    end_.assign(spec.colors(), std::vector<Vertex>(n_));
    for (auto& ends : end_) std::iota(ends.begin(), ends.end(), 0);
    chosen_.assign(order_.size(), -1);
  }

  // Colours edge k with c if allowed; returns false without changes otherwise.
  bool push(std::size_t k, Color c) {
    const Edge& e = order_[k];
    const int cap = spec_.is_matching(c) ? 1 : 2;
    if (degree_[c][e.u] >= cap || degree_[c][e.v] >= cap) return false;
    if (!spec_.is_matching(c)) {
      auto& ends = end_[c];
      if (ends[e.u] == e.v) return false;  // closes a cycle
      Vertex a = ends[e.u];
      Vertex b = ends[e.v];
      saved_.push_back({a, ends[a], b, ends[b]});
      ends[a] = b;
      ends[b] = a;
    }
    ++degree_[c][e.u];
    ++degree_[c][e.v];
    chosen_[k] = c;
    return true;
  }

  void pop(std::size_t k) {
    const Edge& e = order_[k];
    Color c = chosen_[k];
    --degree_[c][e.u];
    --degree_[c][e.v];
    if (!spec_.is_matching(c)) {
      auto [a, ea, b, eb] = saved_.back();
      saved_.pop_back();
      end_[c][b] = eb;
      end_[c][a] = ea;
    }
    chosen_[k] = -1;
  }

  bool solve(std::size_t k) {
    if (k == order_.size()) return true;
    for (Color c = 0; c < spec_.colors(); ++c) {
      if (!push(k, c)) continue;
      if (solve(k + 1)) return true;
      pop(k);
    }
    return false;
  }

  EdgeColoring result() const {
    EdgeColoring out;
    for (std::size_t k = 0; k < order_.size(); ++k) out.set(order_[k], chosen_[k]);
    return out;
  }

 private:
  struct Saved {
    Vertex a, ea, b, eb;
  };
  PartitionSpec spec_;
  std::vector<Edge> order_;
  int n_;
  std::vector<std::vector<int>> degree_;
  std::vector<std::vector<Vertex>> end_;
  std::vector<Saved> saved_;
  std::vector<Color> chosen_;
};

}  // namespace

std::optional<EdgeColoring> brute_force_partition(const Graph& g, const PartitionSpec& spec,
                                                  const BruteForceOptions& options) {
  if (spec.forests < 0 || spec.matchings < 0 || spec.colors() < 1) throw ColoringError("invalid partition spec");
  if (g.size() > options.max_edges)
    throw SizeGuardError("brute force limited to " + std::to_string(options.max_edges) + " edges, graph has " +
                         std::to_string(g.size()));
  std::vector<std::size_t> idx(g.size());
  std::iota(idx.begin(), idx.end(), 0);
  const auto& edges = g.edges();
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return g.degree(edges[a].u) + g.degree(edges[a].v) > g.degree(edges[b].u) + g.degree(edges[b].v);
  });
  std::vector<Edge> order;
  for (std::size_t k : idx) order.push_back(edges[k]);
  if (order.empty()) return EdgeColoring{};

  if (options.workers <= 1) {
    PartitionSearch search(g, spec, order);
    if (!search.solve(0)) return std::nullopt;
    return search.result();
  }

  // one branch per colour of the first edge; lowest colour that succeeds wins
  std::vector<std::optional<EdgeColoring>> branch(spec.colors());
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  const int workers = std::min(options.workers, spec.colors());
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int c = next++; c < spec.colors(); c = next++) {
        PartitionSearch search(g, spec, order);
        if (search.push(0, c) && search.solve(1)) branch[c] = search.result();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& b : branch)
    if (b) return b;
  return std::nullopt;
}

}  // namespace linarb
