#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "linarb/reducer.hpp"

using namespace linarb;

namespace {

const Configuration& entry(const std::string& name) {
  for (const auto& c : catalog())
    if (c.name() == name) return c;
  throw std::runtime_error("missing " + name);
}

Configuration single_edge(int a, int b) {
  std::vector<Edge> e{Edge(0, 1)};
  return Configuration("edge-" + std::to_string(a) + "-" + std::to_string(b), {"u", "v"}, Graph::build(2, e), {a, b},
                       Edge(0, 1));
}

ColorCounts counts(std::initializer_list<int> colors) {
  ColorCounts m{};
  for (int c : colors) ++m[c];
  return m;
}

// sorted tuples over {0..4} of the given length, filtered by the caps
std::size_t multiset_oracle(int slots) {
  std::size_t total = 0;
  std::vector<int> t(slots, 0);
  auto rec = [&](auto&& self, int k, int lo) -> void {
    if (k == slots) {
      int zeros = static_cast<int>(std::count(t.begin(), t.end(), 0));
      bool ok = zeros <= 1;
      for (int c = 1; c <= 4; ++c) ok = ok && std::count(t.begin(), t.end(), c) <= 2;
      total += ok;
      return;
    }
    for (int c = lo; c <= 4; ++c) {
      t[k] = c;
      self(self, k + 1, c);
    }
  };
  rec(rec, 0, 0);
  return total;
}

// every subset of candidate pairs that is endpoint-disjoint per colour
std::size_t path_set_oracle(const OuterMultisets& ms) {
  std::vector<PathTriple> pairs;
  for (Color i = 1; i < kColorCount; ++i)
    for (int u = 0; u < static_cast<int>(ms.size()); ++u)
      for (int v = u + 1; v < static_cast<int>(ms.size()); ++v)
        if (ms[u][i] == 1 && ms[v][i] == 1) pairs.push_back({i, u, v});
  std::size_t total = 0;
  for (std::uint64_t mask = 0; mask < (1ull << pairs.size()); ++mask) {
    std::set<std::pair<int, int>> ends;
    bool ok = true;
    for (std::size_t k = 0; k < pairs.size() && ok; ++k)
      if (mask >> k & 1)
        ok = ends.insert({pairs[k].color, pairs[k].u}).second && ends.insert({pairs[k].color, pairs[k].v}).second;
    total += ok;
  }
  return total;
}

// existence of a consistent inner colouring by trying all 5^m assignments
bool inner_oracle(const Configuration& conf, const ColoringClass& cls, bool include_anchor) {
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < conf.pattern().size(); ++k)
    if (include_anchor || k != conf.anchor_index()) edges.push_back(conf.pattern().edges()[k]);
  const int n = conf.order();
  std::vector<int> col(edges.size(), 0);
  while (true) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      ColorCounts m = cls.multisets[v];
      for (std::size_t k = 0; k < edges.size(); ++k)
        if (edges[k].has(v)) ++m[col[k]];
      ok = m[0] <= 1 && m[1] <= 2 && m[2] <= 2 && m[3] <= 2 && m[4] <= 2;
    }
    for (Color i = 1; i < kColorCount && ok; ++i) {
      std::vector<int> parent(n);
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x];
        return x;
      };
      auto join = [&](int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
      };
      for (const auto& t : cls.paths)
        if (t.color == i) ok = ok && join(t.u, t.v);
      for (std::size_t k = 0; k < edges.size(); ++k)
        if (col[k] == i) ok = ok && join(edges[k].u, edges[k].v);
    }
    if (ok) return true;
    std::size_t k = 0;
    while (k < col.size() && ++col[k] == kColorCount) col[k++] = 0;
    if (k == col.size()) return false;
  }
}

nlohmann::json without_timing(nlohmann::json j) {
  j.erase("seconds");
  j.erase("workers");
  return j;
}

}  // namespace

TEST_SUITE("reducer") {

TEST_CASE("multiset counts") {
  CHECK(vertex_multisets(1).size() == 5);
  CHECK(vertex_multisets(2).size() == 14);
  CHECK(vertex_multisets(6).size() == 26);
  for (int s = 0; s <= 9; ++s) REQUIRE(vertex_multisets(s).size() == multiset_oracle(s));
  CHECK(vertex_multisets(9).size() == 1);
  CHECK(vertex_multisets(10).empty());
  // canonical order is lexicographic in the multiplicity vector
  const auto& two = vertex_multisets(2);
  CHECK(std::is_sorted(two.begin(), two.end()));
  CHECK(format_multiset(two.front()) == "{4,4}");
  CHECK(format_multiset(two.back()) == "{0,1}");

  const auto& c13 = entry("C1(3,7)");
  MultisetSpace space(c13);
  CHECK(space.size() == vertex_multisets(2).size() * vertex_multisets(6).size());
  auto all = enumerate_outer_multisets(c13);
  CHECK(all.size() == space.size());
  CHECK(all[1][0] == vertex_multisets(2)[0]);
  CHECK(all[1][1] == vertex_multisets(6)[1]);
}

TEST_CASE("path set examples") {
  CHECK(enumerate_path_sets({counts({1, 1}), counts({2, 2})}).size() == 1);
  auto two = enumerate_path_sets({counts({1}), counts({1})});
  REQUIRE(two.size() == 2);
  CHECK(two[0].empty());
  CHECK(two[1] == OuterPathSet{{1, 0, 1}});
  CHECK(enumerate_path_sets({counts({1}), counts({1}), counts({1})}).size() == 4);
  // involution counts for k candidates of one colour
  std::vector<std::size_t> telephone{1, 1, 2, 4, 10, 26};
  for (int k = 0; k <= 5; ++k) {
    OuterMultisets ms(k, counts({1}));
    REQUIRE(enumerate_path_sets(ms).size() == telephone[k]);
  }
}

TEST_CASE("path sets agree with a subset oracle") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 5)(rng);
    OuterMultisets ms;
    for (int v = 0; v < n; ++v) {
      const auto& list = vertex_multisets(std::uniform_int_distribution<int>(0, 5)(rng));
      ms.push_back(list[std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng)]);
    }
    auto sets = enumerate_path_sets(ms);
    REQUIRE(sets.size() == path_set_oracle(ms));
    REQUIRE(std::set<OuterPathSet>(sets.begin(), sets.end()).size() == sets.size());
    for (const auto& p : sets) REQUIRE(std::is_sorted(p.begin(), p.end()));
  }
}

TEST_CASE("find_consistent_inner on C1(5,5)") {
  const auto& c55 = entry("C1(5,5)");
  auto a = find_consistent_inner(c55, {{counts({1, 1, 2, 2}), counts({3, 3, 4, 4})}, {}}, true);
  REQUIRE(a);
  CHECK((*a)[0] == 0);
  auto b = find_consistent_inner(c55, {{counts({0, 1, 1, 2}), counts({2, 3, 3, 4})}, {}}, true);
  REQUIRE(b);
  CHECK((*b)[0] == 4);
  auto free = find_consistent_inner(c55, {{counts({0, 1, 1, 2}), counts({2, 3, 3, 4})}, {}}, false);
  REQUIRE(free);
  CHECK((*free)[0] == -1);
}

TEST_CASE("virtual path edge closes a cycle") {
  std::vector<Edge> e{Edge(0, 1), Edge(1, 2)};
  Configuration path("path", {"u", "v", "w"}, Graph::build(3, e), {9, 2, 9}, Edge(0, 1));
  // only colour 1 is left at u and at w
  ColoringClass cls{{counts({0, 1, 2, 2, 3, 3, 4, 4}), counts({}), counts({0, 1, 2, 2, 3, 3, 4, 4})}, {}};
  auto open = find_consistent_inner(path, cls, true);
  REQUIRE(open);
  CHECK(*open == InnerColoring{1, 1});
  cls.paths = {{1, 0, 2}};
  CHECK_FALSE(find_consistent_inner(path, cls, true));
  // with room elsewhere a non-cyclic colouring is found
  ColoringClass roomy{{counts({1}), counts({}), counts({1})}, {{1, 0, 2}}};
  auto alt = find_consistent_inner(path, roomy, true);
  REQUIRE(alt);
  CHECK_FALSE(((*alt)[0] == 1 && (*alt)[1] == 1));
}

TEST_CASE("find_consistent_inner agrees with exhaustive search") {
  std::mt19937_64 rng(9);
  for (const char* name : {"C1(3,7)", "C3", "C8", "C2(3)", "C9"}) {
    const auto& conf = entry(name);
    MultisetSpace space(conf);
    for (int trial = 0; trial < 300; ++trial) {
      OuterMultisets ms = space.at(std::uniform_int_distribution<std::uint64_t>(0, space.size() - 1)(rng));
      auto sets = enumerate_path_sets(ms);
      ColoringClass cls{ms, sets[std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng)]};
      for (bool anchor : {false, true}) {
        auto found = find_consistent_inner(conf, cls, anchor);
        REQUIRE(found.has_value() == inner_oracle(conf, cls, anchor));
        if (!found) continue;
        // the returned colouring satisfies the caps
        for (int v = 0; v < conf.order(); ++v) {
          ColorCounts m = ms[v];
          for (std::size_t k = 0; k < conf.pattern().size(); ++k) {
            if ((*found)[k] < 0) continue;
            if (conf.pattern().edges()[k].has(v)) ++m[(*found)[k]];
          }
          REQUIRE(m[0] <= 1);
          for (Color c = 1; c < kColorCount; ++c) REQUIRE(m[c] <= 2);
        }
        REQUIRE(((*found)[conf.anchor_index()] >= 0) == anchor);
      }
    }
  }
}

TEST_CASE("check_reducible examples") {
  for (const auto& c : catalog_lookup("C1")) CHECK(check_reducible(c).verdict == Verdict::reducible);

  auto r = check_reducible(single_edge(9, 2));
  REQUIRE(r.verdict == Verdict::not_reducible);
  REQUIRE(r.witness);
  CHECK(r.witness->multisets[0] == counts({1, 1, 2, 2, 3, 3, 4, 4}));
  CHECK(r.witness->multisets[1] == counts({0}));
  CHECK(r.witness->paths.empty());

  auto c3 = check_reducible(entry("C3"));
  CHECK(c3.verdict == Verdict::not_reducible);
  CHECK(c3.witness);

  // degree sum 11: u = {3,3,4,4}, v = {0,1,1,2,2} blocks every colour
  auto e56 = check_reducible(single_edge(5, 6));
  CHECK(e56.verdict == Verdict::not_reducible);
  CHECK_FALSE(check_reducible(single_edge(4, 6)).witness);
}

TEST_CASE("class coverage and feasibility recount") {
  for (const char* name : {"C1(5,5)", "C1(2,8)", "C2(3)", "C8"}) {
    const auto& conf = entry(name);
    std::uint64_t total = 0, feasible = 0;
    for (const auto& ms : enumerate_outer_multisets(conf))
      for (const auto& p : enumerate_path_sets(ms)) {
        ++total;
        ColoringClass cls{ms, p};
        bool free = find_consistent_inner(conf, cls, false).has_value();
        bool full = find_consistent_inner(conf, cls, true).has_value();
        REQUIRE((!full || free));
        feasible += free;
      }
    auto r = check_reducible(conf);
    CHECK(r.verdict == Verdict::reducible);
    CHECK(r.classes_total == total);
    CHECK(r.classes_feasible == feasible);
  }
}

TEST_CASE("verdicts with colour symmetry on and off") {
  std::vector<Configuration> list = catalog_lookup("C1");
  for (const char* name : {"C2(3)", "C2(9)", "C3", "C8", "C6", "C9"}) list.push_back(entry(name));
  list.push_back(single_edge(9, 2));
  list.push_back(single_edge(5, 6));
  for (const auto& conf : list) {
    CheckOptions sym;
    sym.symmetry = true;
    auto a = check_reducible(conf);
    auto b = check_reducible(conf, sym);
    CHECK_MESSAGE(a.verdict == b.verdict, conf.name());
    CHECK(b.classes_total <= a.classes_total);
  }
}

TEST_CASE("monotonicity on C1 and C2") {
  std::vector<Configuration> list = catalog_lookup("C1");
  for (const auto& c : catalog_lookup("C2")) list.push_back(c);
  int lowered = 0;
  for (const auto& conf : list) {
    REQUIRE(check_reducible(conf).verdict == Verdict::reducible);
    for (int v = 0; v < conf.order(); ++v) {
      if (conf.bound(v) - 1 < conf.pattern().degree(v)) continue;
      std::vector<int> b = conf.bounds();
      --b[v];
      CheckOptions opt;
      opt.symmetry = true;
      REQUIRE_MESSAGE(check_reducible(conf.with_bounds(b), opt).verdict == Verdict::reducible, conf.name());
      ++lowered;
    }
  }
  CHECK(lowered == 9 + 26);
}

TEST_CASE("reports do not depend on the worker count") {
  for (const char* name : {"C1(5,5)", "C3", "C2(4)"}) {
    const auto& conf = entry(name);
    CheckOptions one;
    auto base = without_timing(to_json(conf, check_reducible(conf, one)));
    for (int w : {2, 3, 8}) {
      CheckOptions many;
      many.workers = w;
      REQUIRE(without_timing(to_json(conf, check_reducible(conf, many))) == base);
    }
  }
  Configuration e = single_edge(5, 6);
  CheckOptions small;
  small.batch_size = 7;
  auto base = without_timing(to_json(e, check_reducible(e, small)));
  small.workers = 4;
  CHECK(without_timing(to_json(e, check_reducible(e, small))) == base);
}

TEST_CASE("try-all anchors") {
  CheckOptions all;
  all.anchor_policy = AnchorPolicy::try_all;
  auto c3 = check_reducible(entry("C3"), all);
  CHECK(c3.verdict == Verdict::not_reducible);
  CHECK(c3.attempts.size() == 2);
  auto c8 = check_reducible(entry("C8"), all);
  CHECK(c8.verdict == Verdict::reducible);
  CHECK(c8.attempts.size() == 1);
  CHECK(c8.anchor == c8.attempts[0].anchor);

  CHECK(parse_anchor_policy("try-all") == AnchorPolicy::try_all);
  CHECK_THROWS(parse_anchor_policy("first"));
}

TEST_CASE("checkpoint and resume reproduce the uninterrupted run") {
  const std::string path = (std::filesystem::temp_directory_path() / "linarb_unit_ckpt.json").string();
  for (const char* name : {"C2(4)", "C3"}) {
    const auto& conf = entry(name);
    CheckOptions plain;
    plain.batch_size = 64;
    auto expect = without_timing(to_json(conf, check_reducible(conf, plain)));

    CheckOptions step = plain;
    step.time_budget_seconds = 0.0;
    step.checkpoint_path = path;
    std::filesystem::remove(path);
    auto r = check_reducible(conf, step);
    int rounds = 1;
    while (r.verdict == Verdict::incomplete) {
      std::ifstream in(path);
      step.resume = nlohmann::json::parse(in);
      r = check_reducible(conf, step);
      ++rounds;
    }
    CHECK(rounds > 2);
    CHECK(without_timing(to_json(conf, r)) == expect);
  }

  // a checkpoint for another configuration is refused
  CheckOptions opt;
  opt.time_budget_seconds = 0.0;
  opt.checkpoint_path = path;
  check_reducible(entry("C2(4)"), opt);
  std::ifstream in(path);
  CheckOptions wrong;
  wrong.resume = nlohmann::json::parse(in);
  CHECK_THROWS_AS(check_reducible(entry("C8"), wrong), CheckpointError);
  wrong.resume = nlohmann::json{{"format", "other"}};
  CHECK_THROWS_AS(check_reducible(entry("C8"), wrong), CheckpointError);
  std::filesystem::remove(path);
}

TEST_CASE("report JSON") {
  const Configuration e = single_edge(9, 2);
  auto j = to_json(e, check_reducible(e));
  CHECK(j["config"] == "edge-9-2");
  CHECK(j["anchor"] == nlohmann::json({"u", "v"}));
  CHECK(j["verdict"] == "not-reducible");
  CHECK(j["witness"]["multisets"]["u"] == nlohmann::json({1, 1, 2, 2, 3, 3, 4, 4}));
  CHECK(j["witness"]["multisets"]["v"] == nlohmann::json({0}));
  CHECK(j["witness"]["paths"].empty());
  for (const char* key : {"classes_total", "classes_feasible", "seconds"}) CHECK(j.contains(key));
  auto ok = to_json(entry("C8"), check_reducible(entry("C8")));
  CHECK_FALSE(ok.contains("witness"));
}

}  // TEST_SUITE
