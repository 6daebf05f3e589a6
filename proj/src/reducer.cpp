#include "linarb/reducer.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

namespace linarb {

// ---- multisets ----------------------------------------------------------

namespace {

constexpr std::array<int, kColorCount> kCap{1, 2, 2, 2, 2};

std::vector<ColorCounts> build_multisets(int slots) {
  std::vector<ColorCounts> out;
  ColorCounts m{};
  // lexicographic in (m0, m1, m2, m3, m4)
  for (m[0] = 0; m[0] <= kCap[0]; ++m[0])
    for (m[1] = 0; m[1] <= kCap[1]; ++m[1])
      for (m[2] = 0; m[2] <= kCap[2]; ++m[2])
        for (m[3] = 0; m[3] <= kCap[3]; ++m[3])
          for (m[4] = 0; m[4] <= kCap[4]; ++m[4])
            if (m[0] + m[1] + m[2] + m[3] + m[4] == slots) out.push_back(m);
  return out;
}

}  // namespace

const std::vector<ColorCounts>& vertex_multisets(int slots) {
  static const std::array<std::vector<ColorCounts>, 10> table = [] {
    std::array<std::vector<ColorCounts>, 10> t;
    for (int s = 0; s < 10; ++s) t[s] = build_multisets(s);
    return t;
  }();
  static const std::vector<ColorCounts> none;
  if (slots < 0 || slots > 9) return none;
  return table[slots];
}

MultisetSpace::MultisetSpace(const Configuration& conf) {
  for (int v = 0; v < conf.order(); ++v) {
    slots_.push_back(conf.slots(v));
    choices_.push_back(&vertex_multisets(conf.slots(v)));
    size_ *= choices_.back()->size();
  }
}

void MultisetSpace::digits(std::uint64_t index, std::vector<int>& out) const {
  out.resize(choices_.size());
  for (int v = static_cast<int>(choices_.size()) - 1; v >= 0; --v) {
    const auto r = choices_[v]->size();
    out[v] = static_cast<int>(index % r);
    index /= r;
  }
}

OuterMultisets MultisetSpace::at(std::uint64_t index) const {
  std::vector<int> d;
  digits(index, d);
  OuterMultisets out(d.size());
  for (std::size_t v = 0; v < d.size(); ++v) out[v] = (*choices_[v])[d[v]];
  return out;
}

std::vector<OuterMultisets> enumerate_outer_multisets(const Configuration& conf) {
  MultisetSpace space(conf);
  std::vector<OuterMultisets> out;
  out.reserve(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.at(i));
  return out;
}

// ---- path sets ----------------------------------------------------------

namespace {

class PathSetWalker {
 public:
  PathSetWalker(const OuterMultisets& ms, const std::function<bool(const OuterPathSet&)>& visit) : visit_(visit) {
    for (Color i = 1; i < kColorCount; ++i)
      for (std::size_t v = 0; v < ms.size(); ++v)
        if (ms[v][i] == 1) candidates_[i].push_back(static_cast<int>(v));
  }

  void run() { color_level(1); }

 private:
  bool color_level(Color i) {
    if (i == kColorCount) return visit_(current_);
    return matching_level(i, 0);
  }

  bool matching_level(Color i, std::uint32_t used) {
    const auto& cand = candidates_[i];
    const int k = static_cast<int>(cand.size());
    int first = 0;
    while (first < k && (used >> first & 1)) ++first;
    if (first == k) return color_level(i + 1);
    if (!matching_level(i, used | 1u << first)) return false;
    for (int j = first + 1; j < k; ++j) {
      if (used >> j & 1) continue;
      current_.push_back({i, cand[first], cand[j]});
      bool go_on = matching_level(i, used | 1u << first | 1u << j);
      current_.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  const std::function<bool(const OuterPathSet&)>& visit_;
  std::array<std::vector<int>, kColorCount> candidates_;
  OuterPathSet current_;
};

}  // namespace

void for_each_path_set(const OuterMultisets& ms, const std::function<bool(const OuterPathSet&)>& visit) {
  PathSetWalker(ms, visit).run();
}

std::vector<OuterPathSet> enumerate_path_sets(const OuterMultisets& ms) {
  std::vector<OuterPathSet> out;
  for_each_path_set(ms, [&](const OuterPathSet& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

// ---- inner colouring search ---------------------------------------------

namespace {

// Backtracking over the configuration edges. Each forest colour class,
// together with the virtual path edges, is a union of paths; end_[c][x] is
// the far end of the path ending at x (x itself when x has no c-edge,
// kDangling when the path leaves H through an unpaired outer edge).
class InnerSearch {
 public:
  explicit InnerSearch(const Configuration& conf)
      : n_(conf.order()), edges_(conf.pattern().edges()), anchor_(static_cast<int>(conf.anchor_index())) {
    residual_.resize(n_);
    for (auto& ends : end_) ends.resize(n_ + 1);
    colors_.resize(edges_.size());
    order_.reserve(edges_.size());
  }

  bool solve(const OuterMultisets& ms, const OuterPathSet& paths, bool include_anchor, InnerColoring* out = nullptr) {
    const int dangling = n_;
    for (int v = 0; v < n_; ++v)
      for (Color c = 0; c < kColorCount; ++c) {
        residual_[v][c] = static_cast<std::int8_t>(kCap[c] - ms[v][c]);
        if (residual_[v][c] < 0) return false;
        end_[c][v] = ms[v][c] == 0 ? v : dangling;
      }
    for (const auto& t : paths) {
      if (ms[t.u][t.color] != 1 || ms[t.v][t.color] != 1) return false;
      if (end_[t.color][t.u] != dangling || end_[t.color][t.v] != dangling) return false;  // endpoint reused
      end_[t.color][t.u] = t.v;
      end_[t.color][t.v] = t.u;
    }

    order_.clear();
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      colors_[e] = -1;
      if (e != anchor_ || include_anchor) order_.push_back(e);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return admissible(a) < admissible(b); });
    if (!assign(0)) return false;
    if (out) *out = colors_;
    return true;
  }

 private:
  int admissible(int e) const {
    int count = 0;
    for (Color c = 0; c < kColorCount; ++c) count += residual_[edges_[e].u][c] > 0 && residual_[edges_[e].v][c] > 0;
    return count;
  }

  bool assign(std::size_t k) {
    if (k == order_.size()) return true;
    const int e = order_[k];
    const Vertex u = edges_[e].u;
    const Vertex v = edges_[e].v;

    std::array<Color, kColorCount> tries;
    int count = 0;
    for (Color c = 0; c < kColorCount; ++c)
      if (residual_[u][c] > 0 && residual_[v][c] > 0) {
        // insertion by (spare capacity desc, colour asc)
        int spare = residual_[u][c] + residual_[v][c];
        int pos = count++;
        while (pos > 0 && residual_[u][tries[pos - 1]] + residual_[v][tries[pos - 1]] < spare) {
          tries[pos] = tries[pos - 1];
          --pos;
        }
        tries[pos] = c;
      }

    for (int t = 0; t < count; ++t) {
      const Color c = tries[t];
      if (c == kMatchingColor) {
        --residual_[u][c];
        --residual_[v][c];
        colors_[e] = c;
        if (assign(k + 1)) return true;
        ++residual_[u][c];
        ++residual_[v][c];
        continue;
      }
      auto& ends = end_[c];
      const int a = ends[u];
      const int b = ends[v];
      if (a == v) continue;  // closes a monochromatic cycle
      const int old_a = ends[a];
      const int old_b = ends[b];
      ends[a] = b;
      ends[b] = a;
      --residual_[u][c];
      --residual_[v][c];
      colors_[e] = c;
      if (assign(k + 1)) return true;
      ++residual_[u][c];
      ++residual_[v][c];
      ends[b] = old_b;
      ends[a] = old_a;
    }
    colors_[e] = -1;
    return false;
  }

  int n_;
  std::vector<Edge> edges_;
  int anchor_;
  std::vector<std::array<std::int8_t, kColorCount>> residual_;
  std::array<std::vector<int>, kColorCount> end_;
  std::vector<int> order_;
  InnerColoring colors_;
};

}  // namespace

std::optional<InnerColoring> find_consistent_inner(const Configuration& conf, const ColoringClass& cls,
                                                   bool include_anchor) {
  if (static_cast<int>(cls.multisets.size()) != conf.order())
    throw ConfigurationError("class does not match configuration " + conf.name());
  InnerSearch search(conf);
  InnerColoring out;
  if (!search.solve(cls.multisets, cls.paths, include_anchor, &out)) return std::nullopt;
  return out;
}

// ---- reducibility check -------------------------------------------------

std::string to_string(AnchorPolicy policy) {
  return policy == AnchorPolicy::try_all ? "try-all" : "default";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::reducible: return "reducible";
    case Verdict::not_reducible: return "not-reducible";
    case Verdict::incomplete: return "incomplete";
  }
  return "?";
}

AnchorPolicy parse_anchor_policy(const std::string& text) {
  if (text == "default") return AnchorPolicy::catalog_default;
  if (text == "try-all") return AnchorPolicy::try_all;
  throw std::invalid_argument("anchor policy must be 'default' or 'try-all', got '" + text + "'");
}

namespace {

Verdict parse_verdict(const std::string& text) {
  if (text == "reducible") return Verdict::reducible;
  if (text == "not-reducible") return Verdict::not_reducible;
  if (text == "incomplete") return Verdict::incomplete;
  throw CheckpointError("unknown verdict '" + text + "'");
}

// Maps each vertex multiset to its image under every permutation of the
// forest colours 1..4.
class ColorSymmetry {
 public:
  explicit ColorSymmetry(const MultisetSpace& space) : space_(space) {
    std::array<int, 4> perm{1, 2, 3, 4};
    do {
      if (perm != std::array<int, 4>{1, 2, 3, 4}) perms_.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int slots = 0; slots <= 9; ++slots) {
      const auto& list = vertex_multisets(slots);
      std::map<ColorCounts, int> index;
      for (std::size_t k = 0; k < list.size(); ++k) index[list[k]] = static_cast<int>(k);
      auto& table = tables_[slots];
      table.resize(perms_.size());
      for (std::size_t p = 0; p < perms_.size(); ++p)
        for (const auto& m : list) {
          ColorCounts moved = m;
          for (int c = 1; c < kColorCount; ++c) moved[perms_[p][c - 1]] = m[c];
          table[p].push_back(index.at(moved));
        }
    }
  }

  /// True when digits is the smallest combination in its orbit.
  bool canonical(const std::vector<int>& digits) const {
    for (std::size_t p = 0; p < perms_.size(); ++p) {
      for (std::size_t v = 0; v < digits.size(); ++v) {
        int moved = tables_[space_.slots(static_cast<int>(v))][p][digits[v]];
        if (moved < digits[v]) return false;
        if (moved > digits[v]) break;
      }
    }
    return true;
  }

 private:
  const MultisetSpace& space_;
  std::vector<std::array<int, 4>> perms_;
  std::array<std::vector<std::vector<int>>, 10> tables_;
};

struct ChunkResult {
  std::uint64_t total = 0;
  std::uint64_t feasible = 0;
  std::optional<ColoringClass> failure;
  bool done = false;
};

using Clock = std::chrono::steady_clock;

class AnchorRun {
 public:
  AnchorRun(const Configuration& conf, const CheckOptions& options, Clock::time_point deadline_or_max)
      : conf_(conf), options_(options), space_(conf), deadline_(deadline_or_max) {
    if (options.symmetry) symmetry_.emplace(space_);
  }

  const MultisetSpace& space() const { return space_; }

  // Processes [begin, end) and stops early at the deadline. Returns the
  // merged result of the longest completed prefix and the index reached.
  std::pair<ChunkResult, std::uint64_t> run_batch(std::uint64_t begin, std::uint64_t end) {
    const std::uint64_t chunk = 8;
    const std::uint64_t chunks = (end - begin + chunk - 1) / chunk;
    std::vector<ChunkResult> results(chunks);
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> expired{false};

    auto worker = [&] {
      InnerSearch search(conf_);
      std::vector<int> digits;
      OuterMultisets ms(conf_.order());
      while (true) {
        if (expired.load()) return;
        const std::uint64_t c = next++;
        if (c >= chunks) return;
        ChunkResult& r = results[c];
        const std::uint64_t lo = begin + c * chunk;
        const std::uint64_t hi = std::min(end, lo + chunk);
        for (std::uint64_t index = lo; index < hi; ++index) {
          space_.digits(index, digits);
          if (symmetry_ && !symmetry_->canonical(digits)) continue;
          for (int v = 0; v < conf_.order(); ++v) ms[v] = space_.choice(v, digits[v]);
          for_each_path_set(ms, [&](const OuterPathSet& paths) {
            ++r.total;
            if (search.solve(ms, paths, true)) {
              ++r.feasible;
            } else if (search.solve(ms, paths, false)) {
              ++r.feasible;
              if (!r.failure) r.failure = ColoringClass{ms, paths};
            }
            return true;
          });
        }
        r.done = true;
        if (Clock::now() >= deadline_) expired = true;
      }
    };

    const int workers = std::max(1, options_.workers);
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }

    ChunkResult merged;
    std::uint64_t reached = begin;
    for (std::uint64_t c = 0; c < chunks && results[c].done; ++c) {
      merged.total += results[c].total;
      merged.feasible += results[c].feasible;
      if (!merged.failure && results[c].failure) merged.failure = std::move(results[c].failure);
      reached = std::min(end, begin + (c + 1) * chunk);
    }
    merged.done = reached == end;
    return {std::move(merged), reached};
  }

 private:
  const Configuration& conf_;
  const CheckOptions& options_;
  MultisetSpace space_;
  std::optional<ColorSymmetry> symmetry_;
  Clock::time_point deadline_;
};

nlohmann::json anchor_json(const Configuration& conf, Edge e) { return {conf.label(e.u), conf.label(e.v)}; }

Edge anchor_from_json(const Configuration& conf, const nlohmann::json& j) {
  auto find = [&](const std::string& label) {
    for (int v = 0; v < conf.order(); ++v)
      if (conf.label(v) == label) return v;
    throw CheckpointError("unknown vertex label " + label);
  };
  return Edge(find(j.at(0).get<std::string>()), find(j.at(1).get<std::string>()));
}

ColoringClass witness_from_json(const Configuration& conf, const nlohmann::json& j) {
  ColoringClass cls;
  cls.multisets.assign(conf.order(), ColorCounts{});
  for (int v = 0; v < conf.order(); ++v)
    for (int c : j.at("multisets").at(conf.label(v))) ++cls.multisets[v][c];
  for (const auto& t : j.at("paths")) {
    Edge e = anchor_from_json(conf, nlohmann::json::array({t.at(1), t.at(2)}));
    cls.paths.push_back({t.at(0).get<int>(), e.u, e.v});
  }
  std::sort(cls.paths.begin(), cls.paths.end());
  return cls;
}

nlohmann::json attempt_json(const Configuration& conf, const AnchorAttempt& a) {
  nlohmann::json j{{"anchor", anchor_json(conf, a.anchor)},
                   {"verdict", to_string(a.verdict)},
                   {"classes_total", a.classes_total},
                   {"classes_feasible", a.classes_feasible}};
  if (a.witness) j["witness"] = witness_json(conf, *a.witness);
  return j;
}

AnchorAttempt attempt_from_json(const Configuration& conf, const nlohmann::json& j) {
  AnchorAttempt a;
  a.anchor = anchor_from_json(conf, j.at("anchor"));
  a.verdict = parse_verdict(j.at("verdict").get<std::string>());
  a.classes_total = j.at("classes_total").get<std::uint64_t>();
  a.classes_feasible = j.at("classes_feasible").get<std::uint64_t>();
  if (j.contains("witness")) a.witness = witness_from_json(conf, j.at("witness"));
  return a;
}

struct Cursor {
  std::size_t anchor_position = 0;
  std::uint64_t next_index = 0;
  std::uint64_t classes_total = 0;
  std::uint64_t classes_feasible = 0;
  std::vector<AnchorAttempt> finished;
};

void write_checkpoint(const std::string& path, const Configuration& conf, const CheckOptions& options,
                      const Cursor& cursor) {
  nlohmann::json attempts = nlohmann::json::array();
  for (const auto& a : cursor.finished) attempts.push_back(attempt_json(conf, a));
  nlohmann::json j{{"format", "linarb-checkpoint"},
                   {"version", 1},
                   {"configuration", to_json(conf)},
                   {"anchor_policy", to_string(options.anchor_policy)},
                   {"symmetry", options.symmetry},
                   {"batch_size", options.batch_size},
                   {"anchor_position", cursor.anchor_position},
                   {"next_index", cursor.next_index},
                   {"classes_total", cursor.classes_total},
                   {"classes_feasible", cursor.classes_feasible},
                   {"attempts", attempts}};
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp);
    out << j.dump(2) << '\n';
    if (!out.flush()) throw CheckpointError("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Cursor read_checkpoint(const nlohmann::json& j, const Configuration& conf, const CheckOptions& options) {
  try {
    if (j.at("format") != "linarb-checkpoint" || j.at("version") != 1) throw CheckpointError("not a checkpoint");
    if (configuration_from_json(j.at("configuration")).name() != conf.name() || j.at("configuration") != to_json(conf))
      throw CheckpointError("checkpoint belongs to a different configuration");
    if (j.at("anchor_policy") != to_string(options.anchor_policy)) throw CheckpointError("anchor policy differs");
    if (j.at("symmetry") != options.symmetry) throw CheckpointError("symmetry setting differs");
    if (j.at("batch_size") != options.batch_size) throw CheckpointError("batch size differs");
    Cursor c;
    c.anchor_position = j.at("anchor_position").get<std::size_t>();
    c.next_index = j.at("next_index").get<std::uint64_t>();
    c.classes_total = j.at("classes_total").get<std::uint64_t>();
    c.classes_feasible = j.at("classes_feasible").get<std::uint64_t>();
    for (const auto& a : j.at("attempts")) c.finished.push_back(attempt_from_json(conf, a));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("malformed checkpoint: ") + e.what());
  }
}

}  // namespace

ReducibilityReport check_reducible(const Configuration& conf, const CheckOptions& options) {
  const auto started = Clock::now();
  const auto deadline = options.time_budget_seconds
                            ? started + std::chrono::duration_cast<Clock::duration>(
                                            std::chrono::duration<double>(*options.time_budget_seconds))
                            : Clock::time_point::max();
  if (options.batch_size == 0) throw std::invalid_argument("batch size must be positive");

  std::vector<Edge> anchors;
  if (options.anchor_policy == AnchorPolicy::catalog_default)
    anchors.push_back(conf.anchor());
  else
    anchors = conf.pattern().edges();

  Cursor cursor;
  if (options.resume) cursor = read_checkpoint(*options.resume, conf, options);

  ReducibilityReport report;
  report.config = conf.name();
  report.anchor_policy = options.anchor_policy;
  report.symmetry = options.symmetry;
  report.workers = std::max(1, options.workers);
  auto finish = [&](ReducibilityReport& r) -> ReducibilityReport& {
    r.seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return r;
  };
  auto last_write = Clock::now();

  for (; cursor.anchor_position < anchors.size(); ++cursor.anchor_position) {
    const Configuration anchored = conf.with_anchor(anchors[cursor.anchor_position]);
    AnchorRun run(anchored, options, deadline);
    AnchorAttempt attempt;
    attempt.anchor = anchored.anchor();
    const std::uint64_t size = run.space().size();
    while (cursor.next_index < size) {
      const std::uint64_t batch_end =
          std::min(size, (cursor.next_index / options.batch_size + 1) * options.batch_size);
      auto [result, reached] = run.run_batch(cursor.next_index, batch_end);
      cursor.classes_total += result.total;
      cursor.classes_feasible += result.feasible;
      cursor.next_index = reached;
      if (result.failure) {
        // counts cover the whole batch holding the first failure
        if (!result.done) {
          // deadline hit inside that batch: finish it so counts stay batch-aligned
          auto [rest, rest_reached] = AnchorRun(anchored, options, Clock::time_point::max()).run_batch(reached, batch_end);
          cursor.classes_total += rest.total;
          cursor.classes_feasible += rest.feasible;
          cursor.next_index = rest_reached;
        }
        attempt.witness = std::move(result.failure);
        break;
      }
      const bool out_of_time = Clock::now() >= deadline;
      if (!options.checkpoint_path.empty() &&
          (out_of_time || Clock::now() - last_write > std::chrono::seconds(1))) {
        write_checkpoint(options.checkpoint_path, conf, options, cursor);
        last_write = Clock::now();
      }
      if (out_of_time && cursor.next_index < size) {
        report.anchor = anchored.anchor();
        report.verdict = Verdict::incomplete;
        report.classes_total = cursor.classes_total;
        report.classes_feasible = cursor.classes_feasible;
        report.attempts = cursor.finished;
        return finish(report);
      }
    }
    attempt.classes_total = cursor.classes_total;
    attempt.classes_feasible = cursor.classes_feasible;
    attempt.verdict = attempt.witness ? Verdict::not_reducible : Verdict::reducible;
    cursor.finished.push_back(attempt);
    cursor.next_index = 0;
    cursor.classes_total = 0;
    cursor.classes_feasible = 0;
    if (attempt.verdict == Verdict::reducible) break;
  }

  if (!options.checkpoint_path.empty()) {
    Cursor final_cursor = cursor;
    final_cursor.anchor_position = anchors.size();
    write_checkpoint(options.checkpoint_path, conf, options, final_cursor);
  }

  report.attempts = cursor.finished;
  const AnchorAttempt* chosen = &cursor.finished.front();
  for (const auto& a : cursor.finished)
    if (a.verdict == Verdict::reducible) chosen = &a;
  report.anchor = chosen->anchor;
  report.verdict = chosen->verdict;
  report.classes_total = chosen->classes_total;
  report.classes_feasible = chosen->classes_feasible;
  report.witness = chosen->witness;
  return finish(report);
}

nlohmann::json witness_json(const Configuration& conf, const ColoringClass& cls) {
  nlohmann::json multisets = nlohmann::json::object();
  for (int v = 0; v < conf.order(); ++v) {
    nlohmann::json colors = nlohmann::json::array();
    for (Color c = 0; c < kColorCount; ++c)
      for (int k = 0; k < cls.multisets[v][c]; ++k) colors.push_back(c);
    multisets[conf.label(v)] = colors;
  }
  nlohmann::json paths = nlohmann::json::array();
  for (const auto& t : cls.paths) paths.push_back({t.color, conf.label(t.u), conf.label(t.v)});
  return {{"multisets", multisets}, {"paths", paths}};
}

nlohmann::json to_json(const Configuration& conf, const ReducibilityReport& report) {
  nlohmann::json attempts = nlohmann::json::array();
  for (const auto& a : report.attempts) attempts.push_back(attempt_json(conf, a));
  nlohmann::json j{{"config", report.config},
                   {"anchor", anchor_json(conf, report.anchor)},
                   {"anchor_policy", to_string(report.anchor_policy)},
                   {"classes_total", report.classes_total},
                   {"classes_feasible", report.classes_feasible},
                   {"verdict", to_string(report.verdict)},
                   {"symmetry", report.symmetry},
                   {"workers", report.workers},
                   {"attempts", attempts},
                   {"seconds", report.seconds}};
  if (report.witness) j["witness"] = witness_json(conf, *report.witness);
  return j;
}

}  // namespace linarb
