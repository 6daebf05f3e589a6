#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "linarb/coloring.hpp"
#include "linarb/configuration.hpp"

namespace linarb {

/// One colour multiset per configuration vertex.
using OuterMultisets = std::vector<ColorCounts>;
/// Sorted outer path triples.
using OuterPathSet = std::vector<PathTriple>;
/// Colour per pattern edge index; -1 marks the uncoloured anchor.
using InnerColoring = std::vector<Color>;

/// Multisets of `slots` colours with at most one 0 and at most two copies
/// of each colour 1..4, ordered lexicographically by multiplicity vector
/// (m0, m1, m2, m3, m4). Empty when slots > 9.
const std::vector<ColorCounts>& vertex_multisets(int slots);

/// The product of vertex_multisets over the configuration vertices, indexed
/// in mixed radix with vertex 0 most significant.
class MultisetSpace {
 public:
  explicit MultisetSpace(const Configuration& conf);

  std::uint64_t size() const { return size_; }
  /// Per-vertex positions of the index-th combination.
  void digits(std::uint64_t index, std::vector<int>& out) const;
  OuterMultisets at(std::uint64_t index) const;
  int radix(int v) const { return static_cast<int>(choices_[v]->size()); }
  const ColorCounts& choice(int v, int digit) const { return (*choices_[v])[digit]; }
  int slots(int v) const { return slots_[v]; }

 private:
  std::vector<int> slots_;
  std::vector<const std::vector<ColorCounts>*> choices_;
  std::uint64_t size_ = 1;
};

/// Materialises the multiset stream; intended for small configurations.
std::vector<OuterMultisets> enumerate_outer_multisets(const Configuration& conf);

/// Visits every outer path set compatible with ms, in canonical order: for
/// colours 1..4 (colour 1 most significant) a matching on the vertices
/// holding that colour exactly once, unmatched-first. The empty set comes
/// first. The visitor returns false to stop.
void for_each_path_set(const OuterMultisets& ms, const std::function<bool(const OuterPathSet&)>& visit);
std::vector<OuterPathSet> enumerate_path_sets(const OuterMultisets& ms);

/// A colouring of E(H) minus the anchor (or of all E(H)) consistent with the
/// class: colour multiplicities stay within caps at every vertex, and no
/// monochromatic cycle appears once every triple (i,u,v) adds a virtual
/// i-edge uv. Edges are taken most-constrained first; colours with the
/// most spare capacity at both ends are tried first, ties ascending.
std::optional<InnerColoring> find_consistent_inner(const Configuration& conf, const ColoringClass& cls,
                                                   bool include_anchor);

enum class AnchorPolicy { catalog_default, try_all };
enum class Verdict { reducible, not_reducible, incomplete };

std::string to_string(AnchorPolicy policy);
std::string to_string(Verdict verdict);
AnchorPolicy parse_anchor_policy(const std::string& text);

struct CheckOptions {
  AnchorPolicy anchor_policy = AnchorPolicy::catalog_default;
  int workers = 1;
  /// Canonise classes under permutations of colours 1..4.
  bool symmetry = false;
  std::optional<double> time_budget_seconds;
  /// Where to persist the resumable cursor; empty disables checkpoints.
  std::string checkpoint_path;
  /// A checkpoint previously written by check_reducible.
  std::optional<nlohmann::json> resume;
  /// Multiset combinations per aggregation batch. Part of the determinism
  /// contract: counts for not-reducible verdicts cover whole batches.
  std::uint64_t batch_size = 512;
};

struct AnchorAttempt {
  Edge anchor;
  Verdict verdict = Verdict::incomplete;
  std::uint64_t classes_total = 0;
  std::uint64_t classes_feasible = 0;
  std::optional<ColoringClass> witness;
};

struct ReducibilityReport {
  std::string config;
  Edge anchor;
  Verdict verdict = Verdict::incomplete;
  std::uint64_t classes_total = 0;
  std::uint64_t classes_feasible = 0;
  std::optional<ColoringClass> witness;
  std::vector<AnchorAttempt> attempts;
  AnchorPolicy anchor_policy = AnchorPolicy::catalog_default;
  bool symmetry = false;
  int workers = 1;
  double seconds = 0;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decides reducibility by the standard proof: every class that admits an
/// anchor-free consistent inner colouring must also admit one that colours
/// the anchor.
ReducibilityReport check_reducible(const Configuration& conf, const CheckOptions& options = {});

nlohmann::json witness_json(const Configuration& conf, const ColoringClass& cls);
nlohmann::json to_json(const Configuration& conf, const ReducibilityReport& report);

}  // namespace linarb
