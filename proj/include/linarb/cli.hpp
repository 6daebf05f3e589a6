#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "linarb/coloring.hpp"
#include "linarb/reducer.hpp"

namespace linarb {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int violations = 1;  // validate found problems, oracle found no partition
inline constexpr int not_reducible = 2;
inline constexpr int budget_exhausted = 3;
inline constexpr int degree_too_large = 4;
inline constexpr int bad_input = 5;
inline constexpr int no_configuration = 6;
}  // namespace exit_code

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  nlohmann::json options = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
};

nlohmann::json to_json(const RunManifest& manifest);

struct CheckCommand {
  std::vector<std::string> targets;  // catalog names, families or JSON files; empty means the whole catalog
  AnchorPolicy anchor_policy = AnchorPolicy::catalog_default;
  int workers = 1;
  bool symmetry = false;
  std::optional<double> time_budget_seconds;
  std::string checkpoint;  // per-configuration files are suffixed when several are checked
  std::string resume;
  std::uint64_t batch_size = 512;
};

struct Outcome {
  int code = exit_code::ok;
  nlohmann::json report;
  std::string text;  // plain output, e.g. a colouring written to stdout
};

Outcome cmd_check(const CheckCommand& command, const RunManifest& manifest);
Outcome cmd_partition(const std::string& graph_path, const std::string& out_path, const std::string& trace_path,
                      const RunManifest& manifest);
Outcome cmd_validate(const std::string& graph_path, const std::string& coloring_path, const PartitionSpec& spec,
                     const RunManifest& manifest);
Outcome cmd_audit(const std::string& rotation_path, bool with_transfers, const RunManifest& manifest);
Outcome cmd_oracle(const std::string& graph_path, const PartitionSpec& spec, const BruteForceOptions& options,
                   const RunManifest& manifest);

/// Full command line; args excludes the program name. Reports go to out
/// (or --out), diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linarb
