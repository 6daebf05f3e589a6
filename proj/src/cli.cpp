#include "linarb/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "linarb/discharge.hpp"
#include "linarb/io.hpp"
#include "linarb/partitioner.hpp"
#include "linarb/plane_graph.hpp"

namespace linarb {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string file_stem(std::string name) {
  for (char& ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  return name;
}

std::vector<Configuration> resolve_targets(const std::vector<std::string>& targets) {
  if (targets.empty()) return catalog();
  std::vector<Configuration> out;
  for (const auto& t : targets) {
    auto found = catalog_lookup(t);
    if (!found.empty()) {
      out.insert(out.end(), found.begin(), found.end());
      continue;
    }
    if (!std::filesystem::exists(t)) throw InputError("unknown configuration " + t);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text_file(t));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(t + ": " + e.what());
    }
    out.push_back(configuration_from_json(j));
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"inputs", m.inputs},
          {"options", m.options},
          {"seed", m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr)},
          {"versions",
           {{"linarb", kVersion},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
            {"compiler", __VERSION__}}}};
}

Outcome cmd_check(const CheckCommand& command, const RunManifest& manifest) {
  const auto configs = resolve_targets(command.targets);
  const bool several = configs.size() > 1;
  const auto started = std::chrono::steady_clock::now();

  std::string checkpoint = command.checkpoint;
  if (checkpoint.empty() && command.time_budget_seconds)
    checkpoint = (several ? std::string("linarb") : file_stem(configs.front().name())) + ".checkpoint.json";

  Outcome outcome;
  nlohmann::json results = nlohmann::json::array();
  bool any_incomplete = false;
  bool any_failed = false;
  for (const auto& conf : configs) {
    CheckOptions options;
    options.anchor_policy = command.anchor_policy;
    options.workers = command.workers;
    options.symmetry = command.symmetry;
    options.batch_size = command.batch_size;
    if (command.time_budget_seconds) {
      double spent = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      options.time_budget_seconds = std::max(0.0, *command.time_budget_seconds - spent);
    }
    if (!checkpoint.empty()) options.checkpoint_path = several ? checkpoint + "." + file_stem(conf.name()) : checkpoint;
    if (!command.resume.empty()) {
      const std::string path = several ? command.resume + "." + file_stem(conf.name()) : command.resume;
      if (std::filesystem::exists(path) || !several) {
        try {
          options.resume = nlohmann::json::parse(read_text_file(path));
        } catch (const nlohmann::json::parse_error& e) {
          throw CheckpointError(path + ": " + e.what());
        }
      }
    }
    const ReducibilityReport report = check_reducible(conf, options);
    nlohmann::json j = to_json(conf, report);
    if (report.verdict == Verdict::incomplete) {
      any_incomplete = true;
      j["checkpoint"] = options.checkpoint_path;
    }
    if (report.verdict == Verdict::not_reducible) any_failed = true;
    results.push_back(j);
  }

  const std::string verdict = any_incomplete ? "incomplete" : any_failed ? "not-reducible" : "reducible";
  outcome.code = any_incomplete ? exit_code::budget_exhausted : any_failed ? exit_code::not_reducible : exit_code::ok;
  if (several) {
    outcome.report = {{"verdict", verdict}, {"results", results}};
  } else {
    outcome.report = results.front();
  }
  outcome.report["manifest"] = to_json(manifest);
  return outcome;
}

Outcome cmd_partition(const std::string& graph_path, const std::string& out_path, const std::string& trace_path,
                      const RunManifest& manifest) {
  const Graph g = read_graph_file(graph_path);
  const auto started = std::chrono::steady_clock::now();
  std::vector<ReductionStep> trace;
  const EdgeColoring c = partition(g, &trace);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  if (!trace_path.empty()) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : trace) steps.push_back(to_json(s));
    write_text_file(trace_path, nlohmann::json{{"manifest", to_json(manifest)}, {"steps", steps}}.dump(2) + "\n");
  }
  Outcome outcome;
  if (out_path.empty()) {
    outcome.text = format_coloring(c);
  } else {
    write_text_file(out_path, format_coloring(c));
    outcome.report = {{"graph", graph_path},     {"coloring", out_path},
                      {"vertices", g.order()},   {"edges", g.size()},
                      {"steps", trace.size()},   {"seconds", seconds},
                      {"manifest", to_json(manifest)}};
  }
  return outcome;
}

Outcome cmd_validate(const std::string& graph_path, const std::string& coloring_path, const PartitionSpec& spec,
                     const RunManifest& manifest) {
  const Graph g = read_graph_file(graph_path);
  const EdgeColoring c = parse_coloring(read_text_file(coloring_path), g);
  std::vector<Violation> violations;
  try {
    violations = validate(g, c, spec);
  } catch (const ColoringError& e) {
    throw InputError(e.what());
  }
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : violations) list.push_back(v.describe());
  Outcome outcome;
  outcome.code = violations.empty() ? exit_code::ok : exit_code::violations;
  outcome.report = {{"valid", violations.empty()},
                    {"violations", list},
                    {"spec", {{"forests", spec.forests}, {"matchings", spec.matchings}}},
                    {"manifest", to_json(manifest)}};
  return outcome;
}

Outcome cmd_audit(const std::string& rotation_path, bool with_transfers, const RunManifest& manifest) {
  PlaneGraph pg;
  try {
    pg = parse_rotation(read_text_file(rotation_path));
    trace_faces(pg);  // rejects disconnected embeddings
  } catch (const GraphError& e) {
    throw InputError(rotation_path + ": " + e.what());
  }
  if (pg.graph().max_degree() > kMaxDegree)
    throw DegreeError("maximum degree " + std::to_string(pg.graph().max_degree()) + " exceeds 9");
  Outcome outcome;
  outcome.report = to_json(audit(pg), with_transfers);
  outcome.report["manifest"] = to_json(manifest);
  return outcome;
}

Outcome cmd_oracle(const std::string& graph_path, const PartitionSpec& spec, const BruteForceOptions& options,
                   const RunManifest& manifest) {
  const Graph g = read_graph_file(graph_path);
  auto found = brute_force_partition(g, spec, options);
  Outcome outcome;
  outcome.code = found ? exit_code::ok : exit_code::violations;
  outcome.report = {{"found", found.has_value()},
                    {"spec", {{"forests", spec.forests}, {"matchings", spec.matchings}}},
                    {"manifest", to_json(manifest)}};
  if (found) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [e, color] : found->entries()) edges.push_back({e.u, e.v, color});
    outcome.report["coloring"] = edges;
  }
  return outcome;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear forest and matching partitions of planar graphs"};
  app.require_subcommand(1);
  std::string out_path;

  int default_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  CheckCommand check;
  check.workers = default_workers;
  std::string anchor = "default";
  double budget = -1;
  auto add_check_options = [&](CLI::App* sub) {
    sub->add_option("--anchor", anchor, "default or try-all")->check(CLI::IsMember({"default", "try-all"}));
    sub->add_option("--workers", check.workers, "parallel workers")->check(CLI::PositiveNumber);
    sub->add_option("--time-budget", budget, "wall-clock seconds before checkpointing");
    sub->add_option("--checkpoint", check.checkpoint, "checkpoint file");
    sub->add_option("--resume", check.resume, "resume from a checkpoint");
    sub->add_flag("--symmetry", check.symmetry, "canonise classes under permutations of colours 1..4");
    sub->add_option("--batch-size", check.batch_size, "multiset combinations per batch")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  };
  auto* check_cmd = app.add_subcommand("check", "decide reducibility of configurations");
  check_cmd->add_option("config", check.targets, "catalog name, family or JSON file")->required();
  add_check_options(check_cmd);
  auto* check_all_cmd = app.add_subcommand("check-all", "check the whole catalog");
  add_check_options(check_all_cmd);

  std::string graph_path, coloring_path, trace_path, rotation_path;
  auto* partition_cmd = app.add_subcommand("partition", "partition a planar graph");
  partition_cmd->add_option("graph", graph_path, "graph6 file")->required();
  partition_cmd->add_option("--out", out_path, "colouring file");
  partition_cmd->add_option("--trace", trace_path, "JSON reduction trace");

  PartitionSpec spec;
  auto* validate_cmd = app.add_subcommand("validate", "check a colouring");
  validate_cmd->add_option("graph", graph_path, "graph6 file")->required();
  validate_cmd->add_option("coloring", coloring_path, "colouring file")->required();
  validate_cmd->add_option("--forests", spec.forests)->check(CLI::NonNegativeNumber);
  validate_cmd->add_option("--matchings", spec.matchings)->check(CLI::NonNegativeNumber);
  validate_cmd->add_option("--out", out_path);

  bool transfers = false;
  auto* audit_cmd = app.add_subcommand("audit", "discharging audit of an embedded graph");
  audit_cmd->add_option("rotation", rotation_path, "rotation system file")->required();
  audit_cmd->add_flag("--transfers", transfers, "include the transfer transcript");
  audit_cmd->add_option("--out", out_path);

  BruteForceOptions brute;
  brute.workers = default_workers;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive partition search");
  oracle_cmd->add_option("graph", graph_path, "graph6 file")->required();
  oracle_cmd->add_option("--forests", spec.forests)->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--matchings", spec.matchings)->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--max-edges", brute.max_edges);
  oracle_cmd->add_option("--workers", brute.workers)->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--out", out_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::bad_input;
  }

  if (const char* env = std::getenv("LINARB_WORKERS"); env && *env) {
    try {
      int w = std::stoi(env);
      if (w < 1) throw std::invalid_argument("workers");
      check.workers = brute.workers = w;
    } catch (const std::exception&) {
      err << "error: LINARB_WORKERS must be a positive integer\n";
      return exit_code::bad_input;
    }
  }

  RunManifest manifest;
  Outcome outcome;
  try {
    if (check_cmd->parsed() || check_all_cmd->parsed()) {
      manifest.command = check_cmd->parsed() ? "check" : "check-all";
      if (check_all_cmd->parsed()) check.targets.clear();
      check.anchor_policy = parse_anchor_policy(anchor);
      if (budget >= 0) check.time_budget_seconds = budget;
      manifest.inputs = check.targets;
      manifest.options = {{"anchor", anchor},
                           {"workers", check.workers},
                           {"symmetry", check.symmetry},
                           {"batch_size", check.batch_size},
                           {"time_budget", check.time_budget_seconds ? nlohmann::json(budget) : nullptr},
                           {"resume", check.resume.empty() ? nlohmann::json(nullptr) : nlohmann::json(check.resume)}};
      outcome = cmd_check(check, manifest);
    } else if (partition_cmd->parsed()) {
      manifest = {"partition", {graph_path}, {{"out", out_path}, {"trace", trace_path}}, std::nullopt};
      outcome = cmd_partition(graph_path, out_path, trace_path, manifest);
      out_path.clear();  // --out named the colouring, the report goes to stdout
    } else if (validate_cmd->parsed()) {
      manifest = {"validate", {graph_path, coloring_path}, {{"forests", spec.forests}, {"matchings", spec.matchings}},
                  std::nullopt};
      outcome = cmd_validate(graph_path, coloring_path, spec, manifest);
      for (const auto& v : outcome.report["violations"]) err << "violation: " << v.get<std::string>() << '\n';
    } else if (audit_cmd->parsed()) {
      manifest = {"audit", {rotation_path}, {{"transfers", transfers}}, std::nullopt};
      outcome = cmd_audit(rotation_path, transfers, manifest);
    } else if (oracle_cmd->parsed()) {
      manifest = {"oracle",
                  {graph_path},
                  {{"forests", spec.forests},
                   {"matchings", spec.matchings},
                   {"max_edges", brute.max_edges},
                   {"workers", brute.workers}},
                  std::nullopt};
      outcome = cmd_oracle(graph_path, spec, brute, manifest);
    }
  } catch (const DegreeError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::degree_too_large;
  } catch (const DischargeError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::degree_too_large;
  } catch (const ExtensionError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::no_configuration;
  } catch (const PartitionError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::no_configuration;
  } catch (const std::exception& e) {
    // unreadable or malformed input of any kind
    err << "error: " << e.what() << '\n';
    return exit_code::bad_input;
  }

  try {
    if (!outcome.text.empty()) out << outcome.text;
    if (!outcome.report.is_null()) {
      const std::string text = outcome.report.dump(2) + "\n";
      if (out_path.empty())
        out << text;
      else
        write_text_file(out_path, text);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::bad_input;
  }
  return outcome.code;
}

}  // namespace linarb
