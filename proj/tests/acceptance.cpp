// One line per acceptance criterion; nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "linarb/discharge.hpp"
#include "linarb/io.hpp"
#include "linarb/partitioner.hpp"
#include "linarb/reducer.hpp"
#include "support.hpp"

using namespace linarb;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Result {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::function<void(Result&)>& body) {
  Result r;
  const auto t = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.note << " [exception: " << e.what() << "]";
  }
  if (!r.pass) ++failures;
  std::printf("AC%d %s (%.2fs)%s\n", id, r.pass ? "PASS" : "FAIL", since(t), r.note.str().c_str());
  std::fflush(stdout);
}

nlohmann::json untimed(nlohmann::json j) {
  j.erase("seconds");
  j.erase("workers");
  return j;
}

int shell(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

}  // namespace

int main() {
  const fs::path scratch = fs::temp_directory_path() / ("linarb-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(scratch);
  const auto corpus = support::load_corpus();

  criterion(1, [](Result& r) {
    const auto t = Clock::now();
    for (const auto& conf : catalog_lookup("C1")) {
      auto rep = check_reducible(conf);
      r.require(rep.verdict == Verdict::reducible, conf.name() + " reducible");
      r.note << ' ' << conf.name() << ':' << rep.classes_total;
    }
    r.require(since(t) < 60, "under a minute");
  });

  criterion(2, [](Result& r) {
    Configuration edge("edge(9,2)", {"u", "v"}, Graph::build(2, std::vector<std::pair<int, int>>{{0, 1}}), {9, 2},
                       Edge(0, 1));
    auto rep = check_reducible(edge);
    r.require(rep.verdict == Verdict::not_reducible, "edge(9,2) not reducible");
    r.require(rep.witness.has_value(), "witness present");
    if (rep.witness) {
      r.require(rep.witness->multisets.at(0) == ColorCounts{0, 2, 2, 2, 2}, "C_u = {1,1,2,2,3,3,4,4}");
      r.require(rep.witness->multisets.at(1) == ColorCounts{1, 0, 0, 0, 0}, "C_v = {0}");
      r.require(rep.witness->paths.empty(), "P empty");
    }
    auto c3 = check_reducible(catalog_lookup("C3").front());
    r.require(c3.verdict == Verdict::not_reducible, "C3 not reducible");
    r.note << " C3 witness " << witness_json(catalog_lookup("C3").front(), *c3.witness).dump();
  });

  criterion(3, [&scratch](Result& r) {
    for (const char* name : {"C8", "C2(3)", "C2(9)", "C6", "C9"}) {
      const auto t = Clock::now();
      auto rep = check_reducible(catalog_lookup(name).front());
      r.require(rep.verdict == Verdict::reducible, std::string(name) + " reducible");
      r.require(since(t) < 600, std::string(name) + " under 10 minutes");
      r.note << ' ' << name << ':' << rep.classes_total << '/' << since(t) << 's';
    }
    // kill a checkpointed run, resume it, compare with an uninterrupted one
    const std::string cp = (scratch / "c5.checkpoint.json").string();
    const std::string out = (scratch / "c5.resumed.json").string();
    const std::string cli = LINARB_CLI;
    ::setenv("LINARB_WORKERS", "1", 1);
    int killed = shell("timeout -s KILL 3 " + cli + " check C5 --symmetry --checkpoint " + cp + " > /dev/null 2>&1");
    r.note << " killed-exit=" << killed;
    r.require(killed != 0, "first run interrupted");
    r.require(fs::exists(cp), "checkpoint survived the kill");
    if (fs::exists(cp)) {
      auto j = nlohmann::json::parse(read_text_file(cp));
      r.note << " resumed-at=" << j["next_index"];
      int code = shell(cli + " check C5 --symmetry --resume " + cp + " --checkpoint " + cp + " --out " + out);
      r.require(code == 0, "resumed run reducible");
      auto resumed = nlohmann::json::parse(read_text_file(out));
      CheckOptions opt;
      opt.symmetry = true;
      auto fresh = to_json(catalog_lookup("C5").front(), check_reducible(catalog_lookup("C5").front(), opt));
      for (const char* key : {"verdict", "classes_total", "classes_feasible"})
        r.require(resumed[key] == fresh[key], std::string(key) + " matches a fresh run");
      r.note << " C5:" << fresh["classes_total"];
    }
  });

  criterion(4, [&corpus](Result& r) {
    const auto t = Clock::now();
    std::size_t checked = 0;
    for (const Graph& g : corpus) {
      if (g.order() > 8 || g.size() > 14 || !g.connected()) continue;
      EdgeColoring c = partition(g);
      r.require(validate(g, c).empty(), "partition valid on " + to_graph6(g));
      r.require(brute_force_partition(g, {}).has_value(), "oracle succeeds on " + to_graph6(g));
      if (!r.pass) return;
      ++checked;
    }
    r.note << ' ' << checked << " graphs";
    r.require(checked > 1000, "corpus loaded");
    r.require(since(t) < 600, "under 10 minutes");
  });

  criterion(5, [](Result& r) {
    // K4 with the edge 2-3 subdivided by vertex 4
    const Graph g = Graph::build(5, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}, {4, 3}});
    const auto t = Clock::now();
    auto found = brute_force_partition(g, PartitionSpec{1, 1});
    r.require(!found, "no (1,1) partition");
    r.require(since(t) < 1, "under a second");
  });

  criterion(6, [](Result& r) {
    const auto t = Clock::now();
    auto conserve = [&r](const PlaneGraph& pg, const std::string& what) {
      AuditReport a = audit(pg);
      r.require(a.total_initial == Charge(-8), what + " initial -8");
      r.require(a.total_final && *a.total_final == Charge(-8), what + " final -8");
      r.require(a.transfers_balanced, what + " transfers zero-sum");
      // replay independently of the audit
      ChargeLedger start = initial_charges(pg);
      ChargeLedger end = apply_rules(pg);
      for (const Transfer& x : end.transcript) {
        (x.source.kind == Element::Kind::vertex ? start.vertex : start.face)[x.source.id] -= x.amount;
        (x.sink.kind == Element::Kind::vertex ? start.vertex : start.face)[x.sink.id] += x.amount;
      }
      r.require(start.vertex == end.vertex && start.face == end.face, what + " replay");
    };
    conserve(support::load_rotation("dodecahedron.rot"), "dodecahedron");
    conserve(support::load_rotation("icosahedron.rot"), "icosahedron");
    std::mt19937_64 rng(20261016);
    int done = 0, redrawn = 0;
    while (done < 100) {
      PlaneGenOptions opt;
      opt.vertices = std::uniform_int_distribution<int>(4, 40)(rng);
      opt.keep_edge_probability = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
      PlaneGraph pg = random_plane_graph(rng, opt);
      try {
        apply_rules(pg);
      } catch (const UndefinedCell&) {
        ++redrawn;
        continue;
      }
      conserve(pg, "random graph " + std::to_string(done));
      ++done;
    }
    r.note << " redrawn=" << redrawn;
    r.require(since(t) < 60, "under a minute");
  });

  criterion(7, [](Result& r) {
    r.require(m_value(5, 9, 6) == Charge(7, 15), "m(5,9,6)");
    r.require(m_value(5, 8, 7) == Charge(2, 5), "m(5,8,7)");
    r.require(m_value(4, 7, 9) == Charge(1, 2), "m(4,7,9)");
    r.require(m_value(6, 6, 6) == Charge(1, 3), "m(6,6,6)");
    r.require(m_value(3, 5, 9) == Charge(1, 5), "m(3,5,9)");
    r.require(m_value(2, 4, 9) == Charge(0), "m(2,4,9)");
    bool raised = false;
    try {
      m_value(5, 9, 5);
    } catch (const UndefinedCell& e) {
      raised = true;
      r.note << " (5,9,5): " << e.what();
    }
    r.require(raised, "m(5,9,5) raises");
  });

  criterion(8, [&corpus](Result& r) {
    std::size_t hits = 0, eligible = 0;
    for (const Graph& g : corpus) {
      if (g.size() == 0 || g.max_degree() > 9) continue;
      ++eligible;
      if (find_any(g)) ++hits;
      else r.require(false, "no hit on " + to_graph6(g));
    }
    r.note << ' ' << hits << '/' << eligible;
  });

  criterion(9, [](Result& r) {
    const Configuration conf = catalog_lookup("C1(5,5)").front();
    std::string first;
    for (int w : {1, 2, 8}) {
      CheckOptions opt;
      opt.workers = w;
      std::string dump = untimed(to_json(conf, check_reducible(conf, opt))).dump();
      if (first.empty()) first = dump;
      r.require(dump == first, std::to_string(w) + " workers");
    }
  });

  criterion(10, [](Result& r) {
    std::mt19937_64 rng(50);
    PlaneGenOptions opt;
    opt.vertices = 50;
    const Graph g = random_plane_graph(rng, opt).graph();
    const auto t = Clock::now();
    EdgeColoring c = partition(g);
    const double s = since(t);
    r.require(validate(g, c).empty(), "valid");
    r.require(s < 10, "under 10 seconds");
    r.note << " n=" << g.order() << " m=" << g.size() << " max-degree=" << g.max_degree();
  });

  fs::remove_all(scratch);
  std::printf("%s\n", failures == 0 ? "all criteria passed" : (std::to_string(failures) + " criteria failed").c_str());
  return failures == 0 ? 0 : 1;
}
