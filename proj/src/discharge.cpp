#include "linarb/discharge.hpp"

#include <algorithm>
#include <sstream>

#include "linarb/configuration.hpp"

namespace linarb {

std::string to_string(const Charge& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

UndefinedCell::UndefinedCell(int b, int a, int c, std::vector<Vertex> tri)
    : DischargeError("m(" + std::to_string(b) + "," + std::to_string(a) + "," + std::to_string(c) +
                     ") is undefined: its opposite edge has degree sum 10 (C1)"),
      triangle(std::move(tri)) {}

Charge m_value(int b, int a, int c) {
  if (b > c) std::swap(b, c);
  if (a <= 4) return 0;
  if (a == 5) return Charge(1, 5);
  if (a == 6) return Charge(1, 3);
  if (b <= 4) return Charge(1, 2);
  if (b == 5) {
    if (c == 5) throw UndefinedCell(b, a, c);
    return c == 6 ? Charge(7, 15) : Charge(2, 5);
  }
  return Charge(1, 3);
}

Charge ChargeLedger::total() const {
  Charge sum = 0;
  for (const auto& q : vertex) sum += q;
  for (const auto& q : face) sum += q;
  return sum;
}

ChargeLedger initial_charges(const PlaneGraph& pg) {
  ChargeLedger ledger;
  ledger.faces = trace_faces(pg);
  const Graph& g = pg.graph();
  for (Vertex v = 0; v < g.order(); ++v) ledger.vertex.push_back(g.degree(v) - 4);
  for (const Face& f : ledger.faces) ledger.face.push_back(f.length() - 4);
  return ledger;
}

namespace {

void move_charge(ChargeLedger& ledger, Element from, Element to, Charge amount, int rule,
                 std::optional<Segment> segment = std::nullopt) {
  auto slot = [&](Element e) -> Charge& {
    return e.kind == Element::Kind::vertex ? ledger.vertex[e.id] : ledger.face[e.id];
  };
  slot(from) -= amount;
  slot(to) += amount;
  ledger.transcript.push_back({from, to, amount, rule, segment});
}

Element vertex_element(Vertex v) { return {Element::Kind::vertex, v}; }
Element face_element(int f) { return {Element::Kind::face, f}; }

}  // namespace

ChargeLedger apply_rules(const PlaneGraph& pg) {
  const Graph& g = pg.graph();
  if (g.max_degree() > kMaxDegree)
    throw DischargeError("maximum degree " + std::to_string(g.max_degree()) + " exceeds 9");
  ChargeLedger ledger = initial_charges(pg);

  // R1, R2; 1-vertices take no part
  for (int rule : {1, 2})
    for (Vertex u = 0; u < g.order(); ++u) {
      if (g.degree(u) < 2) continue;
      for (Vertex v : g.neighbours(u))
        if (g.degree(v) == rule + 1) move_charge(ledger, vertex_element(u), vertex_element(v),
                                                 rule == 1 ? Charge(1) : Charge(1, 3), rule);
    }

  std::vector<Segment> segments;
  for (int f = 0; f < static_cast<int>(ledger.faces.size()); ++f) {
    const auto& walk = ledger.faces[f].walk;
    const int len = static_cast<int>(walk.size());
    if (len < 3) continue;
    for (int i = 0; i < len; ++i)
      segments.push_back({walk[(i + len - 1) % len], walk[i], walk[(i + 1) % len], f, len});
  }

  // R3
  for (const Segment& s : segments) {
    if (s.length < 5) continue;
    const int dx = g.degree(s.x);
    const int dz = g.degree(s.z);
    if (dx == 3 && dz == 3)
      move_charge(ledger, face_element(s.face), vertex_element(s.y), Charge(2, 3), 3, s);
    else if (dx == 2 || dz == 2)
      move_charge(ledger, face_element(s.face), vertex_element(s.y), Charge(1, 2), 3, s);
  }

  // R4, recorded even when m is zero
  for (const Segment& s : segments) {
    if (!s.triangular()) continue;
    Charge m;
    try {
      m = m_value(g.degree(s.x), g.degree(s.y), g.degree(s.z));
    } catch (const UndefinedCell& e) {
      throw UndefinedCell(g.degree(s.x), g.degree(s.y), g.degree(s.z), {s.x, s.y, s.z});
    }
    move_charge(ledger, vertex_element(s.y), face_element(s.face), m, 4, s);
  }

  std::stable_sort(ledger.transcript.begin(), ledger.transcript.end(), [](const Transfer& a, const Transfer& b) {
    return std::tie(a.rule, a.source, a.sink) < std::tie(b.rule, b.source, b.sink);
  });
  return ledger;
}

AuditReport audit(const PlaneGraph& pg) {
  const Graph& g = pg.graph();
  AuditReport report;
  const ChargeLedger start = initial_charges(pg);
  report.total_initial = start.total();

  if (auto hit = find_any(g)) {
    report.configurations.push_back(hit->configuration.name());
    for (const auto& conf : catalog())
      if (conf.name() != hit->configuration.name() && match_first(g, conf))
        report.configurations.push_back(conf.name());
  }

  try {
    ChargeLedger end = apply_rules(pg);
    report.total_final = end.total();
    report.conserved = report.total_initial == *report.total_final;

    // replay the transcript over the initial charges
    ChargeLedger replay = start;
    for (const Transfer& t : end.transcript) {
      (t.source.kind == Element::Kind::vertex ? replay.vertex[t.source.id] : replay.face[t.source.id]) -= t.amount;
      (t.sink.kind == Element::Kind::vertex ? replay.vertex[t.sink.id] : replay.face[t.sink.id]) += t.amount;
    }
    report.transfers_balanced = replay.vertex == end.vertex && replay.face == end.face;

    for (Vertex v = 0; v < g.order(); ++v)
      if (end.vertex[v] < 0) report.negatives.push_back({vertex_element(v), end.vertex[v]});
    for (int f = 0; f < static_cast<int>(end.face.size()); ++f)
      if (end.face[f] < 0) report.negatives.push_back({face_element(f), end.face[f]});
    report.transcript = std::move(end.transcript);
  } catch (const UndefinedCell& e) {
    std::ostringstream text;
    text << e.what();
    if (!e.triangle.empty())
      text << " at triangle (" << e.triangle[0] << "," << e.triangle[1] << "," << e.triangle[2] << "), edge "
           << e.triangle[0] << "-" << e.triangle[2];
    report.undefined_cell = text.str();
  }
  report.contrapositive_holds = report.negatives.empty() || !report.configurations.empty();
  return report;
}

nlohmann::json to_json(const Transfer& t) {
  nlohmann::json j{{"source", t.source.str()}, {"sink", t.sink.str()}, {"amount", to_string(t.amount)},
                   {"rule", "R" + std::to_string(t.rule)}};
  if (t.segment) j["segment"] = {t.segment->x, t.segment->y, t.segment->z};
  return j;
}

nlohmann::json to_json(const AuditReport& report, bool with_transfers) {
  nlohmann::json negatives = nlohmann::json::array();
  for (const auto& [e, q] : report.negatives) negatives.push_back({{"element", e.str()}, {"charge", to_string(q)}});
  nlohmann::json j{{"total_initial", to_string(report.total_initial)},
                   {"total_final", report.total_final ? nlohmann::json(to_string(*report.total_final)) : nullptr},
                   {"negatives", negatives},
                   {"configurations", report.configurations},
                   {"conserved", report.conserved},
                   {"transfers_balanced", report.transfers_balanced},
                   {"contrapositive_holds", report.contrapositive_holds}};
  if (report.undefined_cell) j["undefined_cell"] = *report.undefined_cell;
  if (with_transfers) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& t : report.transcript) list.push_back(to_json(t));
    j["transfers"] = list;
  }
  return j;
}

}  // namespace linarb
