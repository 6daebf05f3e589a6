#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "linarb/plane_graph.hpp"

namespace linarb {

using Charge = boost::rational<long long>;

std::string to_string(const Charge& q);

class DischargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The m-table cell a >= 7, b = c = 5, which the rules never need.
class UndefinedCell : public DischargeError {
 public:
  UndefinedCell(int b, int a, int c, std::vector<Vertex> triangle = {});
  std::vector<Vertex> triangle;  // (v, u, w) when raised from a face
};

/// R4 transfer from an a-vertex to a triangle whose other corners have
/// degrees b and c.
Charge m_value(int b, int a, int c);

struct Element {
  enum class Kind { vertex, face };
  Kind kind = Kind::vertex;
  int id = 0;

  std::string str() const { return (kind == Kind::vertex ? "v" : "f") + std::to_string(id); }
  auto operator<=>(const Element&) const = default;
};

struct Transfer {
  Element source;
  Element sink;
  Charge amount;
  int rule = 0;  // 1..4
  std::optional<Segment> segment;
};

struct ChargeLedger {
  std::vector<Charge> vertex;
  std::vector<Charge> face;
  std::vector<Face> faces;
  std::vector<Transfer> transcript;

  Charge total() const;
  const Charge& at(Element e) const { return e.kind == Element::Kind::vertex ? vertex.at(e.id) : face.at(e.id); }
};

/// d(v) - 4 on vertices, l(f) - 4 on faces. Throws GraphError when pg is
/// disconnected.
ChargeLedger initial_charges(const PlaneGraph& pg);

/// Applies R1..R4 to the initial charges. Throws DischargeError when the
/// maximum degree exceeds 9 and UndefinedCell for a triangle hitting the
/// unused m-table cell.
ChargeLedger apply_rules(const PlaneGraph& pg);

struct AuditReport {
  Charge total_initial;
  std::optional<Charge> total_final;  // absent when the rules could not run
  std::vector<std::pair<Element, Charge>> negatives;
  std::vector<std::string> configurations;  // find_any's hit first
  bool transfers_balanced = true;
  bool conserved = false;
  /// Negative element present implies some configuration occurs.
  bool contrapositive_holds = false;
  std::optional<std::string> undefined_cell;
  std::vector<Transfer> transcript;
};

AuditReport audit(const PlaneGraph& pg);

nlohmann::json to_json(const Transfer& t);
nlohmann::json to_json(const AuditReport& report, bool with_transfers = false);

}  // namespace linarb
