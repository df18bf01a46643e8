#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tropform/poly.hpp"
#include "tropform/puiseux.hpp"

namespace tropform {

enum class VertexType { Type1, Type2 };

struct Vertex {
  std::string id;
  VertexType type = VertexType::Type2;
  int genus = 0;
  bool boundary = false;
};

/// Oriented edge. Legs have infinite length, no opposite, and point at their type-1 vertex.
struct Edge {
  std::string id;
  std::string tail;
  std::string head;
  ExtRational length;
  std::optional<std::string> opposite;

  bool is_leg() const { return !length.has_value(); }
};

/// Metrized graph with legs; the marked points of the vertex curves live in the reductions.
class CurveComplex {
 public:
  CurveComplex() = default;
  /// Throws InvalidInput unless the graph is structurally sound and connected.
  CurveComplex(std::vector<Vertex> vertices, std::vector<Edge> edges);

  const std::map<std::string, Vertex>& vertices() const { return vertices_; }
  const std::map<std::string, Edge>& edges() const { return edges_; }
  const Vertex& vertex(const std::string& id) const;
  const Edge& edge(const std::string& id) const;
  /// Edges (legs included) whose tail is x; a loop contributes both orientations.
  const std::vector<std::string>& star(const std::string& x) const;
  std::vector<std::string> type2_vertices() const;

 private:
  std::map<std::string, Vertex> vertices_;
  std::map<std::string, Edge> edges_;
  std::map<std::string, std::vector<std::string>> star_;
};

struct AbstractForm {
  std::map<std::string, int> log_order;
  std::map<std::string, Rational> residue;
};

/// Rational differential (num/den) dz over Q with marked points indexed by Star(x).
struct ExplicitP1Form {
  QPoly num;
  QPoly den;
  std::map<std::string, P1Point> marked;

  int log_order(const std::string& e) const { return log_order_at(num, den, marked.at(e)); }
  Rational residue(const std::string& e) const { return residue_at(num, den, marked.at(e)); }
  /// Same differential and marked points (num/den compared by cross-multiplication).
  bool same_as(const ExplicitP1Form& o) const;
};

struct VertexReduction {
  Rational level;
  std::variant<AbstractForm, ExplicitP1Form> form;

  int log_order(const std::string& e) const;
  Rational residue(const std::string& e) const;
  const ExplicitP1Form* explicit_form() const { return std::get_if<ExplicitP1Form>(&form); }
};

using ResidueFunction = std::map<std::string, PuiseuxScalar>;

struct TropicalReductionDatum {
  CurveComplex complex;
  std::map<std::string, VertexReduction> reductions;
  ResidueFunction re;
};

/// Throws InvalidInput if reductions or the residue function do not cover the complex.
void check_structure(const TropicalReductionDatum& g);

struct LevelFunction {
  std::map<std::string, Rational> level;  // type-2 vertices
  std::map<std::string, Rational> slope;  // every edge and leg
};

/// Levels from the gradings, slopes from difference quotients (bounded edges) and
/// minus log-orders (legs). Throws InfiniteSlopeMismatch on a non-integral slope.
LevelFunction level_function(const TropicalReductionDatum& g);

enum class CheckStatus { Pass, Fail, Indeterminate };
std::string_view to_string(CheckStatus s);

struct CheckRecord {
  std::string check;
  std::string location;
  CheckStatus status = CheckStatus::Pass;
  std::vector<std::pair<std::string, std::string>> witness;
};

struct ValidationReport {
  std::vector<CheckRecord> records;

  bool passed() const { return count(CheckStatus::Fail) == 0; }
  size_t count(CheckStatus s) const;
  std::vector<const CheckRecord*> failures() const;
};

ValidationReport validate(const TropicalReductionDatum& g);

/// Both sides of the global residue identity for a set G of non-boundary type-2 vertices:
/// residues on legs out of G, and Re(e^op) over bounded edges leaving G.
struct GrcSides {
  PuiseuxScalar legs;
  PuiseuxScalar crossing;
};
GrcSides grc_sides(const TropicalReductionDatum& g, const std::set<std::string>& vertices);

struct GrcComponent {
  std::set<std::string> vertices;
  GrcSides sides;
  CheckStatus equality = CheckStatus::Pass;
  bool legs_negative = false;
  /// Coefficient of t^{-l0} in the crossing side; only meaningful when legs_negative.
  Rational top_component;
  CheckStatus vanishing = CheckStatus::Pass;
};

struct GrcReport {
  Rational threshold;
  std::vector<GrcComponent> components;

  bool passed() const;
};

/// Components of the full subgraph of non-boundary type-2 vertices with level > l0.
GrcReport global_residue_check(const TropicalReductionDatum& g, const Rational& l0);

/// Sum of all residues of the form vanishes. Throws NonSplitDenominator if the
/// denominator has roots away from the marked points.
bool residue_theorem_check(const ExplicitP1Form& f);

/// Status of an exact sum that should vanish.
CheckStatus zero_status(const PuiseuxScalar& a);

}  // namespace tropform
