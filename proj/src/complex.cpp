#include "tropform/complex.hpp"

#include <deque>

#include "tropform/error.hpp"

namespace tropform {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

std::string str(const PuiseuxScalar& a) { return a.to_string(); }
std::string str(const Rational& q) { return to_string(q); }

/// Divides out every factor z - q for the finite marked points.
QPoly strip_marked(QPoly p, const std::map<std::string, P1Point>& marked) {
  for (const auto& [e, q] : marked) {
    if (!q) continue;
    while (p.degree() >= 1) {
      Rational rem;
      QPoly quot = p.divide_linear(*q, rem);
      if (rem != 0) break;
      p = std::move(quot);
    }
  }
  return p;
}

}  // namespace

CurveComplex::CurveComplex(std::vector<Vertex> vertices, std::vector<Edge> edges) {
  for (auto& v : vertices) {
    if (v.id.empty()) bad("vertex with empty id");
    if (v.genus < 0) bad("negative genus at " + v.id);
    if (!vertices_.emplace(v.id, v).second) bad("duplicate vertex id " + v.id);
  }
  for (auto& e : edges) {
    if (vertices_.count(e.id)) bad("edge id " + e.id + " clashes with a vertex id");
    if (!edges_.emplace(e.id, e).second) bad("duplicate edge id " + e.id);
  }
  std::map<std::string, int> incident;
  for (const auto& [id, e] : edges_) {
    auto t = vertices_.find(e.tail);
    auto h = vertices_.find(e.head);
    if (t == vertices_.end() || h == vertices_.end()) bad("edge " + id + " has an unknown endpoint");
    if (t->second.type != VertexType::Type2) bad("edge " + id + " leaves a type-1 vertex");
    ++incident[e.head];
    ++incident[e.tail];
    if (e.is_leg()) {
      if (h->second.type != VertexType::Type1) bad("leg " + id + " must end at a type-1 vertex");
      if (e.opposite) bad("leg " + id + " cannot have an opposite");
    } else {
      if (h->second.type != VertexType::Type2) bad("bounded edge " + id + " ends at a type-1 vertex");
      if (*e.length <= 0) bad("edge " + id + " has non-positive length");
      if (!e.opposite) bad("bounded edge " + id + " has no opposite");
      auto o = edges_.find(*e.opposite);
      if (o == edges_.end() || o->first == id) bad("edge " + id + " has an invalid opposite");
      const Edge& op = o->second;
      if (op.tail != e.head || op.head != e.tail || op.length != e.length || op.opposite != id) {
        bad("edges " + id + " and " + op.id + " are not opposite orientations of one edge");
      }
    }
    star_[e.tail].push_back(id);
  }
  for (const auto& [id, v] : vertices_) {
    if (v.type == VertexType::Type1 && incident[id] != 1) bad("type-1 vertex " + id + " needs exactly one leg");
  }
  if (!vertices_.empty()) {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [id, e] : edges_) {
      adj[e.tail].push_back(e.head);
      adj[e.head].push_back(e.tail);
    }
    std::set<std::string> seen{vertices_.begin()->first};
    std::deque<std::string> queue{vertices_.begin()->first};
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (const auto& y : adj[x]) {
        if (seen.insert(y).second) queue.push_back(y);
      }
    }
    if (seen.size() != vertices_.size()) bad("complex is not connected");
  }
}

const Vertex& CurveComplex::vertex(const std::string& id) const {
  auto it = vertices_.find(id);
  if (it == vertices_.end()) bad("unknown vertex " + id);
  return it->second;
}

const Edge& CurveComplex::edge(const std::string& id) const {
  auto it = edges_.find(id);
  if (it == edges_.end()) bad("unknown edge " + id);
  return it->second;
}

const std::vector<std::string>& CurveComplex::star(const std::string& x) const {
  static const std::vector<std::string> empty;
  auto it = star_.find(x);
  return it == star_.end() ? empty : it->second;
}

std::vector<std::string> CurveComplex::type2_vertices() const {
  std::vector<std::string> out;
  for (const auto& [id, v] : vertices_) {
    if (v.type == VertexType::Type2) out.push_back(id);
  }
  return out;
}

bool ExplicitP1Form::same_as(const ExplicitP1Form& o) const {
  return marked == o.marked && num * o.den == o.num * den;
}

int VertexReduction::log_order(const std::string& e) const {
  if (auto f = explicit_form()) return f->log_order(e);
  const auto& a = std::get<AbstractForm>(form);
  auto it = a.log_order.find(e);
  if (it == a.log_order.end()) bad("no log-order recorded for " + e);
  return it->second;
}

Rational VertexReduction::residue(const std::string& e) const {
  if (auto f = explicit_form()) return f->residue(e);
  const auto& a = std::get<AbstractForm>(form);
  auto it = a.residue.find(e);
  if (it == a.residue.end()) bad("no residue recorded for " + e);
  return it->second;
}

void check_structure(const TropicalReductionDatum& g) {
  const auto& cx = g.complex;
  for (const auto& [x, red] : g.reductions) {
    if (cx.vertex(x).type != VertexType::Type2) bad("reduction given at type-1 vertex " + x);
  }
  for (const auto& x : cx.type2_vertices()) {
    auto it = g.reductions.find(x);
    if (it == g.reductions.end()) bad("no reduction at vertex " + x);
    const auto& star = cx.star(x);
    std::set<std::string> want(star.begin(), star.end());
    std::set<std::string> have;
    if (auto f = it->second.explicit_form()) {
      if (cx.vertex(x).genus != 0) bad("explicit P1 form at vertex " + x + " of positive genus");
      if (f->num.is_zero() || f->den.is_zero()) bad("zero numerator or denominator at " + x);
      std::set<P1Point> points;
      for (const auto& [e, q] : f->marked) {
        have.insert(e);
        if (!points.insert(q).second) bad("marked points collide at vertex " + x);
      }
    } else {
      const auto& a = std::get<AbstractForm>(it->second.form);
      for (const auto& [e, n] : a.log_order) have.insert(e);
      std::set<std::string> res_keys;
      for (const auto& [e, r] : a.residue) res_keys.insert(e);
      if (res_keys != have) bad("log-orders and residues at " + x + " cover different branches");
    }
    if (have != want) bad("marked points at " + x + " do not match Star(" + x + ")");
  }
  for (const auto& [e, edge] : cx.edges()) {
    if (!g.re.count(e)) bad("residue function undefined on " + e);
  }
  for (const auto& [e, r] : g.re) cx.edge(e);
}

LevelFunction level_function(const TropicalReductionDatum& g) {
  check_structure(g);
  LevelFunction out;
  for (const auto& [x, red] : g.reductions) out.level[x] = red.level;
  for (const auto& [id, e] : g.complex.edges()) {
    if (e.is_leg()) {
      out.slope[id] = -g.reductions.at(e.tail).log_order(id);
      continue;
    }
    Rational s = canonical((out.level.at(e.head) - out.level.at(e.tail)) / *e.length);
    if (s.get_den() != 1) {
      throw Error(ErrorKind::InfiniteSlopeMismatch, "slope " + to_string(s) + " on edge " + id + " is not an integer");
    }
    out.slope[id] = s;
  }
  return out;
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

size_t ValidationReport::count(CheckStatus s) const {
  size_t n = 0;
  for (const auto& r : records) n += r.status == s;
  return n;
}

std::vector<const CheckRecord*> ValidationReport::failures() const {
  std::vector<const CheckRecord*> out;
  for (const auto& r : records) {
    if (r.status == CheckStatus::Fail) out.push_back(&r);
  }
  return out;
}

CheckStatus zero_status(const PuiseuxScalar& a) {
  if (a.is_exact_zero()) return CheckStatus::Pass;
  if (a.is_zero_to_precision()) return CheckStatus::Indeterminate;
  return CheckStatus::Fail;
}

namespace {

CheckStatus pass_if(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

/// Condition (2): the graded reduction of Re(e) is the residue of the reduction at p_e.
CheckStatus graded_residue_status(const PuiseuxScalar& re, const Rational& res, const Rational& level) {
  const Rational grade = -level;
  const Valuation v = re.val();
  if (v.finite()) {
    if (res == 0) return pass_if(v.value > grade);
    return pass_if(v.value == grade && re.leading_coeff() == res);
  }
  if (re.is_exact_zero()) return pass_if(res == 0);
  // zero to precision: val(Re) >= prec
  if (*re.prec() > grade) return pass_if(res == 0);
  return CheckStatus::Indeterminate;
}

}  // namespace

ValidationReport validate(const TropicalReductionDatum& g) {
  check_structure(g);
  const auto& cx = g.complex;
  ValidationReport rep;
  auto add = [&](std::string check, std::string loc, CheckStatus st,
                 std::vector<std::pair<std::string, std::string>> witness) {
    rep.records.push_back({std::move(check), std::move(loc), st, std::move(witness)});
  };

  std::map<std::string, Rational> slope;
  for (const auto& [id, e] : cx.edges()) {
    const auto& red = g.reductions.at(e.tail);
    if (e.is_leg()) {
      slope[id] = -red.log_order(id);
      continue;
    }
    const Rational& lt = red.level;
    const Rational& lh = g.reductions.at(e.head).level;
    slope[id] = canonical((lh - lt) / *e.length);
    add("slope", id, pass_if(slope[id].get_den() == 1),
        {{"level_tail", str(lt)}, {"level_head", str(lh)}, {"length", str(*e.length)}, {"slope", str(slope[id])}});
  }

  for (const auto& x : cx.type2_vertices()) {
    const Vertex& v = cx.vertex(x);
    const VertexReduction& red = g.reductions.at(x);
    const auto& star = cx.star(x);

    for (const auto& e : star) {
      const Edge& edge = cx.edge(e);
      const int lo = red.log_order(e);
      const Rational res = red.residue(e);
      const PuiseuxScalar& re = g.re.at(e);
      if (!edge.is_leg()) {
        add("condition1", e, pass_if(Rational(lo) == -slope.at(e)),
            {{"log_order", std::to_string(lo)}, {"slope", str(slope.at(e))}});
      }
      add("condition2", e, graded_residue_status(re, res, red.level),
          {{"Re", str(re)}, {"residue", str(res)}, {"level", str(red.level)}});
      CheckStatus c4 = slope.at(e) < 0 ? zero_status(re) : CheckStatus::Pass;
      add("condition4", e, c4, {{"slope", str(slope.at(e))}, {"Re", str(re)}});
      if (slope.at(e) == 0) {
        CheckStatus st;
        const Valuation val = re.val();
        if (val.finite()) {
          st = pass_if(red.level == -val.value);
        } else if (re.is_zero_to_precision() && *re.prec() <= -red.level) {
          st = CheckStatus::Indeterminate;
        } else {
          st = CheckStatus::Fail;
        }
        add("slope0_level", e, st, {{"Re", str(re)}, {"level", str(red.level)}});
      }
      if (!red.explicit_form()) {
        const bool ok = lo == 0 ? res != 0 : (lo > 0 ? res == 0 : true);
        add("abstract_residue", e, pass_if(ok), {{"log_order", std::to_string(lo)}, {"residue", str(res)}});
      }
      if (!edge.is_leg()) {
        const PuiseuxScalar sum = re + g.re.at(*edge.opposite);
        add("alternating", e, zero_status(sum),
            {{"Re", str(re)}, {"Re_op", str(g.re.at(*edge.opposite))}, {"sum", str(sum)}});
      }
    }

    if (!v.boundary) {
      PuiseuxScalar total;
      long degree = 0;
      for (const auto& e : star) {
        total += g.re.at(e);
        degree += red.log_order(e);
      }
      add("condition3", x, zero_status(total), {{"sum", str(total)}});
      const long want = 2L * v.genus - 2 + static_cast<long>(star.size());
      add("degree", x, pass_if(degree == want),
          {{"sum_log_orders", std::to_string(degree)}, {"expected", std::to_string(want)}});
    }

    if (auto f = red.explicit_form()) {
      QPoly n = strip_marked(f->num, f->marked);
      QPoly d = strip_marked(f->den, f->marked);
      bool inf_marked = false;
      for (const auto& [e, q] : f->marked) inf_marked |= !q.has_value();
      const bool inf_ok = inf_marked || log_order_at(f->num, f->den, std::nullopt) == 1;
      add("p1_support", x, pass_if(n.degree() == 0 && d.degree() == 0 && inf_ok),
          {{"unmarked_zero_degree", std::to_string(n.degree())}, {"unmarked_pole_degree", std::to_string(d.degree())},
           {"infinity_regular", inf_ok ? "true" : "false"}});
      try {
        add("residue_theorem", x, pass_if(residue_theorem_check(*f)), {});
      } catch (const Error& err) {
        add("residue_theorem", x, CheckStatus::Fail, {{"error", err.what()}});
      }
    }
  }
  return rep;
}

GrcSides grc_sides(const TropicalReductionDatum& g, const std::set<std::string>& vertices) {
  GrcSides out;
  for (const auto& x : vertices) {
    for (const auto& e : g.complex.star(x)) {
      const Edge& edge = g.complex.edge(e);
      if (edge.is_leg()) {
        out.legs += g.re.at(e);
      } else if (!vertices.count(edge.head)) {
        out.crossing += g.re.at(*edge.opposite);
      }
    }
  }
  return out;
}

bool GrcReport::passed() const {
  for (const auto& c : components) {
    if (c.equality == CheckStatus::Fail || c.vanishing == CheckStatus::Fail) return false;
  }
  return true;
}

GrcReport global_residue_check(const TropicalReductionDatum& g, const Rational& l0) {
  check_structure(g);
  const auto& cx = g.complex;
  std::set<std::string> high;
  for (const auto& x : cx.type2_vertices()) {
    if (!cx.vertex(x).boundary && g.reductions.at(x).level > l0) high.insert(x);
  }
  GrcReport rep{l0, {}};
  std::set<std::string> seen;
  for (const auto& start : high) {
    if (seen.count(start)) continue;
    GrcComponent comp;
    std::deque<std::string> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      comp.vertices.insert(x);
      for (const auto& e : cx.star(x)) {
        const Edge& edge = cx.edge(e);
        if (!edge.is_leg() && high.count(edge.head) && seen.insert(edge.head).second) queue.push_back(edge.head);
      }
    }
    comp.sides = grc_sides(g, comp.vertices);
    comp.equality = zero_status(comp.sides.legs - comp.sides.crossing);
    comp.legs_negative = true;
    for (const auto& x : comp.vertices) {
      for (const auto& e : cx.star(x)) {
        if (cx.edge(e).is_leg() && -g.reductions.at(x).log_order(e) >= 0) comp.legs_negative = false;
      }
    }
    if (comp.legs_negative) {
      try {
        comp.top_component = comp.sides.crossing.coeff(-l0);
        comp.vanishing = pass_if(comp.top_component == 0);
      } catch (const Error&) {
        comp.vanishing = CheckStatus::Indeterminate;
      }
    }
    rep.components.push_back(std::move(comp));
  }
  return rep;
}

bool residue_theorem_check(const ExplicitP1Form& f) {
  if (f.num.is_zero()) return true;
  QPoly d = strip_marked(f.den, f.marked);
  if (d.degree() > 0) {
    throw Error(ErrorKind::NonSplitDenominator, "denominator has a factor of degree " + std::to_string(d.degree()) +
                                                    " away from the marked points");
  }
  Rational total = residue_at(f.num, f.den, std::nullopt);
  for (const auto& [e, q] : f.marked) {
    if (q) total += residue_at(f.num, f.den, q);
  }
  return total == 0;
}

}  // namespace tropform
