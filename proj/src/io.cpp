#include "tropform/io.hpp"

#include <fstream>

#include "tropform/error.hpp"

namespace tropform {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string str(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

bool flag(const Json& j, const char* key, bool fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) bad(std::string("field '") + key + "' must be a boolean");
  return it->get<bool>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

Json point_to_json(const P1Point& q) { return ext_to_json(q); }
P1Point point_from_json(const Json& j) { return ext_from_json(j); }

Json marked_to_json(const std::map<std::string, P1Point>& m) {
  Json out = Json::object();
  for (const auto& [e, q] : m) out[e] = point_to_json(q);
  return out;
}

std::map<std::string, P1Point> marked_from_json(const Json& j) {
  if (!j.is_object()) bad("marked points must be an object");
  std::map<std::string, P1Point> out;
  for (const auto& [e, q] : j.items()) out[e] = point_from_json(q);
  return out;
}

template <class P, class F>
Json poly_to_json(const P& p, F each) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(each(c));
  return out;
}

QPoly qpoly_from_json(const Json& j) {
  std::vector<Rational> c;
  for (const auto& x : array(j, "polynomial")) c.push_back(rational_from_json(x));
  return QPoly(std::move(c));
}

KPoly kpoly_from_json(const Json& j) {
  std::vector<PuiseuxScalar> c;
  for (const auto& x : array(j, "polynomial")) c.push_back(scalar_from_json(x));
  return KPoly(std::move(c));
}

Json complex_to_json(const CurveComplex& cx) {
  Json vs = Json::array(), es = Json::array(), legs = Json::array();
  for (const auto& [id, v] : cx.vertices()) {
    vs.push_back({{"id", id},
                  {"vtype", v.type == VertexType::Type1 ? "type1" : "type2"},
                  {"genus", v.genus},
                  {"boundary", v.boundary}});
  }
  for (const auto& [id, e] : cx.edges()) {
    Json r{{"id", id}, {"tail", e.tail}, {"head", e.head}, {"length", ext_to_json(e.length)}};
    if (e.opposite) r["opposite"] = *e.opposite;
    (e.is_leg() ? legs : es).push_back(std::move(r));
  }
  return Json{{"vertices", vs}, {"edges", es}, {"legs", legs}};
}

CurveComplex complex_from_json(const Json& j) {
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (const auto& v : array(field(j, "vertices"), "vertices")) {
    const std::string t = str(v, "vtype");
    if (t != "type1" && t != "type2") bad("vertex type must be type1 or type2");
    vs.push_back(Vertex{str(v, "id"), t == "type1" ? VertexType::Type1 : VertexType::Type2,
                        v.contains("genus") ? integer(v["genus"], "genus") : 0, flag(v, "boundary", false)});
  }
  auto edges = [&](const char* key, bool legs) {
    if (!j.contains(key)) return;
    for (const auto& e : array(j[key], key)) {
      Edge edge{str(e, "id"), str(e, "tail"), str(e, "head"), ext_from_json(field(e, "length")), std::nullopt};
      if (e.contains("opposite") && !e["opposite"].is_null()) edge.opposite = str(e, "opposite");
      if (legs != edge.is_leg()) bad("edge " + edge.id + (legs ? " listed as a leg has finite length" : " has infinite length"));
      es.push_back(std::move(edge));
    }
  };
  edges("edges", false);
  edges("legs", true);
  return CurveComplex(std::move(vs), std::move(es));
}

Json reduction_to_json(const VertexReduction& r) {
  Json form;
  if (const auto* f = r.explicit_form()) {
    form["p1"] = {{"num", poly_to_json(f->num, [](const Rational& q) { return to_json(q); })},
                  {"den", poly_to_json(f->den, [](const Rational& q) { return to_json(q); })},
                  {"marked", marked_to_json(f->marked)}};
  } else {
    const auto& a = std::get<AbstractForm>(r.form);
    Json lo = Json::object(), re = Json::object();
    for (const auto& [e, k] : a.log_order) lo[e] = k;
    for (const auto& [e, q] : a.residue) re[e] = to_json(q);
    form["abstract"] = {{"log_order", lo}, {"residue", re}};
  }
  return Json{{"level", to_json(r.level)}, {"form", form}};
}

VertexReduction reduction_from_json(const Json& j) {
  VertexReduction r{rational_from_json(field(j, "level")), AbstractForm{}};
  const Json& form = field(j, "form");
  if (form.contains("p1")) {
    const Json& p = form["p1"];
    r.form = ExplicitP1Form{qpoly_from_json(field(p, "num")), qpoly_from_json(field(p, "den")),
                            marked_from_json(field(p, "marked"))};
  } else if (form.contains("abstract")) {
    const Json& a = form["abstract"];
    AbstractForm f;
    for (const auto& [e, k] : field(a, "log_order").items()) f.log_order[e] = integer(k, "log-order");
    for (const auto& [e, q] : field(a, "residue").items()) f.residue[e] = rational_from_json(q);
    r.form = std::move(f);
  } else {
    bad("form must be 'p1' or 'abstract'");
  }
  return r;
}

Json change_to_json(const CoordinateChange& c) {
  return Json{{"reverses", c.reverses}, {"constant", to_json(c.constant)}, {"unit", to_json(c.unit)}};
}

CoordinateChange change_from_json(const Json& j) {
  return CoordinateChange{flag(j, "reverses", false), scalar_from_json(field(j, "constant")),
                          series_from_json(field(j, "unit"))};
}

Json side_to_json(const SideCoordinate& s) {
  return Json{{"n", s.n}, {"c_n", to_json(s.c_n)}, {"c_0", to_json(s.c_0)}, {"change", change_to_json(s.change)}};
}

SideCoordinate side_from_json(const Json& j) {
  return SideCoordinate{integer(field(j, "n"), "n"), change_from_json(field(j, "change")),
                        scalar_from_json(field(j, "c_n")), scalar_from_json(field(j, "c_0"))};
}

Json piece_to_json(const StarPiece& p) {
  Json annuli = Json::object();
  for (const auto& [e, r] : p.annuli) annuli[e] = Json::array({to_json(r.inner), to_json(r.outer)});
  Json out{{"num", poly_to_json(p.num, [](const PuiseuxScalar& a) { return to_json(a); })},
           {"den", poly_to_json(p.den, [](const PuiseuxScalar& a) { return to_json(a); })},
           {"marked", marked_to_json(p.marked)},
           {"annuli", annuli}};
  if (p.auxiliary) out["auxiliary"] = point_to_json(*p.auxiliary);
  return out;
}

StarPiece piece_from_json(const std::string& v, const Json& j) {
  StarPiece p{v, kpoly_from_json(field(j, "num")), kpoly_from_json(field(j, "den")),
              marked_from_json(field(j, "marked")), {}, std::nullopt};
  for (const auto& [e, r] : field(j, "annuli").items()) {
    if (!r.is_array() || r.size() != 2) bad("annulus radii of " + e + " must be [inner, outer]");
    p.annuli[e] = Radii{rational_from_json(r[0]), rational_from_json(r[1])};
  }
  if (j.contains("auxiliary")) p.auxiliary = point_from_json(j["auxiliary"]);
  return p;
}

/// "c", "c*t^e", "t^e", "t" terms joined by + and -, with e an integer or "(p/q)".
PuiseuxScalar parse_scalar_text(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s += ch;
  }
  if (s.empty()) bad("empty scalar");
  PuiseuxScalar::Terms terms;
  size_t i = 0;
  while (i < s.size()) {
    Rational sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (i != 0) {
      bad("malformed scalar '" + text + "'");
    }
    size_t j = i;
    int depth = 0;
    while (j < s.size() && (depth > 0 || (s[j] != '+' && s[j] != '-') || (j > i && s[j - 1] == '^'))) {
      depth += s[j] == '(' ? 1 : s[j] == ')' ? -1 : 0;
      ++j;
    }
    const std::string term = s.substr(i, j - i);
    if (term.empty()) bad("malformed scalar '" + text + "'");
    Rational coeff = 1, exponent = 0;
    const size_t t = term.find('t');
    if (t == std::string::npos) {
      coeff = parse_rational(term);
    } else {
      if (t > 0) {
        if (t < 2 || term[t - 1] != '*') bad("malformed term '" + term + "'");
        coeff = parse_rational(term.substr(0, t - 1));
      }
      std::string e = term.substr(t + 1);
      if (e.empty()) {
        exponent = 1;
      } else {
        if (e[0] != '^') bad("malformed term '" + term + "'");
        e = e.substr(1);
        if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
        exponent = parse_rational(e);
      }
    }
    terms[exponent] += sign * coeff;
    i = j;
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  return PuiseuxScalar(std::move(terms), std::nullopt);
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad("rationals are written as \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

Json ext_to_json(const ExtRational& q) { return q ? to_json(*q) : Json("inf"); }

ExtRational ext_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return std::nullopt;
  return rational_from_json(j);
}

Json to_json(const PuiseuxScalar& a) {
  Json terms = Json::array();
  for (const auto& [e, c] : a.terms()) terms.push_back(Json::array({to_json(e), to_json(c)}));
  return Json{{"terms", terms}, {"prec", ext_to_json(a.prec())}};
}

PuiseuxScalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return PuiseuxScalar(rational_from_json(j));
  if (j.is_string()) return parse_scalar_text(j.get<std::string>());
  PuiseuxScalar::Terms t;
  for (const auto& term : array(field(j, "terms"), "terms")) {
    if (!term.is_array() || term.size() != 2) bad("a term is [exponent, coefficient]");
    t[rational_from_json(term[0])] += rational_from_json(term[1]);
  }
  return PuiseuxScalar(std::move(t), j.contains("prec") ? ext_from_json(j["prec"]) : std::nullopt);
}

Json to_json(const AnnulusSeries& s) {
  Json coeffs = Json::array();
  for (const auto& [i, a] : s.coeffs()) coeffs.push_back(Json::array({i, to_json(a)}));
  const Skeleton& sk = s.skeleton();
  return Json{{"L", to_json(sk.length)},
              {"closed", Json::array({sk.tail_closed, sk.head_closed})},
              {"coeffs", coeffs},
              {"window", Json::array({s.lo(), s.hi()})},
              {"prec", ext_to_json(s.prec())}};
}

AnnulusSeries series_from_json(const Json& j) {
  bool tail = true, head = true;
  if (j.contains("closed")) {
    const Json& c = j["closed"];
    if (!c.is_array() || c.size() != 2 || !c[0].is_boolean() || !c[1].is_boolean()) bad("closed must be [bool, bool]");
    tail = c[0].get<bool>();
    head = c[1].get<bool>();
  }
  Skeleton sk(rational_from_json(field(j, "L")), tail, head);
  AnnulusSeries::Coeffs coeffs;
  for (const auto& c : array(field(j, "coeffs"), "coeffs")) {
    if (!c.is_array() || c.size() != 2) bad("a coefficient is [index, scalar]");
    coeffs[integer(c[0], "index")] += scalar_from_json(c[1]);
  }
  const ExtRational prec = j.contains("prec") ? ext_from_json(j["prec"]) : std::nullopt;
  if (!j.contains("window")) return AnnulusSeries(sk, std::move(coeffs), prec);
  const Json& w = j["window"];
  if (!w.is_array() || w.size() != 2) bad("window must be [lo, hi]");
  const int lo = integer(w[0], "window"), hi = integer(w[1], "window");
  if (lo > hi) bad("empty window");
  for (const auto& [i, a] : coeffs) {
    if (i < lo || i > hi) bad("coefficient index " + std::to_string(i) + " outside the window");
  }
  return AnnulusSeries(sk, std::move(coeffs), lo, hi, prec);
}

Json to_json(const TropicalReductionDatum& g) {
  Json out = complex_to_json(g.complex);
  Json reds = Json::object(), re = Json::object();
  for (const auto& [v, r] : g.reductions) reds[v] = reduction_to_json(r);
  for (const auto& [e, a] : g.re) re[e] = to_json(a);
  out["reductions"] = reds;
  out["re"] = re;
  return out;
}

TropicalReductionDatum datum_from_json(const Json& j) {
  TropicalReductionDatum g{complex_from_json(j), {}, {}};
  for (const auto& [v, r] : field(j, "reductions").items()) g.reductions.emplace(v, reduction_from_json(r));
  for (const auto& [e, a] : field(j, "re").items()) g.re[e] = scalar_from_json(a);
  check_structure(g);
  return g;
}

Json to_json(const GluedModel& m) {
  Json pieces = Json::object(), gluings = Json::object(), legs = Json::object();
  for (const auto& [v, p] : m.pieces) pieces[v] = piece_to_json(p);
  for (const auto& [e, g] : m.gluings) {
    gluings[e] = {{"tail", side_to_json(g.tail)}, {"head", side_to_json(g.head)}, {"constant", to_json(g.constant)}};
  }
  for (const auto& [e, l] : m.legs) legs[e] = side_to_json(l.side);
  return Json{{"complex", complex_to_json(m.complex)}, {"pieces", pieces}, {"gluings", gluings}, {"legs", legs}};
}

GluedModel model_from_json(const Json& j) {
  GluedModel m{complex_from_json(field(j, "complex")), {}, {}, {}};
  for (const auto& [v, p] : field(j, "pieces").items()) m.pieces[v] = piece_from_json(v, p);
  if (j.contains("gluings")) {
    for (const auto& [e, g] : j["gluings"].items()) {
      m.gluings[e] = EdgeGluing{e, side_from_json(field(g, "tail")), side_from_json(field(g, "head")),
                                scalar_from_json(field(g, "constant"))};
    }
  }
  if (j.contains("legs")) {
    for (const auto& [e, s] : j["legs"].items()) m.legs[e] = LegGluing{e, side_from_json(s)};
  }
  check_model(m);
  return m;
}

Json to_json(const ValidationReport& r) {
  Json recs = Json::array();
  for (const auto& c : r.records) {
    Json w = Json::array();
    for (const auto& [k, v] : c.witness) w.push_back(Json::array({k, v}));
    recs.push_back({{"check", c.check}, {"location", c.location}, {"status", std::string(to_string(c.status))}, {"witness", w}});
  }
  return Json{{"passed", r.passed()},
              {"pass", r.count(CheckStatus::Pass)},
              {"fail", r.count(CheckStatus::Fail)},
              {"indeterminate", r.count(CheckStatus::Indeterminate)},
              {"records", recs}};
}

Json to_json(const GrcReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json vs = Json::array();
    for (const auto& v : c.vertices) vs.push_back(v);
    comps.push_back({{"vertices", vs},
                     {"legs", to_json(c.sides.legs)},
                     {"crossing", to_json(c.sides.crossing)},
                     {"equality", std::string(to_string(c.equality))},
                     {"legs_negative", c.legs_negative},
                     {"top_component", to_json(c.top_component)},
                     {"vanishing", std::string(to_string(c.vanishing))}});
  }
  return Json{{"threshold", to_json(r.threshold)}, {"passed", r.passed()}, {"components", comps}};
}

Json to_json(const GoodCoordinate& g) {
  Json gaps = Json::array();
  for (const auto& e : g.gaps) gaps.push_back(ext_to_json(e));
  return Json{{"n", g.n},
              {"c_n", to_json(g.c_n)},
              {"c_0", to_json(g.c_0)},
              {"change", change_to_json(g.change)},
              {"iterations", g.iterations},
              {"gaps", gaps}};
}

Json to_json(const GradedCoordinate& c) {
  Json jet = Json::array();
  for (const auto& b : c.jet) jet.push_back(to_json(b));
  return Json{{"grade", to_json(c.grade)}, {"lead", to_json(c.lead)}, {"jet", jet}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(path + ": " + e.what());
  }
}

}  // namespace tropform
