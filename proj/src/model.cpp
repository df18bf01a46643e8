#include "tropform/model.hpp"

#include <set>

#include "tropform/error.hpp"

namespace tropform {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

Rational min_val(const KPoly& p, const char* what) {
  std::optional<Rational> m;
  for (const auto& c : p.coeffs()) {
    if (c.is_exact_zero()) continue;
    const Valuation v = c.val();
    if (!v.finite()) throw Error(ErrorKind::PrecisionExhausted, std::string("coefficient of unknown valuation in ") + what);
    if (!m || v.value < *m) m = v.value;
  }
  if (!m) throw Error(ErrorKind::ZeroForm, std::string("zero ") + what);
  return *m;
}

/// Finite points of the piece that may carry poles.
std::vector<Rational> finite_points(const StarPiece& p) {
  std::vector<Rational> out;
  for (const auto& [e, q] : p.marked) {
    if (q) out.push_back(*q);
  }
  if (p.auxiliary && *p.auxiliary) out.push_back(**p.auxiliary);
  return out;
}

/// Lower bound on the valuations of the expansion coefficients at q that lie beyond any
/// finite window: they come from principal parts at the other finite poles, whose
/// expansions have rational coefficients of valuation 0.
ExtRational tail_valuation(const StarPiece& p, const P1Point& q, const Rational& rel) {
  KPoly d = p.den;
  for (const Rational& z : finite_points(p)) {
    while (d.degree() >= 1) {
      PuiseuxScalar rem;
      KPoly quot = d.divide_linear(z, rem);
      if (!rem.is_exact_zero()) break;
      d = std::move(quot);
    }
  }
  if (d.degree() > 0) throw Error(ErrorKind::PoleInAnnulus, "the form has poles away from the marked points");
  ExtRational vmin;
  for (const Rational& z : finite_points(p)) {
    if (q && *q == z) continue;
    for (const auto& [i, a] : laurent_at(p.num, p.den, z, 0, rel)) {
      if (i <= 0) vmin = ext_min(vmin, a.val_lower_bound());
    }
  }
  return vmin;
}

PuiseuxScalar point_residue_impl(const StarPiece& p, const P1Point& q) {
  auto a = laurent_at(p.num, p.den, q, 0);
  auto r = a.find(0);
  return r == a.end() ? PuiseuxScalar() : r->second;
}

/// a_0 of the expansion on the branch annulus. The expansion certifies that the annulus
/// is free of zeros and poles; a_0 itself is read off the exact Laurent coefficient,
/// which the annulus series may have truncated.
PuiseuxScalar annulus_residue(const StarPiece& p, const std::string& e, int window) {
  expand_on_annulus(p, e, window);
  return point_residue_impl(p, p.marked.at(e));
}

const StarPiece& piece_at(const GluedModel& m, const std::string& v) {
  auto it = m.pieces.find(v);
  if (it == m.pieces.end()) bad("no piece at vertex " + v);
  return it->second;
}

}  // namespace

void check_model(const GluedModel& m) {
  const auto& cx = m.complex;
  for (const auto& [v, p] : m.pieces) {
    if (cx.vertex(v).type != VertexType::Type2) bad("piece at type-1 vertex " + v);
    if (p.vertex != v) bad("piece stored under " + v + " claims vertex " + p.vertex);
  }
  for (const auto& x : cx.type2_vertices()) {
    const StarPiece& p = piece_at(m, x);
    if (cx.vertex(x).genus != 0) bad("vertex " + x + " has positive genus; pieces are P^1");
    if (p.num.is_zero() || p.den.is_zero()) bad("zero numerator or denominator at " + x);
    const auto& star = cx.star(x);
    std::set<std::string> want(star.begin(), star.end()), marked, annuli;
    std::set<P1Point> points;
    for (const auto& [e, q] : p.marked) {
      marked.insert(e);
      if (!points.insert(q).second) bad("marked points collide at " + x);
    }
    if (p.auxiliary && points.count(*p.auxiliary)) bad("auxiliary point of " + x + " is a marked point");
    if (p.auxiliary && !cx.vertex(x).boundary) bad("auxiliary point at non-boundary vertex " + x);
    for (const auto& [e, r] : p.annuli) {
      annuli.insert(e);
      if (r.inner < 0 || r.outer <= r.inner) bad("bad annulus radii for " + e);
    }
    if (marked != want || annuli != want) bad("marked points or annuli at " + x + " do not match Star(" + x + ")");
  }
  for (const auto& [id, e] : cx.edges()) {
    if (e.is_leg()) continue;
    const Radii& a = piece_at(m, e.tail).annuli.at(id);
    const Radii& b = piece_at(m, e.head).annuli.at(*e.opposite);
    const Rational& len = *e.length;
    if (a.inner + b.outer != len || a.outer + b.inner != len) bad("annulus radii of " + id + " do not add up to its length");
    if (2 * a.outer <= len) bad("side annulus of " + id + " has modulus at most half the edge length");
  }
  for (const auto& [id, g] : m.gluings) {
    const Edge& e = cx.edge(id);
    if (e.is_leg()) bad("gluing recorded on leg " + id);
    if (m.gluings.count(*e.opposite)) bad("edge " + id + " is glued twice");
    if (g.edge != id) bad("gluing stored under " + id + " names " + g.edge);
  }
  for (const auto& [id, g] : m.legs) {
    if (!cx.edge(id).is_leg()) bad("leg gluing recorded on bounded edge " + id);
  }
}

Rational gauss_level(const StarPiece& p) { return min_val(p.den, "denominator") - min_val(p.num, "numerator"); }

ExplicitP1Form scaled_reduction(const StarPiece& p) {
  auto reduce = [](const KPoly& f, const Rational& v) {
    std::vector<Rational> c;
    for (const auto& a : f.coeffs()) c.push_back(a.is_exact_zero() ? Rational(0) : reduce_integral(a.shifted(-v)));
    return QPoly(std::move(c));
  };
  ExplicitP1Form out;
  out.num = reduce(p.num, min_val(p.num, "numerator"));
  out.den = reduce(p.den, min_val(p.den, "denominator"));
  out.marked = p.marked;
  // the auxiliary pole of a boundary vertex reduces to a removable factor
  for (const Rational& q : finite_points(p)) {
    for (;;) {
      Rational rn, rd;
      QPoly n = out.num.divide_linear(q, rn), d = out.den.divide_linear(q, rd);
      if (rn != 0 || rd != 0 || out.num.degree() < 1 || out.den.degree() < 1) break;
      out.num = std::move(n);
      out.den = std::move(d);
    }
  }
  return out;
}

AnnulusForm expand_on_annulus(const StarPiece& p, const std::string& e, int window, const Rational& rel_prec) {
  auto qit = p.marked.find(e);
  auto rit = p.annuli.find(e);
  if (qit == p.marked.end() || rit == p.annuli.end()) bad("piece at " + p.vertex + " has no branch " + e);
  const P1Point& q = qit->second;
  const Radii& r = rit->second;
  if (q && p.num.degree() - p.den.degree() + 1 > window) {
    throw Error(ErrorKind::WindowTooSmall, "polynomial part of the form exceeds the window");
  }
  const auto a = laurent_at(p.num, p.den, q, window, rel_prec);
  if (a.empty()) throw Error(ErrorKind::ZeroForm, "zero form");
  if (a.begin()->first < -window) throw Error(ErrorKind::WindowTooSmall, "pole order exceeds the window");

  ExtRational prec;
  if (auto v = tail_valuation(p, q, rel_prec)) prec = *v + (window + 1) * r.inner;
  AnnulusSeries::Coeffs coeffs;
  for (const auto& [i, c] : a) coeffs.emplace(i, c.shifted(i * r.inner));
  AnnulusSeries s(Skeleton(r.outer - r.inner, true, true), std::move(coeffs), -window, window, prec);
  try {
    dominant_index(s);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NoDominantTerm) throw;
    throw Error(ErrorKind::PoleInAnnulus, "no dominant term on the annulus of " + e + " at " + p.vertex);
  }
  return AnnulusForm{std::move(s)};
}

PuiseuxScalar point_residue(const StarPiece& p, const std::string& e) {
  auto it = p.marked.find(e);
  if (it == p.marked.end()) bad("piece at " + p.vertex + " has no branch " + e);
  return point_residue_impl(p, it->second);
}

ResidueFunction residue_function_of(const GluedModel& m, int window) {
  ResidueFunction re;
  for (const auto& [id, e] : m.complex.edges()) {
    const StarPiece& p = piece_at(m, e.tail);
    re[id] = e.is_leg() ? point_residue(p, id) : annulus_residue(p, id, window);
  }
  return re;
}

TropicalReductionDatum tropicalize(const GluedModel& m, int window) {
  check_model(m);
  TropicalReductionDatum out{m.complex, {}, residue_function_of(m, window)};
  for (const auto& [v, p] : m.pieces) out.reductions.emplace(v, VertexReduction{gauss_level(p), scaled_reduction(p)});
  return out;
}

bool harmonicity_check(const GluedModel& m, const std::string& v, int window) {
  if (m.complex.vertex(v).boundary) bad("harmonicity is not asked at boundary vertex " + v);
  const StarPiece& p = piece_at(m, v);
  PuiseuxScalar total;
  for (const auto& e : m.complex.star(v)) {
    total += m.complex.edge(e).is_leg() ? point_residue(p, e) : annulus_residue(p, e, window);
  }
  return total.is_exact_zero();
}

PuiseuxScalar annulus_constant(const GluedModel& m, const EdgeGluing& g) {
  const Edge& e = m.complex.edge(g.edge);
  const Rational shift = piece_at(m, e.tail).annuli.at(e.id).inner + piece_at(m, e.head).annuli.at(*e.opposite).inner;
  return g.constant.shifted(-shift);
}

bool gluing_consistent(const GluedModel& m, const EdgeGluing& g) {
  const Edge& e = m.complex.edge(g.edge);
  const Radii& a = piece_at(m, e.tail).annuli.at(e.id);
  const Radii& b = piece_at(m, e.head).annuli.at(*e.opposite);
  if (g.head.n != -g.tail.n) return false;
  const Skeleton tail_sk(a.outer - a.inner, true, true);
  const Skeleton head_sk(b.outer - b.inner, true, true);
  CoordinateChange flip{true, annulus_constant(m, g), CoordinateChange::identity(tail_sk).unit};
  AnnulusForm pulled = pullback(binomial_form(head_sk, g.head.n, g.head.c_n, g.head.c_0), flip);
  return pulled.series.agrees_with(binomial_form(tail_sk, g.tail.n, g.tail.c_n, g.tail.c_0).series);
}

}  // namespace tropform
