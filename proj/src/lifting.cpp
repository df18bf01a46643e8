#include "tropform/lifting.hpp"

#include <set>
#include <stdexcept>

#include "tropform/error.hpp"

namespace tropform {

namespace {

ExtRational gauss_val(const KPoly& num, const KPoly& den) {
  if (num.is_zero()) return std::nullopt;
  ExtRational vn, vd;
  for (const auto& c : num.coeffs()) vn = ext_min(vn, c.val_lower_bound());
  for (const auto& c : den.coeffs()) vd = ext_min(vd, c.val_lower_bound());
  return *vn - *vd;
}

P1Point pick_auxiliary(const StarPiece& p) {
  std::set<P1Point> used;
  for (const auto& [e, q] : p.marked) used.insert(q);
  if (!used.count(std::nullopt)) return std::nullopt;
  for (long k = 0;; ++k) {
    if (!used.count(Rational(k))) return Rational(k);
  }
}

SideCoordinate side_of(const GoodCoordinate& g) { return SideCoordinate{g.n, g.change, g.c_n, g.c_0}; }

}  // namespace

Radii edge_radii(const Rational& length) {
  return Radii{canonical(length * 3 / 8), canonical(length * 5 / 8)};
}

StarPiece local_lift(const CurveComplex& cx, const std::string& v, const VertexReduction& red) {
  const Vertex& vert = cx.vertex(v);
  const ExplicitP1Form* f = red.explicit_form();
  if (vert.genus != 0 || !f) throw Error(ErrorKind::UnsupportedGenus, "vertex " + v + " has no explicit genus-0 form");
  StarPiece p;
  p.vertex = v;
  std::vector<PuiseuxScalar> num, den;
  for (const auto& c : f->num.coeffs()) num.push_back(PuiseuxScalar::monomial(c, -red.level));
  for (const auto& c : f->den.coeffs()) den.push_back(PuiseuxScalar(c));
  p.num = KPoly(std::move(num));
  p.den = KPoly(std::move(den));
  p.marked = f->marked;
  for (const auto& e : cx.star(v)) {
    const Edge& edge = cx.edge(e);
    p.annuli[e] = edge.is_leg() ? kLegRadii : edge_radii(*edge.length);
  }
  return p;
}

ResidueCorrection residue_correct(const StarPiece& p, const std::map<std::string, PuiseuxScalar>& targets,
                                  bool boundary) {
  const Rational level = gauss_level(p);
  ResidueCorrection out{p, {}, PuiseuxScalar(), std::nullopt, -level};
  std::vector<std::pair<P1Point, PuiseuxScalar>> terms;
  ExtRational max_norm;  // smallest valuation among the a'_i
  PuiseuxScalar sum;
  for (const auto& [e, q] : p.marked) {
    auto it = targets.find(e);
    if (it == targets.end()) throw Error(ErrorKind::InvalidInput, "no target residue for " + e);
    if (!it->second.is_exact()) throw Error(ErrorKind::InvalidInput, "target residue for " + e + " is not exact");
    PuiseuxScalar a = it->second - point_residue(p, e);
    out.correction[e] = a;
    if (a.is_exact_zero()) continue;
    if (a.val().value <= -level) {
      throw Error(ErrorKind::ResidueMismatch, "target " + it->second.to_string() + " at " + e +
                                                   " changes the reduced residue (correction " + a.to_string() + ")");
    }
    sum += a;
    max_norm = ext_min(max_norm, a.val().value);
    terms.emplace_back(q, a);
  }
  if (!sum.is_exact_zero()) {
    if (!boundary) throw Error(ErrorKind::ResidueMismatch, "targets at " + p.vertex + " do not sum to zero");
    if (!out.piece.auxiliary) out.piece.auxiliary = pick_auxiliary(p);
    out.auxiliary = -sum;
    terms.emplace_back(*out.piece.auxiliary, out.auxiliary);
  }

  // eta' = sum a'_i dz/(z - q_i); the term at infinity is implied by the residue theorem.
  KPoly en, ed = KPoly::from(1);
  KPoly& num = out.piece.num;
  KPoly& den = out.piece.den;
  for (const auto& [q, a] : terms) {
    if (!q) continue;
    const KPoly lin = KPoly::linear(*q);
    en = en * lin + ed.scaled(a);
    ed = ed * lin;
    PuiseuxScalar rem;
    KPoly quot = den.divide_linear(*q, rem);
    if (rem.is_exact_zero()) {
      num = num + quot.scaled(a);
    } else {
      num = num * lin + den.scaled(a);
      den = den * lin;
    }
  }
  out.correction_val = gauss_val(en, ed);
  if (out.correction_val != max_norm) {
    throw Error(ErrorKind::NormViolation, "Gauss norm of the correction is " + to_string(out.correction_val) +
                                              ", expected " + to_string(max_norm));
  }
  if (max_norm && *max_norm <= out.form_val) {
    throw Error(ErrorKind::NormViolation, "correction is not smaller than the form");
  }
  for (const auto& [e, target] : targets) {
    if (!(point_residue(out.piece, e) == target)) throw std::logic_error("residue correction missed its target at " + e);
  }
  return out;
}

GluedModel glue(std::map<std::string, StarPiece> pieces, const TropicalReductionDatum& g, const Rational& rel_prec) {
  GluedModel m{g.complex, std::move(pieces), {}, {}};
  const auto& cx = m.complex;
  for (const auto& [id, e] : cx.edges()) {
    const StarPiece& px = m.pieces.at(e.tail);
    if (e.is_leg()) {
      m.legs[id] = LegGluing{id, side_of(good_coordinate(expand_on_annulus(px, id), rel_prec))};
      continue;
    }
    if (*e.opposite < id) continue;
    const StarPiece& py = m.pieces.at(e.head);
    const GoodCoordinate gx = good_coordinate(expand_on_annulus(px, id), rel_prec);
    const GoodCoordinate gy = good_coordinate(expand_on_annulus(py, *e.opposite), rel_prec);
    if (gy.n != -gx.n) {
      throw Error(ErrorKind::IncompatibleBinomials, "exponents " + std::to_string(gx.n) + " and " +
                                                         std::to_string(gy.n) + " across " + id);
    }
    if (!(gx.c_0 + gy.c_0).is_exact_zero()) {
      throw Error(ErrorKind::IncompatibleBinomials, "residues across " + id + " are not opposite");
    }
    const Radii& ax = px.annuli.at(id);
    const Radii& ay = py.annuli.at(*e.opposite);
    const Rational len = ax.outer - ax.inner;
    PuiseuxScalar c;
    if (gx.n == 0) {
      c = PuiseuxScalar::monomial(1, len);
    } else {
      const PuiseuxScalar ratio = -divide(gy.c_n, gx.c_n, rel_prec);
      c = gx.n > 0 ? nth_root(ratio, gx.n, rel_prec) : nth_root(inv(ratio, rel_prec), -gx.n, rel_prec);
    }
    if (!c.val().finite() || c.val().value != len) {
      throw Error(ErrorKind::IncompatibleBinomials, "gluing constant across " + id + " has the wrong valuation");
    }
    EdgeGluing glued{id, side_of(gx), side_of(gy), c.shifted(ax.inner + ay.inner)};
    if (!gluing_consistent(m, glued)) throw std::logic_error("gluing across " + id + " does not match the binomials");
    m.gluings[id] = std::move(glued);
  }
  check_model(m);
  return m;
}

GluedModel lift(const TropicalReductionDatum& g, const Rational& rel_prec) {
  const ValidationReport rep = validate(g);
  if (!rep.passed()) {
    const CheckRecord* f = rep.failures().front();
    throw Error(ErrorKind::InvalidInput, "datum fails validation (" + f->check + " at " + f->location + ")");
  }
  std::map<std::string, StarPiece> pieces;
  for (const auto& x : g.complex.type2_vertices()) {
    StarPiece p = local_lift(g.complex, x, g.reductions.at(x));
    std::map<std::string, PuiseuxScalar> targets;
    for (const auto& e : g.complex.star(x)) targets[e] = g.re.at(e);
    pieces[x] = residue_correct(p, targets, g.complex.vertex(x).boundary).piece;
  }
  return glue(std::move(pieces), g, rel_prec);
}

std::vector<std::string> datum_differences(const TropicalReductionDatum& a, const TropicalReductionDatum& b) {
  std::vector<std::string> out;
  const auto& va = a.complex.vertices();
  const auto& vb = b.complex.vertices();
  if (va.size() != vb.size()) out.push_back("vertex sets differ");
  for (const auto& [id, v] : va) {
    auto it = vb.find(id);
    if (it == vb.end()) {
      out.push_back("vertex " + id + " missing");
      continue;
    }
    const Vertex& w = it->second;
    if (v.type != w.type || v.genus != w.genus || v.boundary != w.boundary) out.push_back("vertex " + id + " differs");
  }
  const auto& ea = a.complex.edges();
  const auto& eb = b.complex.edges();
  if (ea.size() != eb.size()) out.push_back("edge sets differ");
  for (const auto& [id, e] : ea) {
    auto it = eb.find(id);
    if (it == eb.end()) {
      out.push_back("edge " + id + " missing");
      continue;
    }
    const Edge& f = it->second;
    if (e.tail != f.tail || e.head != f.head || e.length != f.length || e.opposite != f.opposite) {
      out.push_back("edge " + id + " differs");
    }
    auto ra = a.re.find(id);
    auto rb = b.re.find(id);
    if (ra == a.re.end() || rb == b.re.end()) {
      out.push_back("residue function undefined on " + id);
    } else if (!ra->second.agrees_with(rb->second) || (ra->second.is_exact() && rb->second.is_exact() && !(ra->second == rb->second))) {
      out.push_back("Re(" + id + "): " + ra->second.to_string() + " vs " + rb->second.to_string());
    }
  }
  for (const auto& [x, ra] : a.reductions) {
    auto it = b.reductions.find(x);
    if (it == b.reductions.end()) {
      out.push_back("reduction at " + x + " missing");
      continue;
    }
    const VertexReduction& rb = it->second;
    if (ra.level != rb.level) out.push_back("level at " + x + ": " + to_string(ra.level) + " vs " + to_string(rb.level));
    const auto* fa = ra.explicit_form();
    const auto* fb = rb.explicit_form();
    if (fa && fb) {
      if (!fa->same_as(*fb)) out.push_back("reduced form at " + x + " differs");
      continue;
    }
    for (const auto& e : a.complex.star(x)) {
      try {
        if (ra.log_order(e) != rb.log_order(e)) out.push_back("log-order at " + e + " differs");
        if (ra.residue(e) != rb.residue(e)) out.push_back("reduced residue at " + e + " differs");
      } catch (const Error& err) {
        out.push_back(std::string("reduction at ") + x + ": " + err.what());
      }
    }
  }
  if (a.reductions.size() != b.reductions.size()) out.push_back("reduction sets differ");
  return out;
}

}  // namespace tropform
