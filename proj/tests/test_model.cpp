#include <doctest.h>

#include "datums.hpp"
#include "tropform/error.hpp"
#include "tropform/lifting.hpp"
#include "tropform/model.hpp"

using namespace tropform;
using namespace tropform::testing;

namespace {

KPoly kpoly(std::initializer_list<PuiseuxScalar> c) { return KPoly(std::vector<PuiseuxScalar>(c)); }
PuiseuxScalar K(long q) { return PuiseuxScalar(q); }

StarPiece three_leg_piece(const PuiseuxScalar& scale) {
  return StarPiece{"x",
                   kpoly({scale}),
                   kpoly({K(0), K(-1), K(1)}),
                   {{"a", Rational(0)}, {"b", Rational(1)}, {"c", std::nullopt}},
                   {{"a", kLegRadii}, {"b", kLegRadii}, {"c", kLegRadii}},
                   std::nullopt};
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("gauss level and scaled reduction") {
  CHECK(gauss_level(three_leg_piece(K(1))) == 0);
  // level = val of the normalizing scalar, so t f has level -1
  CHECK(gauss_level(three_leg_piece(T("1"))) == -1);
  StarPiece p = three_leg_piece(K(1));
  p.num = kpoly({T("1"), K(1)});
  p.den = kpoly({K(1)});
  CHECK(gauss_level(p) == 0);
  p.num = kpoly({ps({{"0", "1"}, {"1", "1"}})});
  p.den = kpoly({K(0), K(1)});
  auto r = scaled_reduction(p);
  CHECK(r.num == qpoly({1}));
  CHECK(r.den == qpoly({0, 1}));
  p.num = kpoly({PuiseuxScalar()});
  CHECK(kind_of([&] { gauss_level(p); }) == ErrorKind::ZeroForm);
}

TEST_CASE("expansion on a leg annulus") {
  StarPiece p = three_leg_piece(K(1));
  AnnulusForm w = expand_on_annulus(p, "a", 6);
  // -1/(1-w) with s = w t^{-1}
  for (int i = 0; i <= 6; ++i) CHECK(w.series.coeffs().at(i) == PuiseuxScalar::monomial(-1, i));
  // tail beyond the window comes from the pole at 1 with residue 1: val >= 0 + 7
  CHECK(w.series.prec() == Rational(7));
  CHECK(level_slope(w) == 0);
  CHECK(residue(w).agrees_with(K(-1)));
  AnnulusForm at_inf = expand_on_annulus(p, "c", 6);
  CHECK(level_slope(at_inf) == 1);
  CHECK(residue(at_inf).is_zero_to_precision());
}

TEST_CASE("tropicalizing the three-leg model") {
  auto g = p1_three_legs();
  GluedModel m{g.complex, {{"x", three_leg_piece(K(1))}}, {}, {}};
  auto trop = tropicalize(m);
  CHECK(datum_differences(trop, g).empty());
  CHECK(validate(trop).passed());
  CHECK(harmonicity_check(m, "x"));
  // scaling by t shifts the level and scales the residues
  m.pieces["x"] = three_leg_piece(T("1"));
  auto scaled = tropicalize(m);
  CHECK(scaled.reductions.at("x").level == -1);
  CHECK(scaled.re.at("a") == PuiseuxScalar::monomial(-1, 1));
  CHECK(scaled.reductions.at("x").explicit_form()->same_as(*g.reductions.at("x").explicit_form()));
}

TEST_CASE("residue correction on P1") {
  StarPiece p = three_leg_piece(K(1));
  std::map<std::string, PuiseuxScalar> targets{
      {"a", K(-1) + T("1")}, {"b", K(1) - T("1")}, {"c", PuiseuxScalar()}};
  auto rc = residue_correct(p, targets, false);
  for (const auto& [e, a] : targets) CHECK(point_residue(rc.piece, e) == a);
  CHECK(rc.correction.at("a") == T("1"));
  CHECK(rc.correction_val == Rational(1));
  CHECK(rc.form_val == 0);
  // the scaled reduction is untouched
  CHECK(scaled_reduction(rc.piece).same_as(scaled_reduction(p)));
  // nothing to correct leaves the form alone
  auto same = residue_correct(p, {{"a", K(-1)}, {"b", K(1)}, {"c", PuiseuxScalar()}}, false);
  CHECK(same.piece.num == p.num);
  CHECK(same.piece.den == p.den);
  CHECK(kind_of([&] { residue_correct(p, {{"a", K(-2)}, {"b", K(2)}, {"c", {}}}, false); }) ==
        ErrorKind::ResidueMismatch);
  // unbalanced targets are absorbed only at boundary vertices
  std::map<std::string, PuiseuxScalar> lopsided{{"a", K(-1) + T("1")}, {"b", K(1)}, {"c", {}}};
  CHECK(kind_of([&] { residue_correct(p, lopsided, false); }) == ErrorKind::ResidueMismatch);
  auto bd = residue_correct(p, lopsided, true);
  CHECK(bd.auxiliary == -T("1"));
  REQUIRE(bd.piece.auxiliary.has_value());
  CHECK(*bd.piece.auxiliary == P1Point(Rational(2)));
  for (const auto& [e, a] : lopsided) CHECK(point_residue(bd.piece, e) == a);
}

TEST_CASE("lift round trips") {
  for (const auto& g : {p1_three_legs(), two_vertex_slope1()}) {
    GluedModel m = lift(g);
    auto back = tropicalize(m);
    auto diff = datum_differences(back, g);
    for (const auto& d : diff) FAIL_CHECK(d);
    CHECK(validate(back).passed());
    for (const auto& [id, gl] : m.gluings) CHECK(gluing_consistent(m, gl));
  }
}

TEST_CASE("two-vertex gluing data") {
  GluedModel m = lift(two_vertex_slope1());
  REQUIRE(m.gluings.count("e"));
  const EdgeGluing& g = m.gluings.at("e");
  CHECK(g.tail.n == -1);
  CHECK(g.head.n == 1);
  CHECK(annulus_constant(m, g).val().value == Rational(1, 4));
  CHECK(g.constant.val().value == 1);
  EdgeGluing broken = g;
  broken.constant = broken.constant.scaled(2);
  CHECK_FALSE(gluing_consistent(m, broken));
}
