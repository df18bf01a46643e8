#include <doctest.h>

#include <random>

#include "datums.hpp"
#include "tropform/error.hpp"

using namespace tropform;
using namespace tropform::testing;

namespace {

const CheckRecord* find(const ValidationReport& r, const std::string& check, const std::string& loc) {
  for (const auto& rec : r.records) {
    if (rec.check == check && rec.location == loc) return &rec;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("laurent expansions of dz/(z(z-1))") {
  QPoly num = qpoly({1}), den = qpoly({0, -1, 1});
  // at 0: -1/(1-w) = -(1 + w + w^2 + ...)
  auto a0 = laurent_at(num, den, Rational(0), 3);
  for (int i = 0; i <= 3; ++i) CHECK(a0.at(i) == -1);
  CHECK(a0.size() == 4);
  // at 1: 1/(1+w) = 1 - w + w^2 - ...
  auto a1 = laurent_at(num, den, Rational(1), 3);
  for (int i = 0; i <= 3; ++i) CHECK(a1.at(i) == (i % 2 ? -1 : 1));
  // at infinity: -w/(1-w) = -(w + w^2 + ...)
  auto ai = laurent_at(num, den, std::nullopt, 3);
  CHECK(ai.count(0) == 0);
  for (int i = 1; i <= 3; ++i) CHECK(ai.at(i) == -1);
  CHECK(log_order_at(num, den, Rational(0)) == 0);
  CHECK(log_order_at(num, den, std::nullopt) == 1);
  // dz at infinity: -w^{-2} dw = -w^{-1} dw/w
  CHECK(laurent_at(qpoly({1}), qpoly({1}), std::nullopt, 0) == std::map<int, Rational>{{-1, -1}});
}

TEST_CASE("laurent expansion agrees with partial fractions") {
  // f = (3z^2 + 1) / (z^2 (z - 2)^2): compare a_{-1}, a_0 at each pole with the
  // closed-form principal parts, and the tail with direct evaluation of the series.
  QPoly num = qpoly({1, 0, 3});
  QPoly den = QPoly::linear(0) * QPoly::linear(0) * QPoly::linear(2) * QPoly::linear(2);
  auto a = laurent_at(num, den, Rational(0), 2);
  // near 0: f = (1 + 3w^2)/(w^2 (w-2)^2), 1/(w-2)^2 = 1/4 (1 + w + 3w^2/4 + ...)
  CHECK(a.at(-1) == Q("1/4"));
  CHECK(a.at(0) == Q("1/4"));
  CHECK(a.at(1) == Q("3/16") + Q("3/4"));
  // residues sum to zero including infinity (regular there: degree gap 2)
  Rational total = residue_at(num, den, Rational(0)) + residue_at(num, den, Rational(2)) +
                   residue_at(num, den, std::nullopt);
  CHECK(total == 0);
}

TEST_CASE("taylor shift and linear division") {
  QPoly p = qpoly({1, 2, 3});
  CHECK(p.taylor_shift(2) == qpoly({17, 14, 3}));
  Rational rem;
  QPoly quot = p.divide_linear(Rational(-1), rem);
  CHECK(rem == 2);
  CHECK(quot * QPoly::linear(-1) + QPoly::from(rem) == p);
}

TEST_CASE("residue theorem check") {
  ExplicitP1Form f{qpoly({1}), qpoly({0, -1, 1}), {{"a", Rational(0)}, {"b", Rational(1)}, {"c", std::nullopt}}};
  CHECK(residue_theorem_check(f));
  ExplicitP1Form g{qpoly({2}), qpoly({0, 1}), {{"a", Rational(0)}, {"c", std::nullopt}}};
  CHECK(residue_theorem_check(g));
  CHECK(residue_at(g.num, g.den, std::nullopt) == -2);
  ExplicitP1Form h{qpoly({0, 1}), qpoly({1}), {{"c", std::nullopt}}};
  CHECK(residue_theorem_check(h));
  ExplicitP1Form split{qpoly({1}), qpoly({1, 0, 1}), {{"c", std::nullopt}}};
  CHECK_THROWS_AS(residue_theorem_check(split), Error);
}

TEST_CASE("three-leg P1 datum validates") {
  auto g = p1_three_legs();
  auto rep = validate(g);
  for (const auto* f : rep.failures()) FAIL_CHECK(f->check << " at " << f->location);
  CHECK(rep.passed());
  CHECK(rep.count(CheckStatus::Indeterminate) == 0);
  CHECK(find(rep, "degree", "x")->status == CheckStatus::Pass);
  auto lf = level_function(g);
  CHECK(lf.slope.at("c") == -1);
  CHECK(lf.slope.at("a") == 0);

  g.re["c"] = T("1");
  rep = validate(g);
  CHECK(find(rep, "condition4", "c")->status == CheckStatus::Fail);
  CHECK(find(rep, "condition3", "x")->status == CheckStatus::Fail);

  g = p1_three_legs();
  g.re["c"] = PuiseuxScalar::unknown(Rational(3));
  rep = validate(g);
  CHECK(find(rep, "condition4", "c")->status == CheckStatus::Indeterminate);
  CHECK(rep.passed());
}

TEST_CASE("two vertices, alternation and slopes") {
  // x --e(1)--> y, levels 0 and -1; x carries dz/z^2-type data abstractly.
  std::vector<Vertex> vs{{"x", VertexType::Type2, 0, false}, {"y", VertexType::Type2, 0, false}};
  std::vector<Edge> es{{"e", "x", "y", Rational(1), "f"}, {"f", "y", "x", Rational(1), "e"}};
  AbstractForm ax{{{"e", 1}}, {{"e", 0}}};
  AbstractForm ay{{{"f", -1}}, {{"f", 0}}};
  TropicalReductionDatum g{CurveComplex(vs, es), {{"x", {0, ax}}, {"y", {-1, ay}}}, {{"e", {}}, {"f", {}}}};
  auto lf = level_function(g);
  CHECK(lf.slope.at("e") == -1);
  CHECK(lf.slope.at("f") == 1);
  auto rep = validate(g);
  CHECK(find(rep, "condition1", "e")->status == CheckStatus::Pass);
  // degree at x: 1 = 2*0 - 2 + 1 fails by one; the data are deliberately not a curve
  CHECK(find(rep, "degree", "x")->status == CheckStatus::Fail);

  g.re["e"] = PuiseuxScalar(1);
  g.re["f"] = PuiseuxScalar(1);
  rep = validate(g);
  CHECK(find(rep, "alternating", "e")->status == CheckStatus::Fail);

  std::vector<Edge> bad{{"e", "x", "y", Rational(1), "f"}, {"f", "y", "x", Rational(2), "e"}};
  CHECK_THROWS_AS(CurveComplex(vs, bad), Error);
  std::vector<Edge> half{{"e", "x", "y", Rational(2), "f"}, {"f", "y", "x", Rational(2), "e"}};
  TropicalReductionDatum h{CurveComplex(vs, half), g.reductions, g.re};
  CHECK_THROWS_AS(level_function(h), Error);
  CHECK(find(validate(h), "slope", "e")->status == CheckStatus::Fail);
}

TEST_CASE("global residue identity on the three-leg datum") {
  auto g = p1_three_legs();
  auto sides = grc_sides(g, {"x"});
  CHECK(sides.legs.is_exact_zero());
  CHECK(sides.crossing.is_exact_zero());
  auto rep = global_residue_check(g, Rational(-1));
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.passed());
  CHECK_FALSE(rep.components[0].legs_negative);
  CHECK(global_residue_check(g, Rational(0)).components.empty());
}
