#include "doctest.h"
#include "support.hpp"
#include "tropform/error.hpp"

using namespace tropform;
using namespace tropform::testing;

TEST_CASE("val of truncated scalars") {
  CHECK(ps({{"1/2", "1"}, {"1", "3"}}).val() == Valuation{Valuation::State::Finite, Q("1/2")});
  CHECK(PuiseuxScalar::zero().val().state == Valuation::State::Infinite);
  CHECK(PuiseuxScalar::unknown(Q("5")).val().state == Valuation::State::Unknown);
}

TEST_CASE("ring operations and precision propagation") {
  CHECK(T("1/2") + T("1/2", "2") == T("1/2", "3"));
  auto a = ps({{"0", "1"}, {"1", "1"}});
  auto b = ps({{"0", "1"}, {"1", "-1"}});
  CHECK(a * b == ps({{"0", "1"}, {"2", "-1"}}));
  auto c = ps({{"1", "1"}}, Q("3"));
  auto sq = c * c;
  CHECK(sq.terms() == T("2").terms());
  CHECK(*sq.prec() == 4);
  CHECK(*(c + T("5")).prec() == 3);
}

TEST_CASE("inverse") {
  auto r = inv(ps({{"0", "1"}, {"1", "1"}}));
  CHECK(*r.prec() == 24);
  for (int k = 0; k < 24; ++k) CHECK(r.coeff(Rational(k)) == (k % 2 ? -1 : 1));
  CHECK(inv(T("-1", "2")) == T("1", "1/2"));
  CHECK_THROWS_AS(inv(PuiseuxScalar::unknown(Q("3"))), Error);
  CHECK_THROWS_AS(inv(PuiseuxScalar::zero()), Error);
  try {
    inv(PuiseuxScalar::unknown(Q("3")));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrecisionExhausted);
  }
}

TEST_CASE("nth_root") {
  auto r = nth_root(ps({{"0", "1"}, {"1", "4"}}), 2);
  // Catalan-type coefficients of sqrt(1+4t).
  CHECK(r.coeff(Q("0")) == 1);
  CHECK(r.coeff(Q("1")) == 2);
  CHECK(r.coeff(Q("2")) == -2);
  CHECK(r.coeff(Q("3")) == 4);
  CHECK(r.coeff(Q("4")) == -10);
  CHECK(r.coeff(Q("5")) == 28);
  CHECK((r * r).agrees_with(ps({{"0", "1"}, {"1", "4"}})));
  CHECK(nth_root(T("1"), 2) == T("1/2"));
  try {
    nth_root(ps({{"0", "2"}, {"1", "1"}}), 2);
    FAIL("expected NonSplitRoot");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonSplitRoot);
  }
  auto cube = nth_root(ps({{"3", "-8"}, {"4", "1"}}), 3);
  CHECK(cube.leading_exponent() == 1);
  CHECK(cube.leading_coeff() == -2);
  CHECK((cube * cube * cube).agrees_with(ps({{"3", "-8"}, {"4", "1"}})));
}

TEST_CASE("exp and log") {
  auto e = exp_small(T("1"));
  CHECK(e.coeff(Q("0")) == 1);
  CHECK(e.coeff(Q("2")) == Q("1/2"));
  CHECK(e.coeff(Q("3")) == Q("1/6"));
  auto l = log_unit(ps({{"0", "1"}, {"1", "1"}}));
  CHECK(l.coeff(Q("1")) == 1);
  CHECK(l.coeff(Q("2")) == Q("-1/2"));
  CHECK(l.coeff(Q("3")) == Q("1/3"));
  try {
    exp_small(ps({{"0", "1"}, {"1", "1"}}));
    FAIL("expected NotSmall");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotSmall);
  }
  auto u = ps({{"0", "1"}, {"1/2", "3"}, {"2", "-1"}});
  CHECK(exp_small(log_unit(u)).agrees_with(u));
}

TEST_CASE("graded reduction") {
  CHECK(graded_reduction(ps({{"-1", "5"}, {"0", "7"}, {"1", "1"}})) == GradedScalar::make(Q("-1"), Q("5")));
  CHECK(graded_reduction(PuiseuxScalar::zero()).is_zero);
  CHECK(graded_reduction(ps({{"0", "3"}, {"1/3", "1"}})) == GradedScalar::make(Q("0"), Q("3")));
}

TEST_CASE("randomized valuation and field properties") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_scalar(rng, -2, 4, 2, 3);
    auto b = random_scalar(rng, -2, 4, 3, 3);
    if (a.is_exact_zero() || b.is_exact_zero()) continue;
    auto sum = a + b;
    Rational va = a.val().value, vb = b.val().value;
    if (!sum.is_exact_zero()) CHECK(sum.val().value >= std::min<Rational>(va, vb));
    if (va != vb) CHECK(sum.val().value == std::min<Rational>(va, vb));
    CHECK((a * b).val().value == va + vb);
    CHECK(((a * b) * inv(b)).agrees_with(a));
    CHECK(graded_reduction(a * b) == graded_reduction(a) * graded_reduction(b));

    auto x = random_scalar(rng, 1, 2, 2, 2);
    auto y = random_scalar(rng, 1, 2, 3, 2);
    CHECK(exp_small(x + y).agrees_with(exp_small(x) * exp_small(y)));

    auto unit = a.shifted(-va).scaled(Rational(1) / a.leading_coeff());
    for (int n = 1; n <= 4; ++n) {
      auto r = nth_root(unit, n);
      CHECK(pow(r, n).agrees_with(unit));
    }
  }
}
