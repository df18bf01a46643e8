#include <doctest.h>

#include "oracles.hpp"

using namespace tropform;
using namespace tropform::testing;

TEST_CASE("the oracle solves a known instance") {
  // -s^{-1} ds/s = d(1/s) and t = s/(1 - s) has 1/t = 1/s - 1, so t is good with c = -1
  FormIdentityOracle o(-1, {{-1, Rational(-1)}}, Rational(-1), Rational(0), 5);
  auto u = o.solve(Rational(1), Rational(1));
  REQUIRE(u.has_value());
  for (int k = 0; k <= 5; ++k) CHECK((*u)[k] == 1);
  // a wrong leading coefficient is caught at order zero
  CHECK_FALSE(FormIdentityOracle(-1, {{-1, Rational(-1)}}, Rational(-2), Rational(0), 5).solve(1, 1).has_value());
}

TEST_CASE("good coordinate agrees with the oracle on one-sided forms") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = trial % 7 - 3;
    std::map<int, Rational> a;
    const AnnulusForm w = one_sided_form(rng, n, a);
    const GoodCoordinate g = good_coordinate(w);
    REQUIRE(g.n == n);
    const Rational cn = g.c_n.is_exact_zero() ? Rational(0) : g.c_n.coeff(0);
    const Rational c0 = g.c_0.is_exact_zero() ? Rational(0) : g.c_0.coeff(0);
    auto unit = [&](int k) {
      auto it = g.change.unit.coeffs().find(k);
      return it == g.change.unit.coeffs().end() ? Rational(0) : it->second.coeff(0);
    };
    FormIdentityOracle o(n, a, cn, c0, 5);
    auto u = o.solve(unit(0), n < 0 ? unit(-n) : Rational(0));
    REQUIRE(u.has_value());
    for (int k = 0; k <= 5; ++k) CHECK((*u)[k] == unit(k));
  }
}
