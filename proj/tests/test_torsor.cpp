#include <doctest.h>

#include <random>

#include "datums.hpp"
#include "tropform/error.hpp"
#include "tropform/lifting.hpp"
#include "tropform/torsor.hpp"

using namespace tropform;
using namespace tropform::testing;

namespace {

Rational small_nonzero(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 5), den(1, 4), sign(0, 1);
  Rational q = frac(num(rng), den(rng));
  return sign(rng) ? q : Rational(-q);
}

Rational small(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  return frac(num(rng), den(rng));
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

TEST_CASE("l = 1 with no residue matches the closed form lambda s / (1 - mu s)") {
  FormalForm w{-1, Rational(3), Rational(0)};
  GnElement g{frac(2, 3), Rational(-5)};
  FormalSeries t = act(g, w, 10);
  for (int i = 1; i <= 10; ++i) CHECK(t[i] == g.lambda * rational_pow(g.mu, i - 1));
}

TEST_CASE("act produces good coordinates and fixes the low jet") {
  std::mt19937_64 rng(11);
  for (int l = 1; l <= 3; ++l) {
    for (int trial = 0; trial < 10; ++trial) {
      FormalForm w{-l, small_nonzero(rng), small(rng)};
      GnElement g{small_nonzero(rng), small(rng)};
      FormalSeries t = act(g, w);
      CHECK(t[1] == g.lambda);
      for (int i = 2; i <= l; ++i) CHECK(t[i] == 0);
      CHECK(t[l + 1] == g.lambda * g.mu);
      CHECK(is_good_formal(w, t));
      t[l + 2] += 1;
      CHECK_FALSE(is_good_formal(w, t));
    }
  }
  CHECK(act({Rational(2), Rational(7)}, {2, Rational(1), Rational(1)}, 6) ==
        FormalSeries{0, 2, 0, 0, 0, 0, 0});
  CHECK(kind_of([] { act({Rational(1), Rational(0)}, {-2, Rational(1), Rational(0)}, 3); }) ==
        ErrorKind::TruncationTooSmall);
}

TEST_CASE("group law and inverses") {
  std::mt19937_64 rng(12);
  for (int l = 1; l <= 3; ++l) {
    for (int trial = 0; trial < 10; ++trial) {
      FormalForm w{-l, small_nonzero(rng), small(rng)};
      GnElement a{small_nonzero(rng), small(rng)}, b{small_nonzero(rng), small(rng)};
      CHECK(verify_group_law(w, a, b));
      CHECK(gn_compose(a, gn_inverse(a, l), l) == GnElement{Rational(1), Rational(0)});
    }
  }
}

TEST_CASE("series reversion") {
  FormalSeries t{0, 2, 1, -3, Rational(1, 2)};
  FormalSeries g = reversion(t, 4);
  FormalSeries id = compose(t, g, 4);
  CHECK(id == FormalSeries{0, 1, 0, 0, 0});
  CHECK(compose(g, t, 4) == id);
}

TEST_CASE("transitivity against the integrated construction") {
  std::mt19937_64 rng(13);
  for (int l = 1; l <= 3; ++l) {
    for (int trial = 0; trial < 8; ++trial) {
      FormalForm w{-l, small_nonzero(rng), small(rng)};
      GnElement a{small_nonzero(rng), small(rng)};
      FormalSeries t1 = act(a, w);
      FormalSeries t2 = good_formal_by_integration(w, small_nonzero(rng), small(rng));
      CHECK(is_good_formal(w, t2));
      auto g = transitivity(w, t1, t2);
      REQUIRE(g.has_value());
      CHECK(compose(act(*g, transport(w, t1)), t1, kFormalOrder) == t2);
      GnElement b{small_nonzero(rng), small(rng)};
      auto h = transitivity(w, t1, act(b, w));
      REQUIRE(h.has_value());
      CHECK(*h == gn_compose(gn_inverse(a, l), b, l));
      // a coordinate that is not good is reached by no element
      FormalSeries bad = t2;
      bad[kFormalOrder] += 1;
      CHECK_FALSE(transitivity(w, t1, bad).has_value());
    }
  }
}

TEST_CASE("graded reduction of coordinates") {
  std::map<int, PuiseuxScalar> s{{1, PuiseuxScalar(1)}};
  auto r = coordinate_reduction(s, 3);
  CHECK(r == GradedCoordinate{0, 1, {1, 0, 0}});
  CHECK(coordinate_reduction({{1, PuiseuxScalar(1) + T("1")}}, 3) == r);
  CHECK(coordinate_reduction({{1, T("1")}}, 3) == GradedCoordinate{1, 1, {1, 0, 0}});
  CHECK(coordinate_reduction({{1, PuiseuxScalar(2)}, {2, PuiseuxScalar(1)}, {0, T("1/2")}}, 2) ==
        GradedCoordinate{0, 2, {1, Rational(1, 2)}});
  CHECK(kind_of([] { coordinate_reduction({{1, PuiseuxScalar(1)}, {0, PuiseuxScalar(1)}}, 2); }) ==
        ErrorKind::NotDominant);
  CHECK(kind_of([] { coordinate_reduction({{1, PuiseuxScalar(1)}, {2, T("-1")}}, 2); }) == ErrorKind::NotDominant);
  // beyond the jet only the quotient matters
  CHECK_NOTHROW(coordinate_reduction({{1, PuiseuxScalar(1)}, {3, T("-1")}}, 2));
}

TEST_CASE("phi_e on a glued edge") {
  GluedModel m = lift(two_vertex_slope1());
  const GradedCoordinate tau = edge_coordinate(m, "e");
  const GradedCoordinate img = phi_e(m, "e", tau);
  CHECK(phi_e(m, "f", img) == tau);
  const int n = m.gluings.at("e").tail.n;
  const Rational dl = gauss_level(m.pieces.at("y")) - gauss_level(m.pieces.at("x"));
  CHECK(n * (tau.grade + img.grade) == dl);
  const GradedCoordinate moved = scale(tau, Rational(2), Rational(3));
  CHECK(phi_e(m, "e", moved) == scale(img, Rational(-2), Rational(1, 3)));
  CHECK(phi_e(m, "f", phi_e(m, "e", moved)) == moved);
  GradedCoordinate off = tau;
  off.jet.push_back(Rational(1));
  CHECK(kind_of([&] { phi_e(m, "e", off); }) == ErrorKind::InvalidInput);
}
