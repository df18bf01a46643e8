#include <doctest.h>

#include <random>

#include "datums.hpp"
#include "tropform/error.hpp"
#include "tropform/io.hpp"
#include "tropform/lifting.hpp"

using namespace tropform;
using namespace tropform::testing;

TEST_CASE("scalars round trip bit-exactly") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    PuiseuxScalar a = random_scalar(rng, -3, 6, 1 + i % 4, 1 + i % 5);
    if (i % 3 == 0) a = a.truncated(Rational(i % 7 - 2));
    const Json j = to_json(a);
    const PuiseuxScalar b = scalar_from_json(j);
    CHECK(b.terms() == a.terms());
    CHECK(b.prec() == a.prec());
    CHECK(to_json(b).dump() == j.dump());
  }
  CHECK(scalar_from_json(Json("3/6")) == PuiseuxScalar(Rational(1, 2)));
  CHECK(scalar_from_json(Json("-1 + 2*t^(1/2) - t^-1 + t")) ==
        ps({{"0", "-1"}, {"1/2", "2"}, {"-1", "-1"}, {"1", "1"}}));
  CHECK(scalar_from_json(Json("t - t")).is_exact_zero());
  CHECK_THROWS_AS(scalar_from_json(Json("2t")), Error);
  CHECK(to_json(PuiseuxScalar()).dump() == R"({"terms":[],"prec":"inf"})");
  CHECK(to_json(PuiseuxScalar::unknown(2)).dump() == R"({"terms":[],"prec":"2"})");
  CHECK_THROWS_AS(scalar_from_json(Json::parse(R"({"terms":[["x","1"]]})")), Error);
  CHECK_THROWS_AS(scalar_from_json(Json(1.5)), Error);
}

TEST_CASE("annulus series round trip") {
  AnnulusSeries s(Skeleton(Rational(3, 2), true, false), {{-2, T("3")}, {1, ps({{"0", "2"}, {"1/2", "-1"}})}}, -4, 4,
                  Rational(5));
  const Json j = to_json(s);
  CHECK(to_json(series_from_json(j)).dump() == j.dump());
  Json out_of_window = j;
  out_of_window["window"] = Json::array({0, 4});
  CHECK_THROWS_AS(series_from_json(out_of_window), Error);
}

TEST_CASE("data round trip") {
  for (const auto& g : {p1_three_legs(), two_vertex_slope1()}) {
    const Json j = to_json(g);
    const TropicalReductionDatum back = datum_from_json(j);
    CHECK(datum_differences(back, g).empty());
    CHECK(to_json(back).dump() == j.dump());
  }
  Json broken = to_json(p1_three_legs());
  broken["re"].erase("a");
  CHECK_THROWS_AS(datum_from_json(broken), Error);
}

TEST_CASE("models round trip") {
  const GluedModel m = lift(two_vertex_slope1());
  const Json j = to_json(m);
  const GluedModel back = model_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(datum_differences(tropicalize(back), two_vertex_slope1()).empty());
  for (const auto& [id, g] : back.gluings) CHECK(gluing_consistent(back, g));
}
