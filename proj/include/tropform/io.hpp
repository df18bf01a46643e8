#pragma once

#include <json.hpp>
#include <string>

#include "tropform/annulus.hpp"
#include "tropform/complex.hpp"
#include "tropform/model.hpp"
#include "tropform/torsor.hpp"

namespace tropform {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings (plain integers are accepted on input).
// Every from_json throws InvalidInput on malformed input.

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// "inf" or a rational.
Json ext_to_json(const ExtRational& q);
ExtRational ext_from_json(const Json& j);

/// {"terms": [[exponent, coeff], ...], "prec": exponent | "inf"}. On input an exact scalar may
/// also be written as text, e.g. "-1 + 2*t^(1/2) - t^-1".
Json to_json(const PuiseuxScalar& a);
PuiseuxScalar scalar_from_json(const Json& j);

/// {"L", "closed": [tail, head], "coeffs": [[i, scalar], ...], "window": [lo, hi], "prec"}.
/// A missing prec means the series is exact.
Json to_json(const AnnulusSeries& s);
AnnulusSeries series_from_json(const Json& j);

Json to_json(const TropicalReductionDatum& g);
TropicalReductionDatum datum_from_json(const Json& j);

Json to_json(const GluedModel& m);
GluedModel model_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const GrcReport& r);
Json to_json(const GoodCoordinate& g);
Json to_json(const GradedCoordinate& c);

Json read_json_file(const std::string& path);

}  // namespace tropform
