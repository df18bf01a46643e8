#pragma once

#include <map>
#include <string>
#include <vector>

#include "tropform/complex.hpp"
#include "tropform/model.hpp"

namespace tropform {

/// Radii of the chart annulus used for legs.
inline const Radii kLegRadii{Rational(1), Rational(2)};

/// Radii (L/2 - L/8, L/2 + L/8) for a bounded edge of length L.
Radii edge_radii(const Rational& length);

/// Includes the reduced form over k and rescales it to the requested level.
StarPiece local_lift(const CurveComplex& cx, const std::string& v, const VertexReduction& red);

struct ResidueCorrection {
  StarPiece piece;
  /// a'_e = target - current residue, per branch.
  std::map<std::string, PuiseuxScalar> correction;
  /// a'_{n+1} carried by the auxiliary point (boundary vertices).
  PuiseuxScalar auxiliary;
  /// Gauss valuation of the correction form and of the original form.
  ExtRational correction_val;
  Rational form_val;
};

/// Adds sum a'_i dz/(z - q_i) so that the residues at the marked points hit the targets.
ResidueCorrection residue_correct(const StarPiece& p, const std::map<std::string, PuiseuxScalar>& targets,
                                  bool boundary);

GluedModel glue(std::map<std::string, StarPiece> pieces, const TropicalReductionDatum& g,
                const Rational& rel_prec = kDefaultPrecision);

GluedModel lift(const TropicalReductionDatum& g, const Rational& rel_prec = kDefaultPrecision);

/// Human-readable differences between two data (empty when equal on all known terms).
std::vector<std::string> datum_differences(const TropicalReductionDatum& a, const TropicalReductionDatum& b);

}  // namespace tropform
