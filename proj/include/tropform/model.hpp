#pragma once

#include <map>
#include <optional>
#include <string>

#include "tropform/annulus.hpp"
#include "tropform/complex.hpp"
#include "tropform/poly.hpp"

namespace tropform {

/// Default half-width of expansion windows.
inline constexpr int kExpansionWindow = 12;

/// val(w) range of the chart annulus around a marked point, w = z - q (or 1/z at infinity).
struct Radii {
  Rational inner;
  Rational outer;
  bool operator==(const Radii&) const = default;
};

/// Genus-0 piece over the star of a type-2 vertex: the form (num/den) dz on P^1.
struct StarPiece {
  std::string vertex;
  KPoly num;
  KPoly den;
  std::map<std::string, P1Point> marked;
  std::map<std::string, Radii> annuli;
  /// Boundary vertices only: the extra point that absorbs residue corrections.
  std::optional<P1Point> auxiliary;
};

/// Good coordinate on one side annulus together with its binomial form.
struct SideCoordinate {
  int n = 0;
  CoordinateChange change;
  PuiseuxScalar c_n;
  PuiseuxScalar c_0;
};

/// Gluing of the two side annuli of a bounded edge (stored under the edge whose tail
/// side is `tail`). In the chart coordinates w_tail * w_head = constant * (units).
struct EdgeGluing {
  std::string edge;
  SideCoordinate tail;
  SideCoordinate head;
  PuiseuxScalar constant;
};

struct LegGluing {
  std::string leg;
  SideCoordinate side;
};

struct GluedModel {
  CurveComplex complex;
  std::map<std::string, StarPiece> pieces;
  std::map<std::string, EdgeGluing> gluings;
  std::map<std::string, LegGluing> legs;
};

/// Throws InvalidInput unless pieces, marked points and radii fit the complex.
void check_model(const GluedModel& m);

Rational gauss_level(const StarPiece& p);
ExplicitP1Form scaled_reduction(const StarPiece& p);

/// Expansion of the piece's form on the chart annulus of branch e, in the coordinate
/// s = w t^{-inner}, with index window [-W, W].
AnnulusForm expand_on_annulus(const StarPiece& p, const std::string& e, int window = kExpansionWindow,
                              const Rational& rel_prec = kDefaultPrecision);

/// Exact residue of the piece's form at the marked point of e.
PuiseuxScalar point_residue(const StarPiece& p, const std::string& e);

ResidueFunction residue_function_of(const GluedModel& m, int window = kExpansionWindow);
TropicalReductionDatum tropicalize(const GluedModel& m, int window = kExpansionWindow);
bool harmonicity_check(const GluedModel& m, const std::string& v, int window = kExpansionWindow);

/// Constant of the gluing in the side annuli coordinates: t_head = c / t_tail.
PuiseuxScalar annulus_constant(const GluedModel& m, const EdgeGluing& g);
/// Pulls the head binomial back through t_head = c / t_tail and compares with the tail binomial.
bool gluing_consistent(const GluedModel& m, const EdgeGluing& g);

}  // namespace tropform
