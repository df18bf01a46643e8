#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropform/model.hpp"
#include "tropform/rational.hpp"

namespace tropform {

/// Default truncation order for formal coordinates.
inline constexpr int kFormalOrder = 12;

/// (c_n s^n + r) ds/s at a point of the reduced curve.
struct FormalForm {
  int n = 0;
  Rational c_n;
  Rational r;
};

/// Element (lambda, mu) of G_n = G_m x_n G_a.
struct GnElement {
  Rational lambda;
  Rational mu;
  bool operator==(const GnElement&) const = default;
};

/// Truncated power series sum_{i=0}^{N} a_i s^i; coordinates have a_0 = 0.
using FormalSeries = std::vector<Rational>;

/// (lambda lambda', mu + lambda^l mu').
GnElement gn_compose(const GnElement& a, const GnElement& b, int l);
GnElement gn_inverse(const GnElement& a, int l);

/// The good coordinate sigma(s) with a_1 = lambda and, when n = -l < 0, a_2..a_l = 0 and
/// a_{l+1} = lambda mu; later coefficients come from the coefficient comparison. For n >= 0
/// it is lambda s and mu is ignored.
FormalSeries act(const GnElement& g, const FormalForm& w, int order = kFormalOrder);

/// The same form written in the good coordinate t: (c t^n + r) dt/t with c = c_n a_1^{-n}.
FormalForm transport(const FormalForm& w, const FormalSeries& t);

/// Checks (c t^n + r) dt/t = (c_n s^n + r) ds/s through order s^{order-1}.
bool is_good_formal(const FormalForm& w, const FormalSeries& t, int order = kFormalOrder);

/// outer(inner(s)) truncated at s^order; inner must have no constant term.
FormalSeries compose(const FormalSeries& outer, const FormalSeries& inner, int order);
/// Compositional inverse of t (t_1 != 0).
FormalSeries reversion(const FormalSeries& t, int order);

bool verify_group_law(const FormalForm& w, const GnElement& a, const GnElement& b, int order = kFormalOrder);

/// Good coordinate with a_1 = lambda built from the integrated identity
/// -(c_n/l) U^{-l} + r s^l log U = -(c_n/l) + k s^l, t = lambda s U, solved by fixed point.
/// Independent of the coefficient recursion in act(). Requires n < 0.
FormalSeries good_formal_by_integration(const FormalForm& w, const Rational& lambda, const Rational& k,
                                        int order = kFormalOrder);

/// The unique sigma with t2 = sigma(t1) relative to the form transported to t1, if the
/// higher coefficients confirm it.
std::optional<GnElement> transitivity(const FormalForm& w, const FormalSeries& t1, const FormalSeries& t2,
                                      int order = kFormalOrder);

/// Graded reduction (sum b_i f^i) (x) a_1: grade val(a_1), lead the leading coefficient of
/// a_1, jet[i-1] = reduction of a_i / a_1 for 1 <= i <= jet length.
struct GradedCoordinate {
  Rational grade;
  Rational lead;
  std::vector<Rational> jet;
  bool operator==(const GradedCoordinate&) const = default;
};

/// Reduction of sum a_i f^i. Throws NotDominant unless |a_1| is maximal and strictly
/// beats every a_i with i < 1 (only indices up to jet_len are inspected above 1).
GradedCoordinate coordinate_reduction(const std::map<int, PuiseuxScalar>& t, int jet_len);

/// Scaling by a graded scalar coeff * t^grade.
GradedCoordinate scale(const GradedCoordinate& c, const Rational& grade, const Rational& coeff);

/// Jet length used for the quotient by U_n: l when n = -l < 0, otherwise `fallback`.
int torsor_jet_length(int n, int fallback = 4);

/// Reduction at tail(e) of the model's good coordinate on the annulus of e, in the chart
/// parameter w of the marked point.
GradedCoordinate edge_coordinate(const GluedModel& m, const std::string& e);

/// phi_e: lift tau to a good coordinate on the annulus of e and reduce its inverse at head(e).
GradedCoordinate phi_e(const GluedModel& m, const std::string& e, const GradedCoordinate& tau);

}  // namespace tropform
