#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tropform/puiseux.hpp"

namespace tropform {

/// Skeleton [0, L] of an oriented annulus; a point x carries val(s) = x.
/// The tail is x = 0 (|s| = 1), the head is x = L.
struct Skeleton {
  Rational length{1};
  bool tail_closed = true;
  bool head_closed = true;

  Skeleton() = default;
  Skeleton(Rational l, bool tail, bool head);

  /// Closed interval on which norms and precision are measured. Open ends are
  /// pulled inwards by a quarter of the length.
  std::pair<Rational, Rational> working_interval() const;
  Skeleton reversed() const { return Skeleton(length, head_closed, tail_closed); }
  bool operator==(const Skeleton&) const = default;
};

/// val(a) + i*x, the additive form of |a s^i|_x.
Rational val_at(const PuiseuxScalar& a, int i, const Rational& x);

/// Padding used when a series is built without an explicit window.
inline constexpr int kDefaultWindow = 12;

/// Laurent series sum a_i s^i on an annulus, known up to a remainder whose
/// norm (minimum over the working interval of val(r_i) + i*x) is >= prec.
/// Terms are represented on the index window [lo, hi]; an inexact result never
/// leaves the hull of its operands' windows, the excess joining the remainder.
///
/// Stored coefficients are exact Puiseux polynomials; any coefficient
/// precision supplied at construction is folded into the series precision.
class AnnulusSeries {
 public:
  using Coeffs = std::map<int, PuiseuxScalar>;

  AnnulusSeries() = default;
  AnnulusSeries(Skeleton skeleton, Coeffs coeffs, int lo, int hi, ExtRational prec = std::nullopt);
  /// Window spanning the stored indices and 0, padded by kDefaultWindow on each side.
  AnnulusSeries(Skeleton skeleton, Coeffs coeffs, ExtRational prec = std::nullopt);

  static AnnulusSeries constant(const Skeleton& sk, const PuiseuxScalar& c);
  static AnnulusSeries monomial(const Skeleton& sk, const PuiseuxScalar& c, int i);

  const Skeleton& skeleton() const { return skeleton_; }
  const Coeffs& coeffs() const { return coeffs_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const ExtRational& prec() const { return prec_; }

  /// Coefficient of s^i with its derived Puiseux precision; WindowTooSmall outside the window.
  PuiseuxScalar coeff(int i) const;
  /// Norm of the term a s^i on the working interval.
  Rational term_norm(const PuiseuxScalar& a, int i) const;
  /// Norm of the known part; nullopt when no terms are stored.
  ExtRational norm() const;
  /// min(norm(), prec()).
  ExtRational norm_lower_bound() const;
  bool is_zero_to_precision() const { return coeffs_.empty(); }

  AnnulusSeries with_prec(const ExtRational& p) const;
  /// Restriction to the window [lo, hi]; dropped terms are folded into the remainder.
  AnnulusSeries clipped(int lo, int hi) const;
  AnnulusSeries operator-() const;
  friend AnnulusSeries operator+(const AnnulusSeries& a, const AnnulusSeries& b);
  friend AnnulusSeries operator-(const AnnulusSeries& a, const AnnulusSeries& b);
  friend AnnulusSeries operator*(const AnnulusSeries& a, const AnnulusSeries& b);
  AnnulusSeries scaled(const PuiseuxScalar& c) const;
  /// Multiplication by s^m.
  AnnulusSeries shifted(int m) const;
  /// s d/ds.
  AnnulusSeries theta() const;

  /// Agreement on every coefficient both sides know.
  bool agrees_with(const AnnulusSeries& o) const;

 private:
  void normalize();

  Skeleton skeleton_;
  Coeffs coeffs_;
  int lo_ = 0;
  int hi_ = 0;
  ExtRational prec_;
};

/// Unit-series helpers. Each result is truncated at norm precision `cap`.
AnnulusSeries unit_inverse(const AnnulusSeries& u, const Rational& cap);
AnnulusSeries unit_log(const AnnulusSeries& u, const Rational& cap);
AnnulusSeries unit_root(const AnnulusSeries& u, int n, const Rational& cap);
AnnulusSeries small_exp(const AnnulusSeries& x, const Rational& cap);
AnnulusSeries power(const AnnulusSeries& u, int e, const Rational& cap);

/// The differential form (sum a_i s^i) ds/s.
struct AnnulusForm {
  AnnulusSeries series;
};

/// New coordinate t = s*unit, or t = constant * s^{-1} * unit when reversing.
struct CoordinateChange {
  bool reverses = false;
  PuiseuxScalar constant{Rational(1)};
  AnnulusSeries unit;

  static CoordinateChange identity(const Skeleton& sk);
};

int dominant_index(const AnnulusSeries& s);
PuiseuxScalar residue(const AnnulusForm& w);
/// Expresses w (written in the new coordinate t) in the old coordinate s.
AnnulusForm pullback(const AnnulusForm& w, const CoordinateChange& phi,
                     const Rational& rel_prec = kDefaultPrecision);
int level_slope(const AnnulusForm& w);
bool is_good(const AnnulusForm& w);
/// Valuation gap between the non-binomial part and the dominant term; nullopt = +inf.
ExtRational epsilon_gap(const AnnulusForm& w);

struct GoodCoordinate {
  CoordinateChange change;
  int n = 0;
  PuiseuxScalar c_n;
  PuiseuxScalar c_0;
  int iterations = 0;
  /// gaps[0] is the gap of the input, gaps[j] the gap after iteration j.
  std::vector<ExtRational> gaps;
};

/// The binomial (c_n t^n + c_0) dt/t on the given skeleton.
AnnulusForm binomial_form(const Skeleton& sk, int n, const PuiseuxScalar& c_n, const PuiseuxScalar& c_0);

inline constexpr int kMaxGoodCoordinateIterations = 64;

GoodCoordinate good_coordinate(const AnnulusForm& w, const Rational& rel_prec = kDefaultPrecision);

}  // namespace tropform
