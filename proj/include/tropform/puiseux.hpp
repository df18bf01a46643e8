#pragma once

#include <map>
#include <string>

#include "tropform/rational.hpp"

namespace tropform {

/// Relative precision (in exponent units) used when a series must be truncated.
inline const Rational kDefaultPrecision{24};

/// Valuation of a truncated scalar: a finite value, +infinity (exact zero),
/// or unknown (no known terms below a finite precision).
struct Valuation {
  enum class State { Finite, Infinite, Unknown };
  State state = State::Infinite;
  Rational value;

  bool finite() const { return state == State::Finite; }
  bool operator==(const Valuation&) const = default;
};

/// Element of the graded ring k^gr over Q: either zero or coeff * t^grade.
struct GradedScalar {
  bool is_zero = true;
  Rational grade;
  Rational coeff;

  static GradedScalar zero() { return {}; }
  static GradedScalar make(Rational grade, Rational coeff) {
    return coeff == 0 ? zero() : GradedScalar{false, std::move(grade), std::move(coeff)};
  }
  GradedScalar operator*(const GradedScalar& o) const;
  bool operator==(const GradedScalar& o) const;
};

/// Truncated element of the union of Q((t^{1/n})).
///
/// Terms with exponent >= prec are unknown. prec == nullopt means the value is
/// an exact Puiseux polynomial. The exact zero has no terms and infinite prec;
/// no terms with a finite prec is "zero to precision", which is a different state.
class PuiseuxScalar {
 public:
  using Terms = std::map<Rational, Rational>;

  PuiseuxScalar() = default;
  PuiseuxScalar(Terms terms, ExtRational prec);
  explicit PuiseuxScalar(const Rational& constant);
  explicit PuiseuxScalar(long constant) : PuiseuxScalar(Rational(constant)) {}

  static PuiseuxScalar zero() { return {}; }
  static PuiseuxScalar monomial(const Rational& coeff, const Rational& exponent);
  static PuiseuxScalar unknown(const Rational& prec) { return PuiseuxScalar({}, prec); }

  const Terms& terms() const { return terms_; }
  const ExtRational& prec() const { return prec_; }

  Valuation val() const;
  /// val if known, otherwise prec; +inf for exact zero.
  ExtRational val_lower_bound() const;
  bool is_exact_zero() const { return terms_.empty() && !prec_; }
  bool is_zero_to_precision() const { return terms_.empty() && prec_.has_value(); }
  bool is_exact() const { return !prec_; }
  bool is_monomial() const { return terms_.size() == 1 && !prec_; }
  const Rational& leading_exponent() const;
  const Rational& leading_coeff() const;
  /// Coefficient of t^e (0 if absent); throws PrecisionExhausted if e >= prec.
  Rational coeff(const Rational& exponent) const;

  /// Drops every term with exponent >= p and lowers prec to p.
  PuiseuxScalar truncated(const ExtRational& p) const;
  /// Multiplication by t^e.
  PuiseuxScalar shifted(const Rational& e) const;
  PuiseuxScalar scaled(const Rational& q) const;
  /// Same terms with prec forgotten; used once the caller tracks precision itself.
  PuiseuxScalar exact_part() const { return PuiseuxScalar(terms_, std::nullopt); }

  PuiseuxScalar operator-() const;
  PuiseuxScalar& operator+=(const PuiseuxScalar& o);
  PuiseuxScalar& operator-=(const PuiseuxScalar& o);
  friend PuiseuxScalar operator+(PuiseuxScalar a, const PuiseuxScalar& b) { return a += b; }
  friend PuiseuxScalar operator-(PuiseuxScalar a, const PuiseuxScalar& b) { return a -= b; }
  friend PuiseuxScalar operator*(const PuiseuxScalar& a, const PuiseuxScalar& b);

  /// Structural equality (same terms, same prec).
  bool operator==(const PuiseuxScalar& o) const = default;
  /// True if both agree on every exponent below min(prec, prec_o).
  bool agrees_with(const PuiseuxScalar& o) const;

  std::string to_string() const;

 private:
  void normalize();

  Terms terms_;
  ExtRational prec_;
};

PuiseuxScalar inv(const PuiseuxScalar& a, const Rational& rel_prec = kDefaultPrecision);
PuiseuxScalar divide(const PuiseuxScalar& a, const PuiseuxScalar& b,
                     const Rational& rel_prec = kDefaultPrecision);
PuiseuxScalar nth_root(const PuiseuxScalar& a, int n, const Rational& rel_prec = kDefaultPrecision);
PuiseuxScalar exp_small(const PuiseuxScalar& a, const Rational& rel_prec = kDefaultPrecision);
PuiseuxScalar log_unit(const PuiseuxScalar& u, const Rational& rel_prec = kDefaultPrecision);
PuiseuxScalar pow(const PuiseuxScalar& a, long e, const Rational& rel_prec = kDefaultPrecision);
GradedScalar graded_reduction(const PuiseuxScalar& a);

/// Residue-field reduction of a scalar of valuation >= 0 (0 if val > 0).
Rational reduce_integral(const PuiseuxScalar& a);

}  // namespace tropform
