#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace tropform {

/// Exact rational number, always kept canonical (gcd 1, positive denominator).
using Rational = mpq_class;

/// Rational extended by +infinity; nullopt encodes +infinity.
using ExtRational = std::optional<Rational>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const ExtRational& q);

/// min over extended rationals (nullopt = +inf).
ExtRational ext_min(const ExtRational& a, const ExtRational& b);
ExtRational ext_add(const ExtRational& a, const ExtRational& b);
bool ext_less(const ExtRational& a, const ExtRational& b);

/// Exact n-th root in Q, if it exists.
std::optional<Rational> exact_root(const Rational& q, unsigned n);

Rational rational_pow(const Rational& q, long e);

inline Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

/// p/q in canonical form; q may be negative.
inline Rational frac(long p, long q) { return canonical(Rational(p, q)); }

}  // namespace tropform
