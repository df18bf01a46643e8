#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <utility>

#include "tropform/puiseux.hpp"

namespace tropform::testing {

inline Rational Q(const char* s) { return parse_rational(s); }

/// Builds a Puiseux scalar from (exponent, coefficient) pairs written as strings.
inline PuiseuxScalar ps(std::initializer_list<std::pair<const char*, const char*>> terms,
                        ExtRational prec = std::nullopt) {
  PuiseuxScalar::Terms t;
  for (const auto& [e, c] : terms) t[parse_rational(e)] += parse_rational(c);
  return PuiseuxScalar(std::move(t), std::move(prec));
}

inline PuiseuxScalar T(const char* exponent, const char* coeff = "1") { return ps({{exponent, coeff}}); }

/// Random exact Puiseux polynomial with exponents in (1/den)Z within [lo, lo+span).
inline PuiseuxScalar random_scalar(std::mt19937_64& rng, int lo, int span, int den, int nterms) {
  std::uniform_int_distribution<int> e(0, span * den - 1);
  std::uniform_int_distribution<int> c(-5, 5);
  PuiseuxScalar::Terms t;
  for (int i = 0; i < nterms; ++i) {
    int cv = c(rng);
    if (cv == 0) cv = 1;
    t[canonical(Rational(lo * den + e(rng), den))] += Rational(cv);
  }
  return PuiseuxScalar(std::move(t), std::nullopt);
}

}  // namespace tropform::testing
