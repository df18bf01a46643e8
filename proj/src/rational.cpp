#include "tropform/rational.hpp"

#include "tropform/error.hpp"

namespace tropform {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NonSplitRoot: return "NonSplitRoot";
    case ErrorKind::NotSmall: return "NotSmall";
    case ErrorKind::NoDominantTerm: return "NoDominantTerm";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::InfiniteSlopeMismatch: return "InfiniteSlopeMismatch";
    case ErrorKind::NonSplitDenominator: return "NonSplitDenominator";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::PoleInAnnulus: return "PoleInAnnulus";
    case ErrorKind::UnsupportedGenus: return "UnsupportedGenus";
    case ErrorKind::ResidueMismatch: return "ResidueMismatch";
    case ErrorKind::NormViolation: return "NormViolation";
    case ErrorKind::IncompatibleBinomials: return "IncompatibleBinomials";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw Error(ErrorKind::InvalidInput, "malformed rational '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const ExtRational& q) { return q ? q->get_str() : std::string("inf"); }

ExtRational ext_min(const ExtRational& a, const ExtRational& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

ExtRational ext_add(const ExtRational& a, const ExtRational& b) {
  if (!a || !b) return std::nullopt;
  return Rational(*a + *b);
}

bool ext_less(const ExtRational& a, const ExtRational& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

namespace {

std::optional<mpz_class> exact_int_root(const mpz_class& z, unsigned n) {
  if (z < 0) {
    if (n % 2 == 0) return std::nullopt;
    auto r = exact_int_root(-z, n);
    if (!r) return std::nullopt;
    return mpz_class(-*r);
  }
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), z.get_mpz_t(), n) == 0) return std::nullopt;
  return r;
}

}  // namespace

std::optional<Rational> exact_root(const Rational& q, unsigned n) {
  if (n == 0) return std::nullopt;
  auto num = exact_int_root(q.get_num(), n);
  auto den = exact_int_root(q.get_den(), n);
  if (!num || !den) return std::nullopt;
  return canonical(Rational(*num, *den));
}

Rational rational_pow(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw Error(ErrorKind::DivisionByZero, "negative power of zero");
    return rational_pow(Rational(1) / q, -e);
  }
  Rational result = 1;
  Rational base = q;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace tropform
