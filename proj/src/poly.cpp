#include "tropform/poly.hpp"

namespace tropform {

namespace {

Rational inverse_of(const Rational& a, const Rational&) { return 1 / a; }
PuiseuxScalar inverse_of(const PuiseuxScalar& a, const Rational& rel) { return inv(a, rel); }

/// First k+1 coefficients of num/den, den(0) != 0.
template <class T>
std::vector<T> series_quotient(const Poly<T>& num, const Poly<T>& den, int k, const Rational& rel) {
  std::vector<T> s;
  if (k < 0) return s;
  const T inv0 = inverse_of(den.coeff(0), rel);
  s.reserve(k + 1);
  for (int i = 0; i <= k; ++i) {
    T acc = num.coeff(i);
    for (int j = 1; j <= std::min(i, den.degree()); ++j) acc -= den.coeff(j) * s[i - j];
    s.push_back(acc * inv0);
  }
  return s;
}

template <class T>
Poly<T> drop_low(const Poly<T>& p, int m) {
  std::vector<T> c(p.coeffs().begin() + m, p.coeffs().end());
  return Poly<T>(std::move(c));
}

template <class T>
std::map<int, T> laurent_impl(const Poly<T>& num, const Poly<T>& den, const P1Point& q, int hi, const Rational& rel) {
  if (den.is_zero()) throw Error(ErrorKind::InvalidInput, "zero denominator");
  std::map<int, T> out;
  if (num.is_zero()) return out;
  if (q) {
    const Poly<T> n = num.taylor_shift(*q);
    const Poly<T> d = den.taylor_shift(*q);
    const int m = d.order();
    // f dz = w^{-m} (n / d') dw = (sum s_k w^{k-m+1}) dw/w
    const auto s = series_quotient(n, drop_low(d, m), hi - 1 + m, rel);
    for (int k = 0; k < static_cast<int>(s.size()); ++k) {
      if (!detail::is_zero(s[k])) out.emplace(k - m + 1, s[k]);
    }
  } else {
    // z = 1/w, dz = -dw/w^2: f dz = -w^e (rev num / rev den) dw/w
    const int e = den.degree() - num.degree() - 1;
    const auto s = series_quotient(num.reversed(), den.reversed(), hi - e, rel);
    for (int k = 0; k < static_cast<int>(s.size()); ++k) {
      if (!detail::is_zero(s[k])) out.emplace(k + e, -s[k]);
    }
  }
  return out;
}

}  // namespace

std::map<int, Rational> laurent_at(const QPoly& num, const QPoly& den, const P1Point& q, int hi) {
  return laurent_impl(num, den, q, hi, Rational(0));
}

std::map<int, PuiseuxScalar> laurent_at(const KPoly& num, const KPoly& den, const P1Point& q, int hi,
                                        const Rational& rel_prec) {
  return laurent_impl(num, den, q, hi, rel_prec);
}

int log_order_at(const QPoly& num, const QPoly& den, const P1Point& q) {
  if (num.is_zero()) throw Error(ErrorKind::ZeroForm, "zero form has no log-order");
  if (den.is_zero()) throw Error(ErrorKind::InvalidInput, "zero denominator");
  if (!q) return den.degree() - num.degree() - 1;
  return num.taylor_shift(*q).order() - den.taylor_shift(*q).order() + 1;
}

Rational residue_at(const QPoly& num, const QPoly& den, const P1Point& q) {
  auto a = laurent_at(num, den, q, 0);
  auto it = a.find(0);
  return it == a.end() ? Rational(0) : it->second;
}

}  // namespace tropform
