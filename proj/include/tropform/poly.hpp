#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tropform/error.hpp"
#include "tropform/puiseux.hpp"

namespace tropform {

namespace detail {
inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const PuiseuxScalar& a) { return a.is_exact_zero(); }
inline Rational lift(const Rational& q, const Rational*) { return q; }
inline PuiseuxScalar lift(const Rational& q, const PuiseuxScalar*) { return PuiseuxScalar(q); }
}  // namespace detail

/// Dense univariate polynomial; coeffs[i] multiplies z^i. Trailing zeros are trimmed.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(T a) { return Poly(std::vector<T>{std::move(a)}); }
  static Poly from(const Rational& q) { return constant(detail::lift(q, static_cast<T*>(nullptr))); }
  /// z - q
  static Poly linear(const Rational& q) {
    return Poly(std::vector<T>{detail::lift(-q, static_cast<T*>(nullptr)), detail::lift(1, static_cast<T*>(nullptr))});
  }

  const std::vector<T>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  T coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : T(); }

  Poly operator+(const Poly& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<T> r;
    for (const auto& a : c_) r.push_back(-a);
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<T> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (detail::is_zero(c_[i])) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly scaled(const T& a) const { return *this * constant(a); }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  T eval(const Rational& z) const {
    T r{};
    const T zz = detail::lift(z, static_cast<T*>(nullptr));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * zz + *it;
    return r;
  }

  /// p(z + q)
  Poly taylor_shift(const Rational& q) const {
    std::vector<T> r = c_;
    const T qq = detail::lift(q, static_cast<T*>(nullptr));
    const int n = degree();
    for (int i = 0; i < n; ++i) {
      for (int j = n - 1; j >= i; --j) r[j] += qq * r[j + 1];
    }
    return Poly(std::move(r));
  }

  /// z^deg p(1/z)
  Poly reversed() const { return Poly(std::vector<T>(c_.rbegin(), c_.rend())); }

  /// Division by z - q; returns the quotient and sets rem to p(q).
  Poly divide_linear(const Rational& q, T& rem) const {
    if (is_zero()) {
      rem = T();
      return {};
    }
    const T qq = detail::lift(q, static_cast<T*>(nullptr));
    std::vector<T> quot(c_.size() - 1);
    T acc = c_.back();
    for (int i = degree() - 1; i >= 0; --i) {
      quot[i] = acc;
      acc = c_[i] + acc * qq;
    }
    rem = acc;
    return Poly(std::move(quot));
  }

  /// Index of the lowest nonzero coefficient (order of vanishing at 0).
  int order() const {
    for (size_t i = 0; i < c_.size(); ++i) {
      if (!detail::is_zero(c_[i])) return static_cast<int>(i);
    }
    return -1;
  }

 private:
  void trim() {
    while (!c_.empty() && detail::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

using QPoly = Poly<Rational>;
using KPoly = Poly<PuiseuxScalar>;

/// A point of P^1 over Q; nullopt is infinity (same representation as ExtRational).
using P1Point = std::optional<Rational>;

/// Coefficients a_i of f(z)dz = (sum a_i w^i) dw/w in the local coordinate
/// w = z - q (or w = 1/z at infinity), for every i <= hi. Lower indices start
/// at the pole order. rel_prec bounds the series division over Puiseux scalars.
std::map<int, Rational> laurent_at(const QPoly& num, const QPoly& den, const P1Point& q, int hi);
std::map<int, PuiseuxScalar> laurent_at(const KPoly& num, const KPoly& den, const P1Point& q, int hi,
                                        const Rational& rel_prec = kDefaultPrecision);

/// Lowest index with a nonzero coefficient in the expansion above (the log-order).
int log_order_at(const QPoly& num, const QPoly& den, const P1Point& q);
Rational residue_at(const QPoly& num, const QPoly& den, const P1Point& q);

}  // namespace tropform
