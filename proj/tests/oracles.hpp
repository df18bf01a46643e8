#pragma once

#include <optional>
#include <random>
#include <vector>

#include "tropform/annulus.hpp"

namespace tropform::testing {

/// Undetermined-coefficients solve of (c_n t^n + c_0) dt/t = (sum_i a_i s^i) ds/s for
/// t = s (u_0 + u_1 s + ... + u_K s^K) over Q, one order at a time. The torsor leaves
/// u_0 (and u_l when n = -l < 0) free; those are supplied, every other u_k is solved
/// from its own order by two exact evaluations of the residual (the residual is affine
/// in u_k there). Returns nullopt when some order cannot be satisfied.
class FormIdentityOracle {
 public:
  FormIdentityOracle(int n, std::map<int, Rational> a, Rational c_n, Rational c_0, int K)
      : n_(n), a_(std::move(a)), cn_(std::move(c_n)), c0_(std::move(c_0)), K_(K) {}

  std::optional<std::vector<Rational>> solve(const Rational& u0, const Rational& ul) const {
    std::vector<Rational> u(K_ + 1, Rational(0));
    u[0] = u0;
    const int l = -n_;
    if (n_ < 0 && l <= K_) u[l] = ul;
    for (int k = 1; k <= K_; ++k) {
      if (n_ < 0 && k == l) continue;
      u[k] = 0;
      const Rational r0 = residual(u, k);
      u[k] = 1;
      const Rational r1 = residual(u, k);
      if (r1 == r0) return std::nullopt;
      u[k] = canonical(-r0 / (r1 - r0));
    }
    for (int k = 0; k <= K_; ++k) {
      if (residual(u, k) != 0) return std::nullopt;
    }
    return u;
  }

  /// Coefficient of s^{n+k} ds/s in (c_n t^n + c_0) dt/t minus a_{n+k}.
  Rational residual(const std::vector<Rational>& u, int k) const {
    const int D = K_;
    // G = c_n U^n, V = 1 + s U'/U, both as power series to degree D
    const std::vector<Rational> inv = inverse(u, D);
    std::vector<Rational> g(D + 1, Rational(0));
    g[0] = cn_;
    const std::vector<Rational>& base = n_ >= 0 ? u : inv;
    for (int m = 0; m < std::abs(n_); ++m) g = mul(g, base, D);
    std::vector<Rational> du(D + 1, Rational(0));
    for (int j = 1; j <= D && j < static_cast<int>(u.size()); ++j) du[j] = u[j] * j;
    std::vector<Rational> v = mul(du, inv, D);
    v[0] += 1;
    Rational f = 0;
    for (int i = 0; i <= k; ++i) f += g[i] * v[k - i];
    const int j = n_ + k;
    if (j >= 0 && j <= D) f += c0_ * v[j];
    auto it = a_.find(n_ + k);
    if (it != a_.end()) f -= it->second;
    return canonical(f);
  }

 private:
  static std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b, int D) {
    std::vector<Rational> out(D + 1, Rational(0));
    for (int i = 0; i <= D && i < static_cast<int>(a.size()); ++i) {
      for (int j = 0; i + j <= D && j < static_cast<int>(b.size()); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }

  static std::vector<Rational> inverse(const std::vector<Rational>& u, int D) {
    std::vector<Rational> out(D + 1, Rational(0));
    out[0] = canonical(1 / u[0]);
    for (int k = 1; k <= D; ++k) {
      Rational s = 0;
      for (int j = 1; j <= k && j < static_cast<int>(u.size()); ++j) s += u[j] * out[k - j];
      out[k] = canonical(-s / u[0]);
    }
    return out;
  }

  int n_;
  std::map<int, Rational> a_;
  Rational cn_, c0_;
  int K_;
};

/// One-sided form sum_{i=n}^{n+6} a_i s^i ds/s with small rational coefficients on the
/// annulus [0, 4] open at the tail, where index n dominates on the working interval.
inline AnnulusForm one_sided_form(std::mt19937_64& rng, int n, std::map<int, Rational>& coeffs) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  coeffs.clear();
  for (int i = n; i <= n + 6; ++i) {
    Rational q = frac(num(rng), den(rng));
    if (i == n && q == 0) q = 1;
    if (q != 0) coeffs[i] = q;
  }
  AnnulusSeries::Coeffs c;
  for (const auto& [i, q] : coeffs) c.emplace(i, PuiseuxScalar(q));
  return AnnulusForm{AnnulusSeries(Skeleton(Rational(4), false, true), std::move(c), n - 12, n + 12, std::nullopt)};
}

}  // namespace tropform::testing
