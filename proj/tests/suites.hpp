#pragma once

#include <random>

#include "support.hpp"
#include "tropform/annulus.hpp"

namespace tropform::testing {

/// Random exact form on a closed annulus whose index n strictly dominates.
/// Indices lie in [n - 12, n + 12]; coefficient valuations are half-integers
/// at least 1/2 above the dominance threshold.
inline AnnulusForm random_dominated_form(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> len_pick(0, 2);
  const Rational lengths[] = {Rational(1, 2), Rational(1), Rational(2)};
  Skeleton sk(lengths[len_pick(rng)], true, true);
  std::uniform_int_distribution<int> count(2, 6);
  std::uniform_int_distribution<int> offset(-4, 4);
  std::uniform_int_distribution<int> extra(1, 4);
  std::uniform_int_distribution<int> coeff(-4, 4);
  AnnulusSeries::Coeffs c;
  int lead = coeff(rng);
  c.emplace(n, PuiseuxScalar(Rational(lead == 0 ? 1 : lead)));
  const int k = count(rng);
  for (int j = 0; j < k; ++j) {
    const int i = n + offset(rng);
    if (i == n || c.count(i)) continue;
    Rational floor_val = (n - i) * sk.length;
    if (floor_val < 0) floor_val = 0;
    PuiseuxScalar::Terms terms;
    const int nterms = 1 + (coeff(rng) > 2);
    for (int m = 0; m < nterms; ++m) {
      int cv = coeff(rng);
      terms[canonical(floor_val + frac(extra(rng), 2) + m)] += Rational(cv == 0 ? 1 : cv);
    }
    c.emplace(i, PuiseuxScalar(std::move(terms), std::nullopt));
  }
  return AnnulusForm{AnnulusSeries(sk, std::move(c), n - 12, n + 12, std::nullopt)};
}

/// Random exact unit 1 + small on a closed skeleton of length L (integer).
AnnulusSeries random_unit(std::mt19937_64& rng, const Skeleton& sk) {
  std::uniform_int_distribution<int> idx(-2, 2);
  AnnulusSeries::Coeffs c{{0, PuiseuxScalar(Rational(1))}};
  for (int k = 0; k < 3; ++k) {
    int i = idx(rng);
    if (i == 0) continue;
    Rational floor_val = i > 0 ? Rational(0) : Rational(-i * sk.length);
    PuiseuxScalar a = random_scalar(rng, 0, 2, 2, 2).shifted(floor_val + Rational(1, 2));
    auto [it, fresh] = c.emplace(i, a);
    if (!fresh) it->second += a;
  }
  return AnnulusSeries(sk, std::move(c));
}

/// Random form on a closed skeleton of length 1 whose index n strictly dominates.
AnnulusForm random_form(std::mt19937_64& rng, int n, bool with_residue) {
  Skeleton sk(Rational(1), true, true);
  std::uniform_int_distribution<int> idx(-3, 3);
  AnnulusSeries::Coeffs c{{n, random_scalar(rng, 0, 1, 2, 1).shifted(Rational(0)) + T("0", "1")}};
  c.at(n) = T("0", "2") + random_scalar(rng, 1, 2, 2, 1);
  for (int k = 0; k < 4; ++k) {
    int i = idx(rng);
    if (i == n || (i == 0 && !with_residue)) continue;
    Rational floor_val = std::max<Rational>(0, Rational(n - i));
    PuiseuxScalar a = random_scalar(rng, 0, 2, 3, 2).shifted(floor_val + Rational(1, 3));
    auto [it, fresh] = c.emplace(i, a);
    if (!fresh) it->second += a;
  }
  if (with_residue && n != 0 && !c.count(0)) c.emplace(0, T("1/2", "3").shifted(Rational(std::abs(n))));
  return AnnulusForm{AnnulusSeries(sk, std::move(c))};
}

}  // namespace tropform::testing
