#include "tropform/puiseux.hpp"

#include <sstream>

#include "tropform/error.hpp"

namespace tropform {

GradedScalar GradedScalar::operator*(const GradedScalar& o) const {
  if (is_zero || o.is_zero) return zero();
  return make(grade + o.grade, coeff * o.coeff);
}

bool GradedScalar::operator==(const GradedScalar& o) const {
  if (is_zero || o.is_zero) return is_zero == o.is_zero;
  return grade == o.grade && coeff == o.coeff;
}

PuiseuxScalar::PuiseuxScalar(Terms terms, ExtRational prec)
    : terms_(std::move(terms)), prec_(std::move(prec)) {
  normalize();
}

PuiseuxScalar::PuiseuxScalar(const Rational& constant) {
  if (constant != 0) terms_.emplace(Rational(0), constant);
}

PuiseuxScalar PuiseuxScalar::monomial(const Rational& coeff, const Rational& exponent) {
  Terms t;
  if (coeff != 0) t.emplace(exponent, coeff);
  return PuiseuxScalar(std::move(t), std::nullopt);
}

void PuiseuxScalar::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || (prec_ && it->first >= *prec_)) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

Valuation PuiseuxScalar::val() const {
  if (!terms_.empty()) return {Valuation::State::Finite, terms_.begin()->first};
  if (!prec_) return {Valuation::State::Infinite, {}};
  return {Valuation::State::Unknown, {}};
}

ExtRational PuiseuxScalar::val_lower_bound() const {
  if (!terms_.empty()) return terms_.begin()->first;
  return prec_;
}

const Rational& PuiseuxScalar::leading_exponent() const {
  if (terms_.empty()) {
    if (!prec_) throw Error(ErrorKind::DivisionByZero, "leading term of exact zero");
    throw Error(ErrorKind::PrecisionExhausted, "leading term unknown below t^" + prec_->get_str());
  }
  return terms_.begin()->first;
}

const Rational& PuiseuxScalar::leading_coeff() const {
  leading_exponent();
  return terms_.begin()->second;
}

Rational PuiseuxScalar::coeff(const Rational& exponent) const {
  if (prec_ && exponent >= *prec_) {
    throw Error(ErrorKind::PrecisionExhausted, "coefficient of t^" + exponent.get_str() + " unknown");
  }
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

PuiseuxScalar PuiseuxScalar::truncated(const ExtRational& p) const {
  return PuiseuxScalar(terms_, ext_min(prec_, p));
}

PuiseuxScalar PuiseuxScalar::shifted(const Rational& e) const {
  Terms t;
  for (const auto& [x, c] : terms_) t.emplace(Rational(x + e), c);
  return PuiseuxScalar(std::move(t), ext_add(prec_, e));
}

PuiseuxScalar PuiseuxScalar::scaled(const Rational& q) const {
  if (q == 0) return zero();
  Terms t;
  for (const auto& [x, c] : terms_) t.emplace(x, Rational(c * q));
  return PuiseuxScalar(std::move(t), prec_);
}

PuiseuxScalar PuiseuxScalar::operator-() const { return scaled(Rational(-1)); }

PuiseuxScalar& PuiseuxScalar::operator+=(const PuiseuxScalar& o) {
  for (const auto& [x, c] : o.terms_) terms_[x] += c;
  prec_ = ext_min(prec_, o.prec_);
  normalize();
  return *this;
}

PuiseuxScalar& PuiseuxScalar::operator-=(const PuiseuxScalar& o) {
  for (const auto& [x, c] : o.terms_) terms_[x] -= c;
  prec_ = ext_min(prec_, o.prec_);
  normalize();
  return *this;
}

PuiseuxScalar operator*(const PuiseuxScalar& a, const PuiseuxScalar& b) {
  ExtRational p = ext_min(ext_add(a.prec_, b.val_lower_bound()), ext_add(b.prec_, a.val_lower_bound()));
  PuiseuxScalar::Terms t;
  for (const auto& [xa, ca] : a.terms_) {
    for (const auto& [xb, cb] : b.terms_) {
      Rational e = xa + xb;
      if (p && e >= *p) continue;
      t[e] += ca * cb;
    }
  }
  return PuiseuxScalar(std::move(t), p);
}

bool PuiseuxScalar::agrees_with(const PuiseuxScalar& o) const {
  ExtRational p = ext_min(prec_, o.prec_);
  return truncated(p).terms_ == o.truncated(p).terms_;
}

std::string PuiseuxScalar::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [x, c] : terms_) {
    if (!first) out << (c < 0 ? " - " : " + ");
    Rational mag = first ? c : Rational(abs(c));
    first = false;
    if (x == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag == -1) {
      out << "-";
    } else if (mag != 1) {
      out << mag.get_str() << "*";
    }
    out << "t";
    if (x != 1) out << "^" << (x.get_den() == 1 ? x.get_str() : "(" + x.get_str() + ")");
  }
  if (prec_) {
    if (!first) out << " + ";
    out << "O(t^" << (prec_->get_den() == 1 ? prec_->get_str() : "(" + prec_->get_str() + ")") << ")";
  } else if (first) {
    out << "0";
  }
  return out.str();
}

namespace {

/// sum_k coeff(k) x^k for val(x) > 0, truncated at min(target, prec(x)).
template <typename CoeffFn>
PuiseuxScalar power_series(const PuiseuxScalar& x, CoeffFn coeff, const Rational& target) {
  if (x.is_exact_zero()) return PuiseuxScalar(coeff(0));
  ExtRational p = ext_min(target, x.prec());
  const PuiseuxScalar xe = x.exact_part().truncated(p).exact_part();
  PuiseuxScalar result(coeff(0));
  PuiseuxScalar power(Rational(1));
  for (long k = 1; ; ++k) {
    power = (power * xe).truncated(p).exact_part();
    if (power.terms().empty()) break;
    Rational c = coeff(k);
    if (c != 0) result += power.scaled(c);
  }
  return result.truncated(p);
}

/// Splits a = c t^q (1 + x); returns x with val(x) > 0.
PuiseuxScalar unit_part(const PuiseuxScalar& a) {
  const Rational q = a.leading_exponent();
  const Rational c = a.leading_coeff();
  PuiseuxScalar x = a.shifted(-q).scaled(Rational(1) / c);
  x -= PuiseuxScalar(Rational(1));
  return x;
}

}  // namespace

PuiseuxScalar inv(const PuiseuxScalar& a, const Rational& rel_prec) {
  if (a.is_exact_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of exact zero");
  const Rational q = a.leading_exponent();
  const Rational c = a.leading_coeff();
  if (a.is_monomial()) return PuiseuxScalar::monomial(Rational(1) / c, -q);
  PuiseuxScalar x = unit_part(a);
  PuiseuxScalar s = power_series(x, [](long k) { return Rational(k % 2 ? -1 : 1); }, rel_prec);
  return s.scaled(Rational(1) / c).shifted(-q);
}

PuiseuxScalar divide(const PuiseuxScalar& a, const PuiseuxScalar& b, const Rational& rel_prec) {
  return a * inv(b, rel_prec);
}

PuiseuxScalar nth_root(const PuiseuxScalar& a, int n, const Rational& rel_prec) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "root index must be >= 1");
  if (a.is_exact_zero()) return a;
  const Rational q = a.leading_exponent();
  const Rational c = a.leading_coeff();
  auto root = exact_root(c, static_cast<unsigned>(n));
  if (!root) {
    throw Error(ErrorKind::NonSplitRoot,
                "leading coefficient " + c.get_str() + " has no " + std::to_string(n) + "-th root in Q");
  }
  const Rational qn = canonical(Rational(q / n));
  if (a.is_monomial()) return PuiseuxScalar::monomial(*root, qn);
  PuiseuxScalar x = unit_part(a);
  const Rational r = Rational(1, n);
  // binomial(1/n, k) built incrementally
  Rational running = 1;
  long last = 0;
  auto coeff = [&](long k) -> Rational {
    while (last < k) {
      ++last;
      running *= (r - (last - 1));
      running /= last;
    }
    return running;
  };
  PuiseuxScalar s = power_series(x, coeff, rel_prec);
  return s.scaled(*root).shifted(qn);
}

PuiseuxScalar exp_small(const PuiseuxScalar& a, const Rational& rel_prec) {
  if (a.is_exact_zero()) return PuiseuxScalar(Rational(1));
  auto v = a.val_lower_bound();
  if (!v || *v <= 0) throw Error(ErrorKind::NotSmall, "exp_small needs val > 0, got " + a.to_string());
  Rational fact = 1;
  long last = 0;
  auto coeff = [&](long k) -> Rational {
    while (last < k) fact *= ++last;
    return Rational(1) / fact;
  };
  return power_series(a, coeff, rel_prec);
}

PuiseuxScalar log_unit(const PuiseuxScalar& u, const Rational& rel_prec) {
  PuiseuxScalar b = u - PuiseuxScalar(Rational(1));
  if (b.is_exact_zero()) return PuiseuxScalar::zero();
  auto v = b.val_lower_bound();
  if (!v || *v <= 0) throw Error(ErrorKind::NotSmall, "log_unit needs u = 1 + b with val(b) > 0");
  return power_series(b, [](long k) { return k == 0 ? Rational(0) : Rational(k % 2 ? 1 : -1, k); }, rel_prec);
}

PuiseuxScalar pow(const PuiseuxScalar& a, long e, const Rational& rel_prec) {
  if (e < 0) return pow(inv(a, rel_prec), -e, rel_prec);
  PuiseuxScalar result(Rational(1));
  PuiseuxScalar base = a;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

GradedScalar graded_reduction(const PuiseuxScalar& a) {
  if (a.is_exact_zero()) return GradedScalar::zero();
  return GradedScalar::make(a.leading_exponent(), a.leading_coeff());
}

Rational reduce_integral(const PuiseuxScalar& a) {
  auto v = a.val_lower_bound();
  if (!v || *v > 0) return 0;
  if (a.terms().empty()) throw Error(ErrorKind::PrecisionExhausted, "reduction of unknown scalar");
  if (a.leading_exponent() < 0) {
    throw Error(ErrorKind::InvalidInput, "reduction of scalar with negative valuation " + a.to_string());
  }
  return a.leading_coeff();
}

}  // namespace tropform
