#include "tropform/annulus.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "tropform/error.hpp"

namespace tropform {

Skeleton::Skeleton(Rational l, bool tail, bool head)
    : length(std::move(l)), tail_closed(tail), head_closed(head) {
  if (length <= 0) throw Error(ErrorKind::InvalidInput, "skeleton length must be positive");
}

std::pair<Rational, Rational> Skeleton::working_interval() const {
  Rational a = tail_closed ? Rational(0) : Rational(length / 4);
  Rational b = head_closed ? length : Rational(3 * length / 4);
  return {a, b};
}

Rational val_at(const PuiseuxScalar& a, int i, const Rational& x) {
  Valuation v = a.val();
  if (!v.finite()) {
    throw Error(ErrorKind::PrecisionExhausted, "val_at needs a known nonzero coefficient");
  }
  return v.value + i * x;
}

namespace {
constexpr int kWorkingPad = 8;  // extra indices good_coordinate carries beyond the input window

/// min over the working interval of i*x.
Rational index_shift(const Skeleton& sk, int i) {
  auto [a, b] = sk.working_interval();
  return i >= 0 ? Rational(i * a) : Rational(i * b);
}

void require_same_skeleton(const AnnulusSeries& a, const AnnulusSeries& b) {
  if (!(a.skeleton() == b.skeleton())) {
    throw Error(ErrorKind::InvalidInput, "series live on different annuli");
  }
}

}  // namespace

AnnulusSeries::AnnulusSeries(Skeleton skeleton, Coeffs coeffs, int lo, int hi, ExtRational prec)
    : skeleton_(std::move(skeleton)), coeffs_(std::move(coeffs)), lo_(lo), hi_(hi), prec_(std::move(prec)) {
  if (lo_ > hi_) throw Error(ErrorKind::InvalidInput, "empty window");
  for (const auto& [i, c] : coeffs_) {
    if (i < lo_ || i > hi_) throw Error(ErrorKind::InvalidInput, "coefficient index outside window");
  }
  normalize();
}

AnnulusSeries::AnnulusSeries(Skeleton skeleton, Coeffs coeffs, ExtRational prec)
    : skeleton_(std::move(skeleton)), coeffs_(std::move(coeffs)), prec_(std::move(prec)) {
  normalize();
  lo_ = -kDefaultWindow;
  hi_ = kDefaultWindow;
  if (!coeffs_.empty()) {
    lo_ = std::min(coeffs_.begin()->first, 0) - kDefaultWindow;
    hi_ = std::max(coeffs_.rbegin()->first, 0) + kDefaultWindow;
  }
}

void AnnulusSeries::normalize() {
  for (const auto& [i, c] : coeffs_) {
    if (c.prec()) prec_ = ext_min(prec_, Rational(*c.prec() + index_shift(skeleton_, i)));
  }
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    ExtRational cut;
    if (prec_) cut = Rational(*prec_ - index_shift(skeleton_, it->first));
    it->second = it->second.truncated(cut).exact_part();
    if (it->second.is_exact_zero()) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
}

AnnulusSeries AnnulusSeries::constant(const Skeleton& sk, const PuiseuxScalar& c) {
  return AnnulusSeries(sk, Coeffs{{0, c}});
}

AnnulusSeries AnnulusSeries::monomial(const Skeleton& sk, const PuiseuxScalar& c, int i) {
  return AnnulusSeries(sk, Coeffs{{i, c}});
}

PuiseuxScalar AnnulusSeries::coeff(int i) const {
  if (i < lo_ || i > hi_) {
    throw Error(ErrorKind::WindowTooSmall,
                "index " + std::to_string(i) + " outside window [" + std::to_string(lo_) + ", " +
                    std::to_string(hi_) + "]");
  }
  ExtRational p;
  if (prec_) p = Rational(*prec_ - index_shift(skeleton_, i));
  auto it = coeffs_.find(i);
  PuiseuxScalar c = it == coeffs_.end() ? PuiseuxScalar::zero() : it->second;
  return c.truncated(p);
}

Rational AnnulusSeries::term_norm(const PuiseuxScalar& a, int i) const {
  return a.leading_exponent() + index_shift(skeleton_, i);
}

ExtRational AnnulusSeries::norm() const {
  ExtRational best;
  for (const auto& [i, c] : coeffs_) best = ext_min(best, term_norm(c, i));
  return best;
}

ExtRational AnnulusSeries::norm_lower_bound() const { return ext_min(norm(), prec_); }

AnnulusSeries AnnulusSeries::with_prec(const ExtRational& p) const {
  AnnulusSeries r = *this;
  r.prec_ = ext_min(prec_, p);
  r.normalize();
  return r;
}

AnnulusSeries AnnulusSeries::operator-() const {
  AnnulusSeries r = *this;
  for (auto& [i, c] : r.coeffs_) c = -c;
  return r;
}

AnnulusSeries operator+(const AnnulusSeries& a, const AnnulusSeries& b) {
  require_same_skeleton(a, b);
  AnnulusSeries r = a;
  for (const auto& [i, c] : b.coeffs_) {
    auto it = r.coeffs_.find(i);
    if (it == r.coeffs_.end()) {
      r.coeffs_.emplace(i, c);
    } else {
      it->second += c;
    }
  }
  r.lo_ = std::min(a.lo_, b.lo_);
  r.hi_ = std::max(a.hi_, b.hi_);
  r.prec_ = ext_min(a.prec_, b.prec_);
  r.normalize();
  return r;
}

AnnulusSeries operator-(const AnnulusSeries& a, const AnnulusSeries& b) { return a + (-b); }

AnnulusSeries operator*(const AnnulusSeries& a, const AnnulusSeries& b) {
  require_same_skeleton(a, b);
  ExtRational p = ext_min(ext_add(a.prec_, b.norm_lower_bound()), ext_add(b.prec_, a.norm_lower_bound()));
  // Exact products keep every term; otherwise the result lives on the hull of the two
  // windows and anything outside is folded into the remainder.
  const bool exact = !p;
  const int lo = exact ? a.lo_ + b.lo_ : std::min(a.lo_, b.lo_);
  const int hi = exact ? a.hi_ + b.hi_ : std::max(a.hi_, b.hi_);
  const auto [xa, xb] = a.skeleton_.working_interval();
  auto shift = [&](int k) -> Rational { return k >= 0 ? Rational(k * xa) : Rational(k * xb); };
  std::map<int, PuiseuxScalar::Terms> acc;
  std::map<int, Rational> cuts;
  Rational e, x;
  for (const auto& [i, ca] : a.coeffs_) {
    for (const auto& [j, cb] : b.coeffs_) {
      const int k = i + j;
      if (k < lo || k > hi) {
        Rational dropped = ca.leading_exponent() + cb.leading_exponent() + shift(k);
        p = ext_min(p, dropped);
        continue;
      }
      const Rational* cut = nullptr;
      if (p) {
        auto it = cuts.find(k);
        if (it == cuts.end()) it = cuts.emplace(k, *p - shift(k)).first;
        cut = &it->second;
        if (ca.terms().begin()->first + cb.terms().begin()->first >= *cut) continue;
      }
      auto& terms = acc[k];
      for (const auto& [ea, ya] : ca.terms()) {
        if (cut && ea + cb.terms().begin()->first >= *cut) break;
        for (const auto& [eb, yb] : cb.terms()) {
          e = ea;
          e += eb;
          if (cut && e >= *cut) break;
          x = ya;
          x *= yb;
          terms[e] += x;
        }
      }
    }
  }
  AnnulusSeries::Coeffs coeffs;
  for (auto& [k, terms] : acc) {
    if (!terms.empty()) coeffs.emplace(k, PuiseuxScalar(std::move(terms), std::nullopt));
  }
  // Cuts computed before a later drop may have let through terms now above p; the
  // constructor trims them.
  return AnnulusSeries(a.skeleton_, std::move(coeffs), lo, hi, p);
}

AnnulusSeries AnnulusSeries::clipped(int lo, int hi) const {
  Coeffs kept;
  ExtRational p = prec_;
  for (const auto& [i, c] : coeffs_) {
    if (i < lo || i > hi) {
      p = ext_min(p, term_norm(c, i));
    } else {
      kept.emplace(i, c);
    }
  }
  return AnnulusSeries(skeleton_, std::move(kept), lo, hi, p);
}

AnnulusSeries AnnulusSeries::scaled(const PuiseuxScalar& c) const {
  AnnulusSeries k(skeleton_, Coeffs{{0, c}}, lo_, hi_, std::nullopt);
  if (c.is_exact_zero()) k.coeffs_.clear();
  return *this * k;
}

AnnulusSeries AnnulusSeries::shifted(int m) const {
  Coeffs moved;
  for (const auto& [i, c] : coeffs_) moved.emplace(i + m, c);
  ExtRational p;
  if (prec_) p = Rational(*prec_ + index_shift(skeleton_, m));
  return AnnulusSeries(skeleton_, std::move(moved), lo_ + m, hi_ + m, p);
}

AnnulusSeries AnnulusSeries::theta() const {
  Coeffs d;
  for (const auto& [i, c] : coeffs_) {
    if (i != 0) d.emplace(i, c.scaled(Rational(i)));
  }
  return AnnulusSeries(skeleton_, std::move(d), lo_, hi_, prec_);
}

bool AnnulusSeries::agrees_with(const AnnulusSeries& o) const {
  require_same_skeleton(*this, o);
  ExtRational p = ext_min(prec_, o.prec_);
  AnnulusSeries a = with_prec(p);
  AnnulusSeries b = o.with_prec(p);
  return a.coeffs_ == b.coeffs_;
}

namespace {

/// u = lambda * (1 + x) with lambda the leading rational of the index-0 coefficient.
std::pair<Rational, AnnulusSeries> split_unit(const AnnulusSeries& u) {
  auto it = u.coeffs().find(0);
  if (it == u.coeffs().end() || it->second.leading_exponent() != 0) {
    throw Error(ErrorKind::NotSmall, "series is not a unit: index-0 coefficient must have valuation 0");
  }
  Rational lambda = it->second.leading_coeff();
  AnnulusSeries x = u.scaled(PuiseuxScalar(Rational(1) / lambda)) -
                    AnnulusSeries::constant(u.skeleton(), PuiseuxScalar(Rational(1)));
  auto nx = x.norm();
  if (nx && *nx <= 0) throw Error(ErrorKind::NotSmall, "index 0 does not strictly dominate the unit");
  return {lambda, x};
}

enum class SeriesKind { Exp, Log, Inverse, Power };

struct TermKey {
  int index;
  long num;  // exponent numerator over the common denominator
  bool operator==(const TermKey&) const = default;
};

struct TermKeyHash {
  size_t operator()(const TermKey& k) const {
    return std::hash<long>()(k.num * 1000003L + k.index);
  }
};

/// exp(x), log(1+x), 1/(1+x) or (1+x)^r for x of positive norm, truncated at norm `cap`.
///
/// With x0 inside the working interval, D = t d/dt + x0 * s d/ds is a derivation that
/// multiplies the term c t^e s^k by its weight e + k*x0, and every term of x has positive
/// weight. Each function f satisfies a first-order identity in D, so its coefficients
/// follow in order of increasing weight from those already known. Norms are
/// superadditive, so only terms of norm below the cap are ever needed.
AnnulusSeries small_series(const AnnulusSeries& x, const Rational& cap_in, SeriesKind kind,
                           const Rational& r = Rational(0)) {
  const Skeleton& sk = x.skeleton();
  auto nx = x.norm_lower_bound();
  if (nx && *nx <= 0) throw Error(ErrorKind::NotSmall, "series argument must have positive norm");
  const Rational cap = x.prec() ? std::min<Rational>(cap_in, *x.prec()) : cap_in;
  const Rational start = kind == SeriesKind::Log ? Rational(0) : Rational(1);
  const auto [xa, xb] = sk.working_interval();
  const Rational x0 = (xa + xb) / 2;

  struct Term {
    int index;
    long num;
    Rational coeff;
    Rational weight;
  };
  mpz_class den = 1;
  for (const auto& [i, c] : x.coeffs()) {
    for (const auto& [e, v] : c.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.get_den_mpz_t());
  }
  if (!den.fits_slong_p()) throw Error(ErrorKind::PrecisionExhausted, "exponent denominators too large");
  const long d = den.get_si();
  auto shift_of = [&](int k) -> Rational { return k >= 0 ? Rational(k * xa) : Rational(k * xb); };
  auto norm_of = [&](int k, long num) -> Rational { return canonical(Rational(num, d)) + shift_of(k); };
  auto weight_of = [&](int k, long num) -> Rational { return canonical(Rational(num, d)) + k * x0; };

  std::vector<Term> xs;
  for (const auto& [i, c] : x.coeffs()) {
    for (const auto& [e, v] : c.terms()) {
      Rational scaled_e = e * d;
      const long num = mpz_class(scaled_e.get_num()).get_si();
      if (norm_of(i, num) < cap) xs.push_back({i, num, v, weight_of(i, num)});
    }
  }
  if (xs.empty()) {
    return AnnulusSeries(sk, AnnulusSeries::Coeffs{{0, PuiseuxScalar(start)}}, std::min(x.lo(), 0),
                         std::max(x.hi(), 0), cap);
  }

  // Support: sums of x-terms of norm below the cap.
  const int wlo = std::min(x.lo(), 0);
  const int whi = std::max(x.hi(), 0);
  Rational limit = cap;
  std::unordered_map<TermKey, size_t, TermKeyHash> slot;
  std::vector<TermKey> support{{0, 0}};
  slot.emplace(TermKey{0, 0}, 0);
  constexpr size_t kMaxSupport = 4'000'000;
  for (size_t q = 0; q < support.size(); ++q) {
    const TermKey base = support[q];
    for (const Term& t : xs) {
      TermKey next{base.index + t.index, base.num + t.num};
      if (slot.count(next)) continue;
      const Rational nn = norm_of(next.index, next.num);
      if (nn >= limit) continue;
      if (next.index < wlo || next.index > whi) {
        limit = nn;  // outside the window: the remainder absorbs it
        continue;
      }
      slot.emplace(next, support.size());
      support.push_back(next);
      if (support.size() > kMaxSupport) throw Error(ErrorKind::PrecisionExhausted, "series support too large");
    }
  }
  std::vector<Rational> weight(support.size());
  for (size_t q = 0; q < support.size(); ++q) weight[q] = weight_of(support[q].index, support[q].num);
  std::vector<size_t> order(support.size());
  for (size_t q = 0; q < order.size(); ++q) order[q] = q;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return weight[a] < weight[b]; });

  std::unordered_map<TermKey, const Rational*, TermKeyHash> x_at;
  for (const Term& t : xs) x_at.emplace(TermKey{t.index, t.num}, &t.coeff);

  std::vector<Rational> value(support.size());
  value[0] = start;
  Rational acc, tmp;
  for (size_t q : order) {
    if (q == 0) continue;
    const TermKey tau = support[q];
    acc = 0;
    for (const Term& t : xs) {
      auto it = slot.find(TermKey{tau.index - t.index, tau.num - t.num});
      if (it == slot.end()) continue;
      const Rational& v = value[it->second];
      if (v == 0) continue;
      switch (kind) {
        case SeriesKind::Exp:
          tmp = t.weight * t.coeff;
          acc += tmp * v;
          break;
        case SeriesKind::Inverse:
          acc -= t.coeff * v;
          break;
        case SeriesKind::Log:
          tmp = t.coeff * v;
          acc -= tmp * weight[it->second];
          break;
        case SeriesKind::Power:
          tmp = r * t.weight - weight[it->second];
          tmp *= t.coeff;
          acc += tmp * v;
          break;
      }
    }
    if (kind == SeriesKind::Log) {
      auto xt = x_at.find(tau);
      if (xt != x_at.end()) acc += weight[q] * *xt->second;
    }
    if (kind != SeriesKind::Inverse) acc /= weight[q];
    value[q] = acc;
  }

  std::map<int, PuiseuxScalar::Terms> acc_terms;
  for (size_t q = 0; q < support.size(); ++q) {
    if (value[q] == 0) continue;
    acc_terms[support[q].index].emplace(canonical(Rational(support[q].num, d)), value[q]);
  }
  AnnulusSeries::Coeffs coeffs;
  for (auto& [k, terms] : acc_terms) coeffs.emplace(k, PuiseuxScalar(std::move(terms), std::nullopt));
  return AnnulusSeries(sk, std::move(coeffs), wlo, whi, limit);
}

/// 1/(1+x) for small x.
AnnulusSeries inv1p(const AnnulusSeries& x, const Rational& cap) {
  return small_series(x, cap, SeriesKind::Inverse);
}

/// log(1+x) for small x.
AnnulusSeries log1p(const AnnulusSeries& x, const Rational& cap) { return small_series(x, cap, SeriesKind::Log); }

}  // namespace

AnnulusSeries unit_inverse(const AnnulusSeries& u, const Rational& cap) {
  auto [lambda, x] = split_unit(u);
  return inv1p(x, cap).scaled(PuiseuxScalar(Rational(1) / lambda));
}

AnnulusSeries unit_log(const AnnulusSeries& u, const Rational& cap) {
  auto [lambda, x] = split_unit(u);
  if (lambda != 1) throw Error(ErrorKind::NotSmall, "log needs a unit with leading coefficient 1");
  return log1p(x, cap);
}

AnnulusSeries unit_root(const AnnulusSeries& u, int n, const Rational& cap) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "zeroth root");
  const int m = n < 0 ? -n : n;
  auto [lambda, x] = split_unit(u);
  auto root = exact_root(lambda, static_cast<unsigned>(m));
  if (!root) {
    throw Error(ErrorKind::NonSplitRoot,
                lambda.get_str() + " has no " + std::to_string(m) + "-th root in Q");
  }
  const Rational lead = n < 0 ? Rational(1 / *root) : *root;
  return small_series(x, cap, SeriesKind::Power, frac(1, n)).scaled(PuiseuxScalar(lead));
}

AnnulusSeries small_exp(const AnnulusSeries& x, const Rational& cap) {
  return small_series(x, cap, SeriesKind::Exp);
}

AnnulusSeries power(const AnnulusSeries& u, int e, const Rational& cap) {
  if (e < 0) return power(unit_inverse(u, cap), -e, cap);
  AnnulusSeries result = AnnulusSeries::constant(u.skeleton(), PuiseuxScalar(Rational(1)));
  AnnulusSeries base = u.with_prec(cap);
  while (e) {
    if (e & 1) result = (result * base).with_prec(cap);
    e >>= 1;
    if (e) base = (base * base).with_prec(cap);
  }
  return result;
}

CoordinateChange CoordinateChange::identity(const Skeleton& sk) {
  return {false, PuiseuxScalar(Rational(1)), AnnulusSeries::constant(sk, PuiseuxScalar(Rational(1)))};
}

int dominant_index(const AnnulusSeries& s) {
  const Skeleton& sk = s.skeleton();
  const Rational& len = sk.length;
  auto [wa, wb] = sk.working_interval();
  for (const auto& [n, an] : s.coeffs()) {
    const Rational vn = an.leading_exponent();
    bool ok = true;
    for (const auto& [i, ai] : s.coeffs()) {
      if (i == n) continue;
      const Rational d0 = ai.leading_exponent() - vn;
      const Rational dl = d0 + (i - n) * len;
      if (sk.tail_closed ? d0 <= 0 : d0 < 0) { ok = false; break; }
      if (sk.head_closed ? dl <= 0 : dl < 0) { ok = false; break; }
    }
    if (!ok) continue;
    if (s.prec()) {
      Rational top = std::max<Rational>(vn + n * wa, vn + n * wb);
      if (top >= *s.prec()) {
        throw Error(ErrorKind::NoDominantTerm,
                    "index " + std::to_string(n) + " cannot be certified against the truncated remainder");
      }
    }
    return n;
  }
  throw Error(ErrorKind::NoDominantTerm, "no single term dominates on the whole skeleton");
}

PuiseuxScalar residue(const AnnulusForm& w) { return w.series.coeff(0); }

AnnulusForm pullback(const AnnulusForm& w, const CoordinateChange& phi, const Rational& rel_prec) {
  const Skeleton target = phi.reverses ? w.series.skeleton().reversed() : w.series.skeleton();
  if (!(phi.unit.skeleton() == target)) {
    throw Error(ErrorKind::InvalidInput, "coordinate change lives on a different annulus");
  }
  if (phi.reverses) {
    auto v = phi.constant.val();
    if (!v.finite() || v.value != target.length) {
      throw Error(ErrorKind::InvalidInput, "orientation reversal needs a constant of valuation L");
    }
  }
  auto base_norm = w.series.norm_lower_bound();
  if (!base_norm) return AnnulusForm{AnnulusSeries(target, {}, w.series.prec())};
  // Relative precision available for units; the form keeps its own bound.
  Rational rel = rel_prec;
  if (w.series.prec()) rel = std::min<Rational>(rel, *w.series.prec() - *base_norm);
  if (rel <= 0) throw Error(ErrorKind::WindowTooSmall, "no known terms survive the pullback");
  const Rational form_cap = *base_norm + rel;

  const AnnulusSeries& u = phi.unit;
  AnnulusSeries u_inv = unit_inverse(u, rel);
  AnnulusSeries dlog = (u.theta() * u_inv).with_prec(rel);
  dlog = dlog + AnnulusSeries::constant(target, PuiseuxScalar(Rational(phi.reverses ? -1 : 1)));

  std::map<int, AnnulusSeries> powers;
  powers.emplace(0, AnnulusSeries::constant(target, PuiseuxScalar(Rational(1))));
  auto unit_power = [&](int j) -> const AnnulusSeries& {
    auto it = powers.find(j);
    if (it != powers.end()) return it->second;
    const int step = j > 0 ? 1 : -1;
    int k = step;
    while (powers.count(j) == 0) {
      if (powers.count(k) == 0) {
        powers.emplace(k, (powers.at(k - step) * (step > 0 ? u : u_inv)).with_prec(rel));
      }
      k += step;
    }
    return powers.at(j);
  };

  AnnulusSeries total(target, {}, form_cap);
  for (const auto& [j, b] : w.series.coeffs()) {
    PuiseuxScalar scalar = b;
    int s_index = j;
    if (phi.reverses) {
      scalar = b * pow(phi.constant, j, rel + 1);
      s_index = -j;
    }
    total = total + unit_power(j).scaled(scalar).shifted(s_index).with_prec(form_cap);
  }
  AnnulusSeries result = (total * dlog).with_prec(form_cap);
  result = result.with_prec(w.series.prec());
  return AnnulusForm{result};
}

int level_slope(const AnnulusForm& w) { return dominant_index(w.series); }

bool is_good(const AnnulusForm& w) {
  const auto& c = w.series.coeffs();
  if (c.empty()) return false;
  int other = 0;
  int count = 0;
  for (const auto& [i, a] : c) {
    if (i != 0) {
      other = i;
      ++count;
    }
  }
  if (count == 0) return true;
  if (count > 1) return false;
  try {
    return dominant_index(w.series) == other;
  } catch (const Error&) {
    return false;
  }
}

ExtRational epsilon_gap(const AnnulusForm& w) {
  const int n = dominant_index(w.series);
  const auto& c = w.series.coeffs();
  const Rational dom = w.series.term_norm(c.at(n), n);
  ExtRational rest;
  for (const auto& [i, a] : c) {
    if (i == 0 || i == n) continue;
    rest = ext_min(rest, w.series.term_norm(a, i));
  }
  if (!rest) return std::nullopt;
  return Rational(*rest - dom);
}

AnnulusForm binomial_form(const Skeleton& sk, int n, const PuiseuxScalar& c_n, const PuiseuxScalar& c_0) {
  AnnulusSeries::Coeffs coeffs;
  if (!c_0.is_exact_zero()) coeffs.emplace(0, c_0);
  if (n != 0 && !c_n.is_exact_zero()) coeffs.emplace(n, c_n);
  return AnnulusForm{AnnulusSeries(sk, std::move(coeffs))};
}

namespace {

ExtRational residual_gap(const AnnulusForm& w, const AnnulusForm& binomial, const CoordinateChange& phi,
                         const Rational& dom, const Rational& form_cap) {
  AnnulusSeries r = (w.series - pullback(binomial, phi, form_cap - dom).series).with_prec(form_cap);
  auto nr = r.norm();
  if (!nr) return std::nullopt;
  return Rational(*nr - dom);
}

}  // namespace

GoodCoordinate good_coordinate(const AnnulusForm& w, const Rational& rel_prec) {
  const AnnulusSeries& s = w.series;
  const Skeleton& sk = s.skeleton();
  const int n = dominant_index(s);
  const auto& c = s.coeffs();
  const PuiseuxScalar a_n = c.at(n);
  const PuiseuxScalar a_0 = c.count(0) ? c.at(0) : PuiseuxScalar::zero();

  GoodCoordinate out;
  out.n = n;
  out.c_0 = a_0;
  out.c_n = n == 0 ? PuiseuxScalar::zero() : a_n;
  out.change = CoordinateChange::identity(sk);
  out.gaps.push_back(n == 0 ? std::nullopt : epsilon_gap(w));
  if (is_good(w)) return out;

  const Rational dom = s.term_norm(a_n, n);
  // Dividing by a_n s^n costs the variation of |a_n s^n| over the working interval.
  auto [xa, xb] = sk.working_interval();
  const Rational dom_max = dom + std::abs(n) * (xb - xa);
  Rational form_cap = dom_max + rel_prec;
  if (s.prec()) form_cap = std::min<Rational>(form_cap, *s.prec());
  // Multiplying back by a_n s^n costs the same variation again.
  const Rational unit_cap = form_cap - dom;
  if (unit_cap <= 0) throw Error(ErrorKind::PrecisionExhausted, "form precision does not cover the dominant term");
  const AnnulusForm target = binomial_form(sk, n, out.c_n, a_0);

  if (n == 0) {
    const PuiseuxScalar inv_a0 = inv(a_0, rel_prec);
    AnnulusSeries::Coeffs arg;
    for (const auto& [i, a] : c) {
      if (i != 0) arg.emplace(i, (a * inv_a0).scaled(frac(1, i)));
    }
    AnnulusSeries u = small_exp(AnnulusSeries(sk, std::move(arg), std::min(s.lo(), 0) - kWorkingPad, std::max(s.hi(), 0) + kWorkingPad, unit_cap), unit_cap);
    out.change.unit = u;
    out.iterations = 1;
    auto gap = residual_gap(w, target, out.change, dom, form_cap);
    out.gaps.push_back(gap);
    if (gap) throw Error(ErrorKind::NonConvergent, "exponential solution left a residual");
    return out;
  }

  AnnulusSeries::Coeffs primitive;
  for (const auto& [i, a] : c) {
    if (i != 0) primitive.emplace(i, a.scaled(frac(1, i)));
  }
  const PuiseuxScalar scale = inv(a_n, rel_prec).scaled(Rational(n));
  const AnnulusSeries base =
      AnnulusSeries(sk, std::move(primitive), s.lo() - kWorkingPad, s.hi() + kWorkingPad, form_cap + (dom_max - dom)).scaled(scale).shifted(-n).with_prec(unit_cap);
  const PuiseuxScalar log_scale = a_0 * scale;

  // Track V = U^n and L = log U: the pulled-back binomial is (a_n s^n V + a_0)(1 + theta L),
  // so no inverse or root is needed until the final unit.
  const PuiseuxScalar inv_n(frac(1, n));
  const AnnulusSeries one = AnnulusSeries::constant(sk, PuiseuxScalar(Rational(1)));
  AnnulusSeries log_u(sk, {});
  // log V and 1/V are updated incrementally: V_j = V_{j-1}(1 + y) with y small.
  AnnulusSeries v = base;
  AnnulusSeries log_v = unit_log(v, unit_cap);
  AnnulusSeries inv_v = a_0.is_exact_zero() ? one : unit_inverse(v, unit_cap);
  ExtRational rho;
  if (!a_0.is_exact_zero()) rho = Rational(a_0.leading_exponent() - dom_max);
  for (int j = 1; j <= kMaxGoodCoordinateIterations; ++j) {
    if (j > 1) {
      AnnulusSeries next = (base - log_u.scaled(log_scale).shifted(-n)).with_prec(unit_cap);
      AnnulusSeries y = ((next - v) * inv_v).with_prec(unit_cap);
      v = next;
      if (!y.is_zero_to_precision()) {
        log_v = (log_v + log1p(y, unit_cap)).with_prec(unit_cap);
        inv_v = (inv_v * inv1p(y, unit_cap)).with_prec(unit_cap);
      }
    }
    log_u = log_v.scaled(inv_n);
    AnnulusSeries lead = v.scaled(a_n).shifted(n) + AnnulusSeries::constant(sk, a_0);
    AnnulusSeries r = (s - (lead * (one + log_u.theta())).with_prec(form_cap)).with_prec(form_cap);
    auto nr = r.norm();
    ExtRational gap;
    if (nr) gap = Rational(*nr - dom);
    out.gaps.push_back(gap);
    out.iterations = j;
    if (!gap) {
      out.change.unit = small_exp(log_u, unit_cap);
      return out;
    }
    // Each step gains at least rho on the error of log U; gaps need not be monotone.
    if (rho && *gap < *out.gaps.front() - (dom_max - dom) + j * *rho) {
      throw Error(ErrorKind::NonConvergent, "epsilon gap " + gap->get_str() + " at iteration " +
                                                std::to_string(j) + " is below the contraction bound");
    }
  }
  throw Error(ErrorKind::NonConvergent, "iteration cap reached");
}

}  // namespace tropform
