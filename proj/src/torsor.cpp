#include "tropform/torsor.hpp"

#include "tropform/error.hpp"

namespace tropform {

namespace {

using S = FormalSeries;

S zeros(int order) { return S(order + 1, Rational(0)); }

S mul(const S& a, const S& b, int order) {
  S out = zeros(order);
  for (int i = 0; i < static_cast<int>(a.size()) && i <= order; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < static_cast<int>(b.size()) && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

S add(S a, const S& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

S scaled(S a, const Rational& q) {
  for (auto& x : a) x *= q;
  return a;
}

/// s^k * a
S shift(const S& a, int k, int order) {
  S out = zeros(order);
  for (int i = 0; i + k <= order && i < static_cast<int>(a.size()); ++i) out[i + k] = a[i];
  return out;
}

S power(const S& a, int e, int order) {
  S out = zeros(order);
  out[0] = 1;
  for (int i = 0; i < e; ++i) out = mul(out, a, order);
  return out;
}

S derivative(const S& a) {
  S out(a.size() > 1 ? a.size() - 1 : 1, Rational(0));
  for (size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * static_cast<long>(i);
  return out;
}

/// log(1 + x) with x(0) = 0.
S log1p(const S& x, int order) {
  S out = zeros(order), p = zeros(order);
  p[0] = 1;
  for (int k = 1; k <= order; ++k) {
    p = mul(p, x, order);
    out = add(out, scaled(p, frac(k % 2 ? 1 : -1, k)));
  }
  return out;
}

/// (1 + x)^alpha with x(0) = 0.
S binomial(const S& x, const Rational& alpha, int order) {
  S out = zeros(order), p = zeros(order);
  p[0] = 1;
  out[0] = 1;
  Rational c = 1;
  for (int k = 1; k <= order; ++k) {
    c = canonical(c * (alpha - (k - 1)) / k);
    p = mul(p, x, order);
    out = add(out, scaled(p, c));
  }
  return out;
}

int l_of(const FormalForm& w) { return -w.n; }

/// LHS - RHS of the defining identity through degree `order`:
/// n = -l < 0: (c + r t^l) t' - u^{l+1}(c_n + r s^l), u = t/s, c = c_n a_1^l;
/// n >= 0:    (c t^n + r) t' s - (c_n s^n + r) t,      c = c_n a_1^{-n}.
S defect(const FormalForm& w, const S& t, int order) {
  const Rational c = transport(w, t).c_n;
  if (w.n < 0) {
    const int l = -w.n;
    S u(t.begin() + 1, t.end());
    S lhs = mul(add(S{c}, scaled(power(t, l, order), w.r)), derivative(t), order);
    S rhs_factor = add(S{w.c_n}, shift(S{w.r}, l, order));
    return add(lhs, scaled(mul(power(u, l + 1, order), rhs_factor, order), -1));
  }
  S lhs = mul(add(scaled(power(t, w.n, order), c), S{w.r}), shift(derivative(t), 1, order), order);
  S rhs = mul(add(shift(S{w.c_n}, w.n, order), S{w.r}), t, order);
  return add(lhs, scaled(rhs, -1));
}

void need_coordinate(const S& t, const char* what) {
  if (t.size() < 2 || t[0] != 0 || t[1] == 0) throw Error(ErrorKind::InvalidInput, std::string(what) + " is not a coordinate");
}

}  // namespace

GnElement gn_compose(const GnElement& a, const GnElement& b, int l) {
  return {a.lambda * b.lambda, canonical(a.mu + rational_pow(a.lambda, l) * b.mu)};
}

GnElement gn_inverse(const GnElement& a, int l) {
  return {canonical(1 / a.lambda), canonical(-rational_pow(a.lambda, -l) * a.mu)};
}

FormalForm transport(const FormalForm& w, const FormalSeries& t) {
  need_coordinate(t, "t");
  if (w.n == 0) return w;
  return {w.n, canonical(w.c_n * rational_pow(t[1], -w.n)), w.r};
}

FormalSeries act(const GnElement& g, const FormalForm& w, int order) {
  if (g.lambda == 0) throw Error(ErrorKind::InvalidInput, "lambda must be nonzero");
  if (w.c_n == 0 && w.n != 0) throw Error(ErrorKind::ZeroForm, "leading coefficient is zero");
  const int l = l_of(w);
  if (order < 1) throw Error(ErrorKind::TruncationTooSmall, "order must be positive");
  S t = zeros(order);
  t[1] = g.lambda;
  if (w.n >= 0) return t;
  if (order <= l + 1) {
    throw Error(ErrorKind::TruncationTooSmall, "order " + std::to_string(order) + " does not exceed l + 1 = " +
                                                   std::to_string(l + 1));
  }
  t[l + 1] = g.lambda * g.mu;
  const Rational c = canonical(w.c_n * rational_pow(g.lambda, l));
  // a_k enters the s^{k-1} coefficient only through c k a_k - (l+1) c a_k
  for (int k = l + 2; k <= order; ++k) {
    const Rational rk = defect(w, t, k - 1)[k - 1];
    t[k] = canonical(-rk / (c * (k - l - 1)));
  }
  return t;
}

bool is_good_formal(const FormalForm& w, const FormalSeries& t, int order) {
  need_coordinate(t, "t");
  const int top = w.n < 0 ? order - 1 : order;
  S tt = t;
  tt.resize(order + 1, Rational(0));
  const S d = defect(w, tt, top);
  for (int i = 0; i <= top; ++i) {
    if (d[i] != 0) return false;
  }
  return true;
}

FormalSeries compose(const FormalSeries& outer, const FormalSeries& inner, int order) {
  if (!inner.empty() && inner[0] != 0) throw Error(ErrorKind::InvalidInput, "inner series has a constant term");
  S out = zeros(order), p = zeros(order);
  p[0] = 1;
  for (int i = 0; i < static_cast<int>(outer.size()) && i <= order; ++i) {
    if (i > 0) p = mul(p, inner, order);
    if (outer[i] != 0) out = add(out, scaled(p, outer[i]));
  }
  return out;
}

FormalSeries reversion(const FormalSeries& t, int order) {
  need_coordinate(t, "t");
  S g = zeros(order);
  g[1] = canonical(1 / t[1]);
  // raising g_k by d raises the s^k coefficient of t(g) by t_1 d
  for (int k = 2; k <= order; ++k) g[k] = canonical(-compose(t, g, k)[k] / t[1]);
  return g;
}

bool verify_group_law(const FormalForm& w, const GnElement& a, const GnElement& b, int order) {
  const int l = l_of(w);
  const S t1 = act(a, w, order);
  const S t2 = act(b, transport(w, t1), order);
  const S both = compose(t2, t1, order);
  return both == act(gn_compose(a, b, l), w, order) && is_good_formal(w, both, order);
}

FormalSeries good_formal_by_integration(const FormalForm& w, const Rational& lambda, const Rational& k, int order) {
  if (w.n >= 0) throw Error(ErrorKind::InvalidInput, "integration construction needs n < 0");
  if (w.c_n == 0 || lambda == 0) throw Error(ErrorKind::InvalidInput, "zero leading coefficient or lambda");
  const int l = -w.n;
  S u = zeros(order);
  u[0] = 1;
  // each pass fixes l more coefficients of U
  for (int pass = 0; pass <= order / l + 1; ++pass) {
    S lg = log1p(add(u, S{Rational(-1)}), order);
    S inner = add(S{k}, scaled(lg, -w.r));
    S x = scaled(shift(inner, l, order), canonical(Rational(-l) / w.c_n));
    u = binomial(x, frac(-1, l), order);
  }
  return scaled(shift(u, 1, order), lambda);
}

std::optional<GnElement> transitivity(const FormalForm& w, const FormalSeries& t1, const FormalSeries& t2, int order) {
  need_coordinate(t1, "t1");
  need_coordinate(t2, "t2");
  const int l = l_of(w);
  const S v = compose(t2, reversion(t1, order), order);
  GnElement g{v[1], 0};
  if (w.n < 0) {
    if (order <= l + 1) throw Error(ErrorKind::TruncationTooSmall, "order too small to read the l+1 jet");
    g.mu = canonical(v[l + 1] / v[1]);
  }
  if (act(g, transport(w, t1), order) != v) return std::nullopt;
  return g;
}

int torsor_jet_length(int n, int fallback) { return n < 0 ? -n : fallback; }

GradedCoordinate coordinate_reduction(const std::map<int, PuiseuxScalar>& t, int jet_len) {
  auto it1 = t.find(1);
  if (it1 == t.end() || !it1->second.val().finite()) throw Error(ErrorKind::NotDominant, "a_1 is zero or unknown");
  const PuiseuxScalar& a1 = it1->second;
  const Rational v1 = a1.val().value;
  for (const auto& [i, a] : t) {
    if (i == 1 || i > jet_len) continue;
    const ExtRational v = a.val_lower_bound();
    if (i < 1 && v && *v <= v1) {
      throw Error(ErrorKind::NotDominant, "a_" + std::to_string(i) + " is not smaller than a_1");
    }
    if (i > 1 && v && *v < v1) throw Error(ErrorKind::NotDominant, "a_" + std::to_string(i) + " exceeds a_1");
  }
  GradedCoordinate out{v1, a1.leading_coeff(), {Rational(1)}};
  for (int i = 2; i <= jet_len; ++i) {
    auto it = t.find(i);
    out.jet.push_back(it == t.end() ? Rational(0) : canonical(it->second.coeff(v1) / out.lead));
  }
  return out;
}

GradedCoordinate scale(const GradedCoordinate& c, const Rational& grade, const Rational& coeff) {
  if (coeff == 0) throw Error(ErrorKind::InvalidInput, "scaling by zero");
  return {canonical(c.grade + grade), canonical(c.lead * coeff), c.jet};
}

namespace {

struct EdgeSides {
  const SideCoordinate* x;
  const SideCoordinate* y;
  Radii rx, ry;
  PuiseuxScalar constant;
};

EdgeSides sides_of(const GluedModel& m, const std::string& id) {
  const Edge& e = m.complex.edge(id);
  if (e.is_leg()) throw Error(ErrorKind::InvalidInput, id + " is a leg");
  EdgeSides s;
  s.rx = m.pieces.at(e.tail).annuli.at(id);
  s.ry = m.pieces.at(e.head).annuli.at(*e.opposite);
  if (auto it = m.gluings.find(id); it != m.gluings.end()) {
    s.x = &it->second.tail;
    s.y = &it->second.head;
    s.constant = it->second.constant;
  } else {
    const EdgeGluing& g = m.gluings.at(*e.opposite);
    s.x = &g.head;
    s.y = &g.tail;
    s.constant = g.constant;
  }
  return s;
}

/// T = t^inner * s * u(s) with s = w t^{-inner}, as a series in w.
std::map<int, PuiseuxScalar> chart_series(const SideCoordinate& side, const Radii& r) {
  if (side.change.reverses) throw Error(ErrorKind::InvalidInput, "side coordinate reverses orientation");
  const AnnulusSeries& u = side.change.unit;
  const Rational len = r.outer - r.inner;
  std::map<int, PuiseuxScalar> out;
  for (int k = u.lo(); k <= u.hi(); ++k) {
    auto it = u.coeffs().find(k);
    PuiseuxScalar c = it == u.coeffs().end() ? PuiseuxScalar() : it->second.exact_part();
    c = c.shifted(-k * r.inner);
    if (const ExtRational& p = u.prec()) {
      // norm bound at the end of the skeleton where k s^k is largest
      c = c.truncated(canonical(*p - k * r.inner - (k < 0 ? k * len : Rational(0))));
    }
    out[k + 1] = c;
  }
  return out;
}

}  // namespace

GradedCoordinate edge_coordinate(const GluedModel& m, const std::string& e) {
  const EdgeSides s = sides_of(m, e);
  return coordinate_reduction(chart_series(*s.x, s.rx), torsor_jet_length(s.x->n));
}

GradedCoordinate phi_e(const GluedModel& m, const std::string& e, const GradedCoordinate& tau) {
  const EdgeSides s = sides_of(m, e);
  const int jet = torsor_jet_length(s.x->n);
  const GradedCoordinate base = coordinate_reduction(chart_series(*s.x, s.rx), jet);
  const GradedCoordinate far = coordinate_reduction(chart_series(*s.y, s.ry), torsor_jet_length(s.y->n));
  if (tau.jet != base.jet || tau.lead == 0) {
    throw Error(ErrorKind::InvalidInput, "coordinate is not in the torsor of " + e);
  }
  // tau = lambda base; the lift lambda T_x maps to lambda^{-1} C^{-1} T_y
  const Rational lg = tau.grade - base.grade;
  const Rational lc = canonical(tau.lead / base.lead);
  const Valuation vc = s.constant.val();
  if (!vc.finite()) throw Error(ErrorKind::PrecisionExhausted, "gluing constant of " + e + " is unknown");
  return scale(far, canonical(-lg - vc.value), canonical(1 / (lc * s.constant.leading_coeff())));
}

}  // namespace tropform
