#ifndef SKEWPROD_CLASSIFY_HPP
#define SKEWPROD_CLASSIFY_HPP

// Specialness of one-variable polynomials and of regular polynomial skew
// products, with witness conjugations and the converse fiber check.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skewprod/dickson.hpp"
#include "skewprod/skewdyn.hpp"

namespace skewprod {

enum class FormKind { power, chebyshev_plus, chebyshev_minus, none };

inline const char* form_kind_name(FormKind k) {
  switch (k) {
    case FormKind::power: return "power";
    case FormKind::chebyshev_plus: return "chebyshev_plus";
    case FormKind::chebyshev_minus: return "chebyshev_minus";
    case FormKind::none: return "none";
  }
  return "none";
}

/// x^d, T_d or -T_d in the given variable.
inline UniPoly form_poly(FormKind k, int d, char var) {
  switch (k) {
    case FormKind::power: return UniPoly::monomial(Scalar(1), d, var);
    case FormKind::chebyshev_plus: return chebyshev(d, var);
    case FormKind::chebyshev_minus: return chebyshev(d, var) * Scalar(-1);
    case FormKind::none: break;
  }
  throw Error("form_poly: no normal form for kind none");
}

struct OneVarSpecialForm {
  FormKind kind = FormKind::none;
  AffineMap1 conjugation;  // conjugate_affine(P, conjugation) is the normal form
  Scalar zeta;             // Dickson parameter of the monic centered form (chebyshev kinds)
  UniPoly normalized;      // monic centered conjugate of P
  double residual = 0.0;
  bool promoted = false;   // an exact input needed an irrational root
};

namespace detail {

/// Candidates for x^k = a, exact ones first; index 0 is the principal choice.
inline std::vector<Scalar> ordered_roots(const Scalar& a, unsigned k, const ToleranceContext& ctx) {
  std::vector<Scalar> r = nth_roots(a, k, ctx);
  std::stable_partition(r.begin(), r.end(), [](const Scalar& s) { return s.is_exact(); });
  return r;
}

}  // namespace detail

/// Affine conjugacy to x^d or +-T_d. `slope_choice` selects among the d - 1
/// monicizing slopes (0 = principal).
inline OneVarSpecialForm classify_one_var(const UniPoly& P, const ToleranceContext& ctx, unsigned slope_choice = 0) {
  const int d = P.degree();
  if (d < 2) throw DegreeError("classify_one_var: degree must be at least 2");
  const char v = P.var();
  OneVarSpecialForm out;

  // slope s with s^{d-1} = 1 / lead kills the leading coefficient
  const auto slopes = detail::ordered_roots(Scalar(1) / P.lead(), static_cast<unsigned>(d - 1), ctx);
  const Scalar s = slopes.at(slope_choice % slopes.size());
  out.promoted = P.is_exact() && !s.is_exact();
  const UniPoly monic = conjugate_affine(P, AffineMap1::scale(s));
  const Scalar beta = -monic.coeff(d - 1) / (Scalar(d) * monic.lead());
  AffineMap1 L = compose(AffineMap1::scale(s), AffineMap1::shift(beta));
  UniPoly N = conjugate_affine(P, L);
  if (!N.is_exact()) N = chop(N, ctx);
  out.normalized = N;

  const unsigned bits = std::max(ctx.precision_bits, N.precision());
  const UniPoly xd = UniPoly::monomial(Scalar(1), d, v);
  if (approx_equal(N, xd, ctx)) {
    out.kind = FormKind::power;
    out.conjugation = L;
    out.zeta = Scalar(0);
    out.residual = max_deviation(N, xd, bits);
    return out;
  }
  const auto cheb = pm_chebyshev_normal_form(N, ctx);
  if (!cheb) {
    out.conjugation = L;
    return out;
  }
  out.kind = cheb->sigma == 1 ? FormKind::chebyshev_plus : FormKind::chebyshev_minus;
  out.conjugation = compose(L, AffineMap1::scale(cheb->lambda));
  out.zeta = cheb->zeta;
  out.promoted = out.promoted || (P.is_exact() && !cheb->lambda.is_exact());
  out.residual = max_deviation(conjugate_affine(P, out.conjugation), form_poly(out.kind, d, v), bits);
  return out;
}

inline bool is_special_one_var(const UniPoly& P, const ToleranceContext& ctx) {
  return classify_one_var(P, ctx).kind != FormKind::none;
}

/// T(z, w) = (alpha z + beta, gamma w + delta z + eps).
struct AffineTriangular {
  AffineMap1 a;
  Scalar gamma = Scalar(1);
  Scalar delta = Scalar(0);
  Scalar eps = Scalar(0);

  static AffineTriangular identity() { return {}; }
  static AffineTriangular base(const AffineMap1& m) { return {m, Scalar(1), Scalar(0), Scalar(0)}; }
  static AffineTriangular fiber_scale(const Scalar& g) { return {AffineMap1::identity(), g, Scalar(0), Scalar(0)}; }
  static AffineTriangular fiber_shift(const Scalar& d, const Scalar& e) { return {AffineMap1::identity(), Scalar(1), d, e}; }

  void validate() const {
    if (a.slope.is_zero() || gamma.is_zero()) throw Error("affine triangular map is not invertible");
  }

  PlaneMap as_map() const {
    const BiPoly z = BiPoly::base_var('z', 'w');
    const BiPoly w = BiPoly::fiber_var('z', 'w');
    return {z * a.slope + BiPoly::constant(a.intercept), w * gamma + z * delta + BiPoly::constant(eps)};
  }

  AffineTriangular inverse() const {
    validate();
    const AffineMap1 ai = a.inverse();
    const Scalar gi = Scalar(1) / gamma;
    return {ai, gi, -delta * ai.slope * gi, -(delta * ai.intercept + eps) * gi};
  }

  bool is_exact() const { return a.is_exact() && gamma.is_exact() && delta.is_exact() && eps.is_exact(); }
};

/// S o T.
inline AffineTriangular compose(const AffineTriangular& S, const AffineTriangular& T) {
  return {compose(S.a, T.a), S.gamma * T.gamma, S.gamma * T.delta + S.delta * T.a.slope,
          S.gamma * T.eps + S.delta * T.a.intercept + S.eps};
}

/// T^{-1} o f o T.
inline SkewProduct conjugate(const SkewProduct& f, const AffineTriangular& T) {
  T.validate();
  const UniPoly pt = conjugate_affine(f.p(), T.a);
  const BiPoly X = BiPoly::from_base(T.a.as_poly('z'), 'z', 'w');
  const BiPoly Y = BiPoly::fiber_var('z', 'w') * T.gamma + BiPoly::from_base(UniPoly({T.eps, T.delta}, 'z'), 'z', 'w');
  BiPoly qt = substitute(f.q(), X, Y) - BiPoly::from_base(pt * T.delta + UniPoly::constant(T.eps, 'z'), 'z', 'w');
  qt *= Scalar(1) / T.gamma;
  return SkewProduct(pt, qt);
}

inline std::string to_string(const AffineTriangular& T, int digits = 0) { return to_string(T.as_map(), digits); }

enum class SkewKind { dagger1, dagger2, not_special };

inline const char* skew_kind_name(SkewKind k) {
  switch (k) {
    case SkewKind::dagger1: return "dagger1";
    case SkewKind::dagger2: return "dagger2";
    case SkewKind::not_special: return "not_special";
  }
  return "not_special";
}

struct DiagnosticEntry {
  std::string step;
  std::string status;  // ok | fail | info | ambiguous
  std::string detail;
};

struct Classification {
  bool regular = false;
  OneVarSpecialForm base_form;
  UniPoly phi{'z'};
  SkewKind kind = SkewKind::not_special;
  FormKind p_kind = FormKind::none;  // dagger1
  FormKind q_kind = FormKind::none;  // dagger1
  Scalar zeta;                       // dagger2
  int m = 0;                         // dagger2
  std::vector<AffineTriangular> conjugation_chain;  // applied in order: f <- T^{-1} f T
  std::optional<SkewProduct> centered;  // after steps (a)-(c): q = D_d(u, phi(z))
  std::optional<SkewProduct> normal_form;
  double residual = 0.0;
  std::string failed_step;
  bool ambiguous = false;
  std::vector<DiagnosticEntry> diagnostics;

  bool special() const { return kind != SkewKind::not_special; }

  /// The composite T_1 o T_2 o ... with f_normal = T^{-1} o f o T.
  AffineTriangular witness() const {
    AffineTriangular acc = AffineTriangular::identity();
    for (const auto& t : conjugation_chain) acc = compose(acc, t);
    return acc;
  }
};

struct ClassifyOptions {
  bool exhaustive = false;
  unsigned slope_choice = 0;  // base monicization root
  unsigned gamma_choice = 0;  // fiber monicization root
};

/// The model map named by a classification.
inline SkewProduct named_normal_form(const Classification& c, int d) {
  const UniPoly zd = UniPoly::monomial(Scalar(1), d, 'z');
  if (c.kind == SkewKind::dagger1) {
    return SkewProduct(form_poly(c.p_kind, d, 'z'), BiPoly::from_fiber(form_poly(c.q_kind, d, 'w'), 'z', 'w'));
  }
  if (c.kind == SkewKind::dagger2) {
    return SkewProduct(zd, dickson_at(d, UniPoly::monomial(c.zeta, c.m, 'z')).poly);
  }
  throw Error("named_normal_form: map is not special");
}

namespace detail {

inline double dev(const BiPoly& a, const BiPoly& b, const ToleranceContext& ctx) {
  return max_deviation(a, b, std::max({ctx.precision_bits, a.precision(), b.precision()}));
}

inline double dev(const UniPoly& a, const UniPoly& b, const ToleranceContext& ctx) {
  return max_deviation(a, b, std::max({ctx.precision_bits, a.precision(), b.precision()}));
}

/// Equality with a borderline band: deviations between eps_eq and sqrt(eps_eq) are
/// treated as unequal and flagged.
inline bool decide(double deviation, bool equal, const ToleranceContext& ctx, Classification& c,
                   const std::string& step) {
  if (!equal && deviation < std::sqrt(ctx.eps_eq)) {
    c.ambiguous = true;
    c.diagnostics.push_back({step, "ambiguous", "deviation " + std::to_string(deviation) + " near tolerance"});
  }
  return equal;
}

inline Classification& fail(Classification& c, const std::string& step, const std::string& why) {
  c.kind = SkewKind::not_special;
  c.failed_step = step;
  c.diagnostics.push_back({step, "fail", why});
  return c;
}

inline FormKind kind_from_sigma(int sigma) { return sigma == 1 ? FormKind::chebyshev_plus : FormKind::chebyshev_minus; }

inline SkewProduct chop_map(const SkewProduct& f, const ToleranceContext& ctx) {
  if (f.is_exact()) return f;
  return SkewProduct(chop(f.p(), ctx), chop(f.q(), ctx));
}

inline std::vector<std::string> zeta_orbit(const Scalar& zeta, int m, int d, const ToleranceContext& ctx) {
  std::vector<std::string> out;
  const Backend be = zeta.is_exact() && (d - 1 == 1 || d - 1 == 2 || d - 1 == 4) ? Backend::exact : Backend::floating;
  const auto mu = roots_of_unity(static_cast<unsigned>(d - 1), ctx, be);
  std::set<std::string> seen;
  for (const auto& eta : mu) {
    for (const auto& lam : mu) {
      const Scalar z = zeta * pow(eta, static_cast<unsigned long>(m)) / (lam * lam);
      const std::string s = to_string(z.is_exact() ? z : z.chop(ctx.eq_threshold()), 20);
      if (seen.insert(s).second) out.push_back(s);
    }
  }
  return out;
}

inline Classification classify_once(const SkewProduct& f, const ToleranceContext& ctx, const ClassifyOptions& opt) {
  Classification c;
  const int d = f.degree();
  const RegularityReport reg = regularity_report(f);
  c.regular = reg.regular;
  if (!reg.agree) c.diagnostics.push_back({"regularity", "ambiguous", "degree and resultant criteria disagree"});
  if (!c.regular) return fail(c, "regularity", "total degree of q is " + std::to_string(f.q().total_degree()));
  c.diagnostics.push_back({"regularity", "ok", "total degree " + std::to_string(d)});

  // (a) base normalization
  c.base_form = classify_one_var(f.p(), ctx, opt.slope_choice);
  if (c.base_form.promoted) c.diagnostics.push_back({"base_normalization", "info", "exact input needed an irrational root; continuing in floating point"});
  if (c.base_form.kind == FormKind::none) return fail(c, "base_normalization", "p is not affinely conjugate to z^d or +-T_d");
  c.diagnostics.push_back({"base_normalization", "ok", form_kind_name(c.base_form.kind)});
  const AffineTriangular Ta = AffineTriangular::base(c.base_form.conjugation);
  SkewProduct g = chop_map(conjugate(f, Ta), ctx);
  c.conjugation_chain.push_back(Ta);

  // (b) fiber monicization
  const Scalar lead_w = g.q().coeff(0, d);
  const auto gammas = ordered_roots(Scalar(1) / lead_w, static_cast<unsigned>(d - 1), ctx);
  const Scalar gamma = gammas.at(opt.gamma_choice % gammas.size());
  if (g.is_exact() && !gamma.is_exact()) c.diagnostics.push_back({"fiber_monicization", "info", "irrational gamma; continuing in floating point"});
  const AffineTriangular Tb = AffineTriangular::fiber_scale(gamma);
  g = chop_map(conjugate(g, Tb), ctx);
  c.conjugation_chain.push_back(Tb);
  c.diagnostics.push_back({"fiber_monicization", "ok", "gamma = " + to_string(gamma, 20)});

  // (c) centering shift c(z) = -(1/d) [w^{d-1}] q
  const UniPoly cz = g.q().coeff_fiber(d - 1) * (Scalar(-1) / Scalar(d));
  if (cz.degree() > 1) return fail(c, "centering", "deg c = " + std::to_string(cz.degree()) + " > 1");
  const AffineTriangular Tc = AffineTriangular::fiber_shift(cz.coeff(1), cz.coeff(0));
  g = chop_map(conjugate(g, Tc), ctx);
  c.conjugation_chain.push_back(Tc);
  c.centered = g;
  c.diagnostics.push_back({"centering", "ok", "c(z) = " + to_string(cz, 20)});

  // (d) phi = -(1/d) [u^{d-2}] q~
  c.phi = g.q().coeff_fiber(d - 2) * (Scalar(-1) / Scalar(d));
  if (!c.phi.is_exact()) c.phi = chop(c.phi, ctx);
  if (c.phi.degree() > 2) return fail(c, "phi_extraction", "deg phi = " + std::to_string(c.phi.degree()) + " > 2");
  c.diagnostics.push_back({"phi_extraction", "ok", "phi(z) = " + to_string(c.phi, 20)});

  // (e) R = q~ - D_d(u, phi(z))
  const BiPoly model = dickson_at(d, c.phi).poly;
  const double r_dev = dev(g.q(), model, ctx);
  c.residual = std::max(c.residual, r_dev);
  if (!decide(r_dev, approx_equal(g.q(), model, ctx), ctx, c, "dickson_identity")) {
    return fail(c, "dickson_identity", "q~ - D_d(u, phi(z)) has deviation " + std::to_string(r_dev));
  }
  c.diagnostics.push_back({"dickson_identity", "ok", "R = 0"});

  // (f) phi(p(z)) = phi(z)^d
  const UniPoly lhs = compose(c.phi, g.p());
  const UniPoly rhs = pow(c.phi, static_cast<unsigned>(d));
  const double h_dev = dev(lhs, rhs, ctx);
  c.residual = std::max(c.residual, h_dev);
  if (!decide(h_dev, approx_equal(lhs, rhs, ctx), ctx, c, "functional_equation")) {
    return fail(c, "functional_equation", "phi(p(z)) != phi(z)^d, deviation " + std::to_string(h_dev));
  }
  c.diagnostics.push_back({"functional_equation", "ok", "phi(p(z)) = phi(z)^d"});

  // (g) pattern match
  const Scalar one(1);
  const auto zeta_ok = [&](const Scalar& z) { return near(pow(z, static_cast<unsigned long>(d - 1)), one, ctx); };
  auto fiber_chebyshev = [&](const Scalar& zeta) -> bool {
    const auto form = pm_chebyshev_normal_form(dickson_specialized(d, zeta, 'w'), ctx);
    if (!form) return false;
    c.q_kind = kind_from_sigma(form->sigma);
    c.conjugation_chain.push_back(AffineTriangular::fiber_scale(form->lambda));
    return true;
  };
  const bool phi_zero = c.phi.is_zero();
  const bool phi_const = c.phi.degree() <= 0;
  if (c.base_form.kind == FormKind::power) {
    if (phi_zero) {
      c.kind = SkewKind::dagger1;
      c.p_kind = c.q_kind = FormKind::power;
    } else if (phi_const) {
      const Scalar zeta = c.phi.coeff(0);
      if (!zeta_ok(zeta) || !fiber_chebyshev(zeta)) return fail(c, "pattern_match", "constant phi is not a root of unity of order d - 1");
      c.kind = SkewKind::dagger1;
      c.p_kind = FormKind::power;
    } else {
      const int m = c.phi.degree();
      for (int k = 0; k < m; ++k) {
        if (!c.phi.coeff(k).is_zero()) return fail(c, "pattern_match", "phi is not a monomial zeta z^m");
      }
      const Scalar zeta = c.phi.coeff(m);
      if (!zeta_ok(zeta)) return fail(c, "pattern_match", "zeta^{d-1} != 1");
      c.kind = SkewKind::dagger2;
      c.zeta = zeta;
      c.m = m;
      std::string orbit;
      for (const auto& s : zeta_orbit(zeta, m, d, ctx)) orbit += (orbit.empty() ? "" : ", ") + s;
      c.diagnostics.push_back({"pattern_match", "info", "zeta under residual normalizations: {" + orbit + "}"});
    }
  } else {
    if (!phi_const) return fail(c, "pattern_match", "base is Chebyshev but phi is not constant");
    c.p_kind = c.base_form.kind;
    if (phi_zero) {
      c.q_kind = FormKind::power;
    } else {
      const Scalar zeta = c.phi.coeff(0);
      if (!zeta_ok(zeta) || !fiber_chebyshev(zeta)) return fail(c, "pattern_match", "constant phi is not a root of unity of order d - 1");
    }
    c.kind = SkewKind::dagger1;
  }
  c.diagnostics.push_back({"pattern_match", "ok", skew_kind_name(c.kind)});

  // witness: the chain must carry f to the named normal form
  SkewProduct h = f;
  for (const auto& t : c.conjugation_chain) h = chop_map(conjugate(h, t), ctx);
  const SkewProduct nf = named_normal_form(c, d);
  const double w_dev = std::max(dev(h.p(), nf.p(), ctx), dev(h.q(), nf.q(), ctx));
  c.residual = std::max(c.residual, w_dev);
  if (!approx_equal(h.p(), nf.p(), ctx) || !approx_equal(h.q(), nf.q(), ctx)) {
    c.ambiguous = true;
    return fail(c, "witness", "conjugation chain does not reproduce the normal form, deviation " + std::to_string(w_dev));
  }
  c.normal_form = nf;
  c.diagnostics.push_back({"witness", "ok", "residual " + std::to_string(c.residual)});
  return c;
}

inline std::string verdict_key(const Classification& c) {
  std::string k = skew_kind_name(c.kind);
  if (c.kind == SkewKind::dagger1) k += std::string(":") + form_kind_name(c.p_kind) + "," + form_kind_name(c.q_kind);
  if (c.kind == SkewKind::dagger2) k += ":m=" + std::to_string(c.m);
  return k;
}

}  // namespace detail

/// The specialness decision procedure. Irregular maps return regular = false
/// immediately. With `exhaustive`, every choice of the base slope and the fiber
/// scaling is tried and the verdicts are cross-checked.
inline Classification classify_skew(const SkewProduct& f, const ToleranceContext& ctx, const ClassifyOptions& opt = {}) {
  Classification c = detail::classify_once(f, ctx, opt);
  if (!opt.exhaustive || !c.regular) return c;
  const unsigned k = static_cast<unsigned>(f.degree() - 1);
  const std::string key = detail::verdict_key(c);
  for (unsigned s = 0; s < k; ++s) {
    for (unsigned g = 0; g < k; ++g) {
      if (s == opt.slope_choice && g == opt.gamma_choice) continue;
      const Classification other = detail::classify_once(f, ctx, {false, s, g});
      const std::string ok = detail::verdict_key(other);
      const bool same = ok == key;
      if (!same) c.ambiguous = true;
      c.diagnostics.push_back({"exhaustive", same ? "ok" : "ambiguous",
                               "slope choice " + std::to_string(s) + ", gamma choice " + std::to_string(g) + ": " + ok});
    }
  }
  return c;
}

struct ConverseFiberEntry {
  Scalar z0;
  int period = 1;
  double deviation = 0.0;        // Q_{z0}^n against D_{d^n}(w, phi(z0))
  bool phi_zero = false;
  double unit_deviation = 0.0;   // |phi(z0)^{d^n - 1} - 1| when phi(z0) != 0
  bool passed = false;
};

struct ConverseFiberReport {
  std::vector<ConverseFiberEntry> entries;
  double max_deviation = 0.0;
  bool all_passed = true;
};

/// For each base periodic point z0 of exact period n <= N of the centered map,
/// compares Q_{z0}^n with D_{d^n}(w, phi(z0)) and checks phi(z0)^{d^n - 1} = 1.
inline ConverseFiberReport converse_fiber_test(const Classification& cls, int max_period, const ToleranceContext& ctx,
                                               double tolerance = -1.0) {
  if (!cls.special() || !cls.centered) throw Error("converse_fiber_test: map was not classified special");
  const SkewProduct& g = *cls.centered;
  const int d = g.degree();
  const double tol = tolerance < 0 ? std::sqrt(ctx.eps_eq) : tolerance;
  ConverseFiberReport rep;
  for (int n = 1; n <= max_period; ++n) {
    long long dn = 1;
    for (int k = 0; k < n; ++k) dn *= d;
    for (const auto& pt : base_periodic_points(g, n, ctx)) {
      ConverseFiberEntry e;
      e.z0 = pt.z;
      e.period = n;
      const unsigned bits = std::max(ctx.precision_bits, pt.z.precision());
      const UniPoly Q = fiber_iterate(g, pt.z, n);
      const Scalar phi0 = cls.phi(pt.z);
      e.deviation = max_deviation(Q, dickson_specialized(static_cast<int>(dn), phi0, 'w'), bits);
      e.phi_zero = near_zero(phi0, Scalar(1), ctx) || phi0.norm_inf(bits) < real_from_double(tol, bits);
      if (!e.phi_zero) {
        e.unit_deviation = to_double(distance(pow(phi0, static_cast<unsigned long>(dn - 1)), Scalar(1), bits));
      }
      e.passed = e.deviation <= tol && e.unit_deviation <= tol;
      rep.max_deviation = std::max({rep.max_deviation, e.deviation, e.unit_deviation});
      rep.all_passed = rep.all_passed && e.passed;
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

struct MultiplierEntry {
  std::string where;  // base | fiber
  Scalar z;
  std::optional<Scalar> w;
  int period = 1;
  Scalar value;
  std::optional<mpq_class> rational;
};

struct RationalityReport {
  static constexpr const char* label = "HEURISTIC: rational reconstruction, not a number-field certificate";
  std::vector<MultiplierEntry> entries;
  bool all_rational = true;
  long max_denominator = 10000;
};

/// Real part reconstructs to p/q with q <= B and the imaginary part to 0, both
/// within tol * max(1, |x|).
inline std::optional<mpq_class> rational_value(const Scalar& x, long max_den, double tol) {
  if (x.is_exact()) {
    if (sgn(x.exact().im) != 0 || x.exact().re.get_den() > max_den) return std::nullopt;
    return x.exact().re;
  }
  const unsigned bits = x.precision();
  Real scale = x.norm_inf(bits);
  if (scale < 1) scale = real_from_long(1, bits);
  const Real t = real_from_double(tol, bits) * scale;
  if (abs(x.flt().im) > t) return std::nullopt;
  return rational_reconstruct(x.flt().re, mpz_class(max_den), t);
}

/// Multipliers of base and fiber periodic points of exact period <= N, each
/// tested for rationality.
inline RationalityReport multiplier_rationality_report(const SkewProduct& f, int max_period, const ToleranceContext& ctx,
                                                       long max_den = 10000, double tol = -1.0) {
  const double t = tol < 0 ? 10.0 * ctx.eps_eq : tol;
  RationalityReport rep;
  rep.max_denominator = max_den;
  auto add = [&](MultiplierEntry e) {
    e.rational = rational_value(e.value, max_den, t);
    rep.all_rational = rep.all_rational && e.rational.has_value();
    rep.entries.push_back(std::move(e));
  };
  for (int n = 1; n <= max_period; ++n) {
    for (const auto& pt : base_periodic_points(f, n, ctx)) {
      add({"base", pt.z, std::nullopt, n, pt.base_multiplier, std::nullopt});
      for (const auto& fp : fiber_periodic_points(f, pt.z, n, ctx)) {
        add({"fiber", fp.z, fp.w, n, *fp.fiber_multiplier, std::nullopt});
      }
    }
  }
  return rep;
}

}  // namespace skewprod

#endif  // SKEWPROD_CLASSIFY_HPP
