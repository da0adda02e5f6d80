#ifndef SKEWPROD_SKEWDYN_HPP
#define SKEWPROD_SKEWDYN_HPP

// Polynomial skew products f(z, w) = (p(z), q(z, w)) and their periodic points.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewprod/poly.hpp"
#include "skewprod/roots.hpp"

namespace skewprod {

/// f(z, w) = (p(z), q(z, w)) with deg p = deg_w q = d >= 2, stored in (z, w).
class SkewProduct {
 public:
  SkewProduct(const UniPoly& p, const BiPoly& q) : p_(p.with_var('z')), q_(q.with_vars('z', 'w')) {
    const int d = p_.degree();
    if (d != q_.deg_fiber()) {
      throw DegreeError("degree mismatch: deg p = " + std::to_string(d) + ", deg_w q = " + std::to_string(q_.deg_fiber()));
    }
    if (d < 2) throw DegreeError("skew product degree must be at least 2");
  }

  /// Accepts (p, q) where the first component must not depend on the fiber variable.
  static SkewProduct from_map(const PlaneMap& m) {
    if (m.first.depends_on_fiber()) throw Error("not a skew product: first component depends on the fiber variable");
    return SkewProduct(m.first.coeff_fiber(0), m.second);
  }

  const UniPoly& p() const { return p_; }
  const BiPoly& q() const { return q_; }
  int degree() const { return p_.degree(); }
  bool is_exact() const { return p_.is_exact() && q_.is_exact(); }

  /// The fiber map w -> q(z0, w).
  UniPoly fiber_map(const Scalar& z0) const { return q_.eval_base(z0); }

  PlaneMap as_map() const { return {BiPoly::from_base(p_, 'z', 'w'), q_}; }

 private:
  UniPoly p_;
  BiPoly q_;
};

struct RegularityReport {
  bool regular = false;         // total degree of q is d
  bool resultant_nonzero = false;  // Res(p_top, q_top(., 1)) != 0 from the top homogeneous parts
  bool agree = false;
};

/// Regularity (extension to P^2 without indeterminacy) by two routes: the degree
/// condition and the resultant of the top homogeneous parts.
inline RegularityReport regularity_report(const SkewProduct& f) {
  RegularityReport r;
  const int d = f.degree();
  const BiPoly& q = f.q();
  r.regular = q.total_degree() == d;

  // top homogeneous parts: a z^d and H(z, w) = sum h_i z^i w^{d-i}; they share a
  // zero on P^1 only at [0:1], so Res = +-a^d h_0^d, and no term may exceed degree d
  bool overflow = false;
  for (int j = 0; j <= q.deg_fiber(); ++j) {
    if (q.coeff_fiber(j).degree() + j > d) overflow = true;
  }
  const Scalar a = f.p().lead();
  const Scalar h0 = q.coeff(0, d);
  r.resultant_nonzero = !overflow && !(pow(a, static_cast<unsigned long>(d)) * pow(h0, static_cast<unsigned long>(d))).is_zero();
  r.agree = r.regular == r.resultant_nonzero;
  return r;
}

inline bool is_regular(const SkewProduct& f) { return regularity_report(f).regular; }

/// p^n as a polynomial.
inline UniPoly base_iterate(const UniPoly& p, int n) {
  if (n < 0) throw Error("iterate count must be nonnegative");
  UniPoly acc = UniPoly::identity(p.var());
  for (int k = 0; k < n; ++k) acc = compose(p, acc);
  return acc;
}

/// Q_{z0}^n = q(z_{n-1}, .) o ... o q(z0, .) with z_j = p^j(z0).
inline UniPoly fiber_iterate(const SkewProduct& f, const Scalar& z0, int n) {
  if (n < 0) throw Error("iterate count must be nonnegative");
  UniPoly acc = UniPoly::identity('w');
  Scalar z = z0;
  for (int k = 0; k < n; ++k) {
    acc = compose(f.fiber_map(z), acc);
    z = f.p()(z);
  }
  return acc;
}

/// f^n(z, w) evaluated pointwise.
inline std::pair<Scalar, Scalar> orbit_point(const SkewProduct& f, Scalar z, Scalar w, int n) {
  for (int k = 0; k < n; ++k) {
    Scalar zn = f.p()(z);
    w = f.q()(z, w);
    z = std::move(zn);
  }
  return {z, w};
}

namespace detail {

inline bool periodic_within(const Scalar& start, const Scalar& end, const ToleranceContext& ctx) {
  if (start.is_exact() && end.is_exact()) return start == end;
  return near(start, end, ctx, cluster_radius(ctx));
}

}  // namespace detail

/// (lambda_base, lambda_fiber) of the cycle through (z0, w0) of period n:
/// products of p'(z_j) and dq/dw(z_j, w_j) along the orbit.
inline std::pair<Scalar, Scalar> multiplier_pair(const SkewProduct& f, const Scalar& z0, const Scalar& w0, int n,
                                                 const ToleranceContext& ctx) {
  if (n < 1) throw Error("period must be positive");
  const UniPoly dp = f.p().derivative();
  const BiPoly dq = deriv_w(f.q());
  Scalar lb(1), lf(1), z = z0, w = w0;
  for (int k = 0; k < n; ++k) {
    lb = lb * dp(z);
    lf = lf * dq(z, w);
    Scalar zn = f.p()(z);
    w = f.q()(z, w);
    z = std::move(zn);
  }
  if (!detail::periodic_within(z0, z, ctx) || !detail::periodic_within(w0, w, ctx)) {
    throw NumericError("point is not periodic of period " + std::to_string(n) + " within tolerance");
  }
  return {lb, lf};
}

struct PeriodicPoint {
  Scalar z;
  std::optional<Scalar> w;  // set for points of the skew product, unset for base points
  int period = 1;
  int multiplicity = 1;
  Scalar base_multiplier;
  std::optional<Scalar> fiber_multiplier;
  bool ambiguous = false;  // a proper-divisor residual fell inside the cluster radius
  double residual = 0.0;
};

namespace detail {

inline std::vector<int> proper_divisors(int n) {
  std::vector<int> out;
  for (int m = 1; m < n; ++m)
    if (n % m == 0) out.push_back(m);
  return out;
}

inline double relative_gap(const Scalar& a, const Scalar& b, unsigned bits) {
  const Real d = distance(a, b, bits);
  Real s = a.norm_inf(bits);
  if (s < 1) s = real_from_long(1, bits);
  return to_double(d / s);
}

}  // namespace detail

/// Root clusters of p^n(z) - z, counted with multiplicity (sum is d^n).
inline RootResult base_periodic_roots(const SkewProduct& f, int n, const ToleranceContext& ctx) {
  if (n < 1) throw Error("period must be positive");
  const int d = f.degree();
  long double deg = 1;
  for (int k = 0; k < n; ++k) deg *= d;
  if (deg > static_cast<long double>(ctx.degree_cap)) {
    throw NumericError("degree cap exceeded: d^n = " + std::to_string(static_cast<long long>(deg)) + " > " +
                       std::to_string(ctx.degree_cap));
  }
  return find_roots(base_iterate(f.p(), n) - UniPoly::identity('z'), ctx);
}

/// Base points of exact period n with their base multipliers. Candidates whose
/// residual against a proper divisor period is below 10 eps_root are rejected;
/// below the cluster radius they are kept and flagged ambiguous.
inline std::vector<PeriodicPoint> base_periodic_points(const SkewProduct& f, int n, const ToleranceContext& ctx) {
  const RootResult roots = base_periodic_roots(f, n, ctx);
  const unsigned bits = std::max(ctx.precision_bits, f.p().precision());
  const double rc = cluster_radius(ctx);
  const UniPoly dp = f.p().derivative();
  std::vector<PeriodicPoint> out;
  for (const auto& c : roots.clusters) {
    PeriodicPoint pt;
    pt.z = c.value;
    pt.period = n;
    pt.multiplicity = c.multiplicity;
    pt.residual = c.residual;
    bool reject = false;
    for (int m : detail::proper_divisors(n)) {
      const double gap = detail::relative_gap(c.value, base_iterate(f.p(), m)(c.value), bits);
      if (gap < 10.0 * ctx.eps_root) reject = true;
      else if (gap < rc) pt.ambiguous = true;
    }
    if (reject) continue;
    Scalar lb(1), z = c.value;
    for (int k = 0; k < n; ++k) {
      lb = lb * dp(z);
      z = f.p()(z);
    }
    pt.base_multiplier = lb;
    out.push_back(std::move(pt));
  }
  return out;
}

/// Points (z0, w) with Q_{z0}^n(w) = w over a base point z0 of period n, with
/// both multipliers.
inline std::vector<PeriodicPoint> fiber_periodic_points(const SkewProduct& f, const Scalar& z0, int n,
                                                        const ToleranceContext& ctx) {
  if (n < 1) throw Error("period must be positive");
  if (!detail::periodic_within(z0, base_iterate(f.p(), n)(z0), ctx)) {
    throw NumericError("base point is not periodic of period " + std::to_string(n) + " within tolerance");
  }
  const UniPoly Q = fiber_iterate(f, z0, n);
  const RootResult roots = find_roots(Q - UniPoly::identity('w'), ctx);
  std::vector<PeriodicPoint> out;
  for (const auto& c : roots.clusters) {
    PeriodicPoint pt;
    pt.z = z0;
    pt.w = c.value;
    pt.period = n;
    pt.multiplicity = c.multiplicity;
    pt.residual = c.residual;
    auto [lb, lf] = multiplier_pair(f, z0, c.value, n, ctx);
    pt.base_multiplier = lb;
    pt.fiber_multiplier = lf;
    out.push_back(std::move(pt));
  }
  return out;
}

struct SemiconjugacyResult {
  bool holds = false;
  PlaneMap residual;  // f o Pi - Pi o g
  double max_deviation = 0.0;
};

/// Checks f o Pi = Pi o g. f is written in (z, w); Pi and g share one variable pair.
inline SemiconjugacyResult verify_semiconjugacy(const PlaneMap& f, const PlaneMap& pi, const PlaneMap& g,
                                                const ToleranceContext& ctx) {
  const char b = g.first.base(), fb = g.first.fiber();
  const PlaneMap pi_v{pi.first.with_vars(b, fb), pi.second.with_vars(b, fb)};
  const PlaneMap lhs = compose(f, pi_v);
  const PlaneMap rhs = compose(pi_v, g);
  SemiconjugacyResult r;
  r.residual = {lhs.first - rhs.first, lhs.second - rhs.second};
  const unsigned bits = std::max({ctx.precision_bits, lhs.first.precision(), rhs.first.precision()});
  r.max_deviation = std::max(max_deviation(lhs.first, rhs.first, bits), max_deviation(lhs.second, rhs.second, bits));
  r.holds = approx_equal(lhs.first, rhs.first, ctx) && approx_equal(lhs.second, rhs.second, ctx);
  return r;
}

}  // namespace skewprod

#endif  // SKEWPROD_SKEWDYN_HPP
