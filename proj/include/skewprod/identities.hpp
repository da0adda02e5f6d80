#ifndef SKEWPROD_IDENTITIES_HPP
#define SKEWPROD_IDENTITIES_HPP

// Exact verification of the Dickson polynomial identities. The scaling and
// Laurent identities need a third variable (lambda) or negative exponents, so
// they run on a small sparse Laurent polynomial type over Q.

#include <array>
#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "skewprod/dickson.hpp"

namespace skewprod {

/// Sparse Laurent polynomial over Q in three variables, exponents may be negative.
class SparsePoly3 {
 public:
  using Exp = std::array<int, 3>;

  SparsePoly3() = default;

  static SparsePoly3 term(const mpq_class& c, Exp e) {
    SparsePoly3 p;
    if (sgn(c) != 0) p.terms_[e] = c;
    return p;
  }

  static SparsePoly3 constant(const mpq_class& c) { return term(c, {0, 0, 0}); }

  const std::map<Exp, mpq_class>& terms() const { return terms_; }

  SparsePoly3& operator+=(const SparsePoly3& o) {
    for (const auto& [e, c] : o.terms_) {
      mpq_class& slot = terms_[e];
      slot += c;
      if (sgn(slot) == 0) terms_.erase(e);
    }
    return *this;
  }

  SparsePoly3& operator-=(const SparsePoly3& o) {
    for (const auto& [e, c] : o.terms_) {
      mpq_class& slot = terms_[e];
      slot -= c;
      if (sgn(slot) == 0) terms_.erase(e);
    }
    return *this;
  }

  friend SparsePoly3 operator+(SparsePoly3 a, const SparsePoly3& b) { return a += b; }
  friend SparsePoly3 operator-(SparsePoly3 a, const SparsePoly3& b) { return a -= b; }

  friend SparsePoly3 operator*(const SparsePoly3& a, const SparsePoly3& b) {
    SparsePoly3 r;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        const Exp e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
        mpq_class& slot = r.terms_[e];
        slot += ca * cb;
        if (sgn(slot) == 0) r.terms_.erase(e);
      }
    }
    return r;
  }

  friend bool operator==(const SparsePoly3&, const SparsePoly3&) = default;

 private:
  std::map<Exp, mpq_class> terms_;
};

inline SparsePoly3 pow(const SparsePoly3& p, unsigned k) {
  SparsePoly3 acc = SparsePoly3::constant(1), base = p;
  while (k > 0) {
    if (k & 1u) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

/// D(X, A) for D stored as BiPoly(a, x) with exact rational coefficients.
inline SparsePoly3 substitute_sparse(const BiPoly& d, const SparsePoly3& x_sub, const SparsePoly3& a_sub) {
  SparsePoly3 out;
  std::vector<SparsePoly3> a_pows{SparsePoly3::constant(1)};
  SparsePoly3 x_pow = SparsePoly3::constant(1);
  for (int k = 0; k <= d.deg_fiber(); ++k) {
    const UniPoly c = d.coeff_fiber(k);
    for (int j = 0; j <= c.degree(); ++j) {
      const Scalar s = c.coeff(j);
      if (s.is_zero()) continue;
      while (static_cast<int>(a_pows.size()) <= j) a_pows.push_back(a_pows.back() * a_sub);
      out += SparsePoly3::constant(s.exact().re) * a_pows[static_cast<std::size_t>(j)] * x_pow;
    }
    x_pow = x_pow * x_sub;
  }
  return out;
}

/// 2 C_d(x / 2) from the classical cosine recurrence C_{k+1} = 2x C_k - C_{k-1};
/// an independent route to T_d.
inline UniPoly chebyshev_from_cosine_recurrence(int d, char var = 'x') {
  const UniPoly x = UniPoly::identity(var);
  UniPoly prev = UniPoly::constant(Scalar(1), var), cur = x;
  if (d == 0) return prev * Scalar(2);
  for (int k = 1; k < d; ++k) {
    UniPoly next = x * cur * Scalar(2) - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return compose(cur, UniPoly::monomial(Scalar::rational(1, 2), 1, var)) * Scalar(2);
}

struct IdentityCheck {
  std::string name;
  int d = 0;
  int m = 0;
  bool passed = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  int failures = 0;
  double seconds = 0.0;

  bool all_passed() const { return failures == 0; }
};

struct IdentityLimits {
  int max_degree = 12;        // d, m range for specialization, composition, scaling and shape
  int max_product = 36;       // composition checked for m * d <= max_product
  int max_laurent_degree = 10;
};

/// Exact Dickson identity suite:
///   D_d(x, 0) = x^d, D_d(x, 1) = T_d (cosine-recurrence oracle),
///   D_m(D_d(x, a), a^d) = D_{md}(x, a),
///   D_d(lambda x, lambda^2 a) = lambda^d D_d(x, a) with lambda symbolic,
///   [x^{d-1}] = 0, [x^{d-2}] = -d a, deg_x R_d <= d - 4,
///   D_d(t + a/t, a) = t^d + a^d / t^d.
inline IdentityReport verify_dickson_identities(const IdentityLimits& lim = {}) {
  const auto start = std::chrono::steady_clock::now();
  IdentityReport rep;
  auto record = [&](std::string name, int d, int m, bool ok) {
    rep.checks.push_back({std::move(name), d, m, ok});
    if (!ok) ++rep.failures;
  };

  for (int d = 0; d <= lim.max_degree; ++d) {
    // D_0 = 2, so the power specialization starts at d = 1
    if (d >= 1) {
      const BiPoly D = dickson(d).poly;
      const bool monomial = D.eval_base(Scalar(0)).with_var('x') == UniPoly::monomial(Scalar(1), d, 'x');
      record("specialize_a0_power", d, 0, monomial);
    }
    record("specialize_a1_chebyshev", d, 0, chebyshev(d) == chebyshev_from_cosine_recurrence(d));
  }

  for (int d = 1; d <= lim.max_degree; ++d) {
    const BiPoly Dd = dickson(d).poly;
    const BiPoly a_to_d = pow(BiPoly::base_var('a', 'x'), static_cast<unsigned>(d));
    for (int m = 1; m <= lim.max_degree; ++m) {
      if (m * d > lim.max_product) continue;
      const BiPoly lhs = substitute(dickson(m).poly, a_to_d, Dd);
      record("composition", d, m, lhs == dickson(m * d).poly);
    }
  }

  // variables: 0 = x, 1 = a, 2 = lambda
  const SparsePoly3 x = SparsePoly3::term(1, {1, 0, 0});
  const SparsePoly3 a = SparsePoly3::term(1, {0, 1, 0});
  const SparsePoly3 lam = SparsePoly3::term(1, {0, 0, 1});
  for (int d = 0; d <= lim.max_degree; ++d) {
    const BiPoly D = dickson(d).poly;
    const SparsePoly3 lhs = substitute_sparse(D, lam * x, lam * lam * a);
    const SparsePoly3 rhs = pow(lam, static_cast<unsigned>(d)) * substitute_sparse(D, x, a);
    record("scaling", d, 0, lhs == rhs);
  }

  for (int d = 2; d <= lim.max_degree; ++d) {
    const BiPoly D = dickson(d).poly;
    bool ok = D.deg_fiber() == d && D.coeff_fiber(d) == UniPoly::constant(Scalar(1), 'a');
    ok = ok && D.coeff_fiber(d - 1).is_zero();
    ok = ok && D.coeff_fiber(d - 2) == UniPoly::monomial(Scalar(-d), 1, 'a');
    // R_d = D_d - x^d + d a x^{d-2} must have x-degree <= d - 4
    for (int k = d - 3; k <= d; ++k) {
      if (k == d || k == d - 2) continue;
      if (k >= 0) ok = ok && D.coeff_fiber(k).is_zero();
    }
    record("shape", d, 0, ok);
  }

  // variables: 0 = t, 1 = a
  const SparsePoly3 t = SparsePoly3::term(1, {1, 0, 0});
  const SparsePoly3 a_over_t = SparsePoly3::term(1, {-1, 1, 0});
  for (int d = 0; d <= lim.max_laurent_degree; ++d) {
    const SparsePoly3 lhs = substitute_sparse(dickson(d).poly, t + a_over_t, a);
    const SparsePoly3 rhs = d == 0 ? SparsePoly3::constant(2)
                                   : SparsePoly3::term(1, {d, 0, 0}) + SparsePoly3::term(1, {-d, d, 0});
    record("laurent", d, 0, lhs == rhs);
  }

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace skewprod

#endif  // SKEWPROD_IDENTITIES_HPP
