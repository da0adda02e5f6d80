#ifndef SKEWPROD_DICKSON_HPP
#define SKEWPROD_DICKSON_HPP

#include <deque>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "skewprod/poly.hpp"

namespace skewprod {

/// D_d(x, a) with exact integer coefficients, stored as a BiPoly dense in x
/// (fiber variable) with coefficients in a (base variable).
struct DicksonSymbolic {
  int degree = 0;
  BiPoly poly{'a', 'x'};
};

namespace detail {

class DicksonCache {
 public:
  const BiPoly& get(int d) {
    {
      std::shared_lock lock(mu_);
      if (d < static_cast<int>(table_.size())) return table_[static_cast<std::size_t>(d)];
    }
    std::unique_lock lock(mu_);
    if (table_.empty()) {
      table_.push_back(BiPoly::constant(Scalar(2), 'a', 'x'));
      table_.push_back(BiPoly::fiber_var('a', 'x'));
    }
    const BiPoly x = BiPoly::fiber_var('a', 'x');
    const BiPoly a = BiPoly::base_var('a', 'x');
    // D_{k+1} = x D_k - a D_{k-1}
    while (static_cast<int>(table_.size()) <= d) {
      const std::size_t k = table_.size() - 1;
      table_.push_back(x * table_[k] - a * table_[k - 1]);
    }
    return table_[static_cast<std::size_t>(d)];
  }

 private:
  std::shared_mutex mu_;
  std::deque<BiPoly> table_;  // references stay valid across growth
};

inline DicksonCache& dickson_cache() {
  static DicksonCache cache;
  return cache;
}

}  // namespace detail

inline DicksonSymbolic dickson(int d) {
  if (d < 0) throw DegreeError("dickson: degree must be nonnegative");
  return {d, detail::dickson_cache().get(d)};
}

/// D_d(x, a0) for a scalar parameter, by the same three-term recurrence.
inline UniPoly dickson_specialized(int d, const Scalar& a0, char var = 'x') {
  if (d < 0) throw DegreeError("dickson: degree must be nonnegative");
  UniPoly prev = UniPoly::constant(Scalar(2), var);
  if (d == 0) return prev;
  UniPoly cur = UniPoly::identity(var);
  const UniPoly x = UniPoly::identity(var);
  for (int k = 1; k < d; ++k) {
    UniPoly next = x * cur - prev * a0;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// T_d = D_d(x, 1).
inline UniPoly chebyshev(int d, char var = 'x') {
  const DicksonSymbolic D = dickson(d);
  return D.poly.eval_base(Scalar(1)).with_var(var);
}

struct DicksonAt {
  BiPoly poly;
  int total_degree = -1;
};

/// D_d(w, phi(z)) as a polynomial in (z, w).
inline DicksonAt dickson_at(int d, const UniPoly& phi, char base = 'z', char fiber = 'w') {
  if (d < 2) throw DegreeError("dickson_at: degree must be at least 2");
  const DicksonSymbolic D = dickson(d);
  std::vector<UniPoly> by_fiber;
  const UniPoly phi_b = phi.with_var(base);
  for (const auto& coeff_in_a : D.poly.fiber_coeffs()) by_fiber.push_back(compose(coeff_in_a.with_var(base), phi_b));
  BiPoly q(std::move(by_fiber), base, fiber);
  const int td = q.total_degree();
  return {std::move(q), td};
}

struct DegreeBoundCheck {
  int total_degree = -1;
  int phi_degree = -1;
  bool total_degree_is_d = false;   // direct computation
  bool phi_degree_at_most_2 = false;  // the deg(phi) <= 2 criterion
  bool agree = false;
};

/// Whether D_d(w, phi(z)) has total degree d, computed directly and cross-checked
/// against deg(phi) <= 2. Disagreement is reported, never resolved.
inline DegreeBoundCheck check_degree_bound(int d, const UniPoly& phi) {
  if (phi.is_zero()) throw Error("check_degree_bound: phi must be nonzero");
  DegreeBoundCheck r;
  r.total_degree = dickson_at(d, phi).total_degree;
  r.phi_degree = phi.degree();
  r.total_degree_is_d = r.total_degree == d;
  r.phi_degree_at_most_2 = r.phi_degree <= 2;
  r.agree = r.total_degree_is_d == r.phi_degree_at_most_2;
  return r;
}

struct PmChebyshevForm {
  int sigma = 1;   // +1 or -1
  Scalar lambda;   // lambda^2 = zeta
  Scalar zeta;     // P = D_d(x, zeta), zeta^{d-1} = 1
  double residual = 0.0;  // |lambda^{-1} P(lambda x) - sigma T_d| coefficientwise
};

namespace detail {

inline std::optional<int> as_sign(const Scalar& s, const ToleranceContext& ctx) {
  if (near(s, Scalar(1), ctx)) return 1;
  if (near(s, Scalar(-1), ctx)) return -1;
  return std::nullopt;
}

}  // namespace detail

/// For a monic centered P of degree d >= 2: if P = D_d(x, zeta) with
/// zeta^{d-1} = 1, the scaling L(x) = lambda x with lambda^2 = zeta conjugates P
/// to sigma T_d. Exact lambda is preferred; for even d the sign of lambda is
/// chosen so that sigma = +1.
inline std::optional<PmChebyshevForm> pm_chebyshev_normal_form(const UniPoly& p, const ToleranceContext& ctx) {
  const int d = p.degree();
  if (d < 2) throw DegreeError("pm_chebyshev_normal_form: degree must be at least 2");
  if (!near(p.lead(), Scalar(1), ctx)) throw Error("pm_chebyshev_normal_form: polynomial must be monic");
  if (!near_zero(p.coeff(d - 1), Scalar(1), ctx)) throw Error("pm_chebyshev_normal_form: polynomial must be centered");

  const Scalar zeta = -p.coeff(d - 2) / Scalar(d);
  const UniPoly model = dickson_specialized(d, zeta, p.var());
  if (!approx_equal(p, model, ctx)) return std::nullopt;
  if (!near(pow(zeta, static_cast<unsigned long>(d - 1)), Scalar(1), ctx)) return std::nullopt;

  std::vector<Scalar> cands = nth_roots(zeta, 2, ctx);
  std::stable_partition(cands.begin(), cands.end(), [](const Scalar& s) { return s.is_exact(); });
  std::vector<PmChebyshevForm> valid;
  for (const auto& lam : cands) {
    // (lambda^{d-1})^2 = zeta^{d-1} = 1, so this only fails on tolerance trouble
    if (const auto sigma = detail::as_sign(pow(lam, static_cast<unsigned long>(d - 1)), ctx)) {
      valid.push_back(PmChebyshevForm{*sigma, lam, zeta, 0.0});
    }
  }
  if (valid.empty()) return std::nullopt;
  std::optional<PmChebyshevForm> best = valid.front();
  for (const auto& v : valid) {
    if (v.sigma == 1 && v.lambda.is_exact() == best->lambda.is_exact()) {
      best = v;
      break;
    }
  }

  const UniPoly conj = conjugate_affine(p, AffineMap1::scale(best->lambda));
  const UniPoly target = chebyshev(d, p.var()) * Scalar(best->sigma);
  best->residual = max_deviation(conj, target, std::max(ctx.precision_bits, conj.precision()));
  if (!approx_equal(conj, target, ctx)) return std::nullopt;
  return best;
}

}  // namespace skewprod

#endif  // SKEWPROD_DICKSON_HPP
