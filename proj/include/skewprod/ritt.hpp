#ifndef SKEWPROD_RITT_HPP
#define SKEWPROD_RITT_HPP

// Affine ambiguity of polynomial decompositions and the cyclic Dickson chains
// f_j(x) = D_d(x - c_j, l_j) + c_{j+1}.

#include <optional>
#include <string>
#include <vector>

#include "skewprod/dickson.hpp"

namespace skewprod {

/// f_{n-1} o ... o f_0.
inline UniPoly compose_chain(const std::vector<UniPoly>& factors) {
  if (factors.empty()) throw Error("compose_chain: empty chain");
  UniPoly acc = factors.front();
  for (std::size_t j = 1; j < factors.size(); ++j) acc = compose(factors[j], acc);
  return acc;
}

namespace detail {

/// The affine A with v = A o u, when deg u = deg v >= 1 and one exists.
inline std::optional<AffineMap1> affine_between(const UniPoly& u, const UniPoly& v, const ToleranceContext& ctx) {
  if (u.degree() != v.degree() || u.degree() < 1) return std::nullopt;
  const Scalar alpha = v.lead() / u.lead();
  const Scalar beta = v.coeff(0) - alpha * u.coeff(0);
  const AffineMap1 a(alpha, beta);
  if (!approx_equal(compose(a.as_poly(u.var()), u), v.with_var(u.var()), ctx)) return std::nullopt;
  return a;
}

inline void require_nonconstant(const UniPoly& p, const char* who) {
  if (p.degree() < 1) throw DegreeError(std::string(who) + ": factors must be nonconstant");
}

}  // namespace detail

/// For a o b = c o d with deg a = deg c >= 2, deg b = deg d >= 2: the affine A with a = c o A and
/// b = A^{-1} o d, or nullopt when the compositions differ.
inline std::optional<AffineMap1> solve_affine_pair(const UniPoly& a, const UniPoly& b, const UniPoly& c,
                                                   const UniPoly& d, const ToleranceContext& ctx) {
  for (const auto* p : {&a, &b, &c, &d}) {
    if (p->degree() < 2) throw DegreeError("solve_affine_pair: factors must have degree at least 2");
  }
  if (a.degree() != c.degree() || b.degree() != d.degree()) throw DegreeError("solve_affine_pair: degree mismatch");
  if (!approx_equal(compose(a, b), compose(c, d).with_var(b.var()), ctx)) return std::nullopt;
  const auto A = detail::affine_between(b, d, ctx);
  if (!A) return std::nullopt;
  if (!approx_equal(a.with_var('x'), compose(c.with_var('x'), A->as_poly('x')), ctx)) return std::nullopt;
  return A;
}

/// Whether F_0 = A_1^{-1} o G_0, F_j = A_{j+1}^{-1} o G_j o A_j and
/// F_{n-1} = G_{n-1} o A_{n-1} hold for A = (A_1, ..., A_{n-1}).
inline bool check_affine_chain(const std::vector<UniPoly>& F, const std::vector<UniPoly>& G,
                               const std::vector<AffineMap1>& A, const ToleranceContext& ctx) {
  const std::size_t n = F.size();
  if (G.size() != n || A.size() + 1 != n) return false;
  if (n == 1) return approx_equal(F[0].with_var('x'), G[0].with_var('x'), ctx);
  auto poly = [](const AffineMap1& m) { return m.as_poly('x'); };
  for (std::size_t j = 0; j < n; ++j) {
    UniPoly rhs = G[j].with_var('x');
    if (j > 0) rhs = compose(rhs, poly(A[j - 1]));
    if (j + 1 < n) rhs = compose(poly(A[j].inverse()), rhs);
    if (!approx_equal(F[j].with_var('x'), rhs, ctx)) return false;
  }
  return true;
}

/// For F_{n-1} o ... o F_0 = G_{n-1} o ... o G_0 with deg F_j = deg G_j, the
/// affine maps A_1, ..., A_{n-1} linking the two chains. A_{j+1} is read off the
/// partial compositions G_j o ... o G_0 = A_{j+1} o F_j o ... o F_0.
inline std::optional<std::vector<AffineMap1>> solve_affine_chain(const std::vector<UniPoly>& F,
                                                                 const std::vector<UniPoly>& G,
                                                                 const ToleranceContext& ctx) {
  if (F.empty() || F.size() != G.size()) throw DegreeError("solve_affine_chain: chains must have equal positive length");
  for (std::size_t j = 0; j < F.size(); ++j) {
    detail::require_nonconstant(F[j], "solve_affine_chain");
    detail::require_nonconstant(G[j], "solve_affine_chain");
    if (F[j].degree() != G[j].degree()) {
      throw DegreeError("solve_affine_chain: degree mismatch at factor " + std::to_string(j));
    }
  }
  std::vector<UniPoly> Fx, Gx;
  for (std::size_t j = 0; j < F.size(); ++j) {
    Fx.push_back(F[j].with_var('x'));
    Gx.push_back(G[j].with_var('x'));
  }
  if (!approx_equal(compose_chain(Fx), compose_chain(Gx), ctx)) return std::nullopt;

  std::vector<AffineMap1> A;
  UniPoly U = Fx[0], V = Gx[0];
  for (std::size_t j = 0; j + 1 < Fx.size(); ++j) {
    if (j > 0) {
      U = compose(Fx[j], U);
      V = compose(Gx[j], V);
    }
    const auto a = detail::affine_between(U, V, ctx);
    if (!a) return std::nullopt;
    A.push_back(*a);
  }
  if (!check_affine_chain(Fx, Gx, A, ctx)) return std::nullopt;
  return A;
}

enum class ChainCase { power, chebyshev };

inline const char* chain_case_name(ChainCase c) { return c == ChainCase::power ? "power" : "chebyshev"; }

/// Parameters of a cyclic chain f_j(x) = D_d(x - c_j, l_j) + c_{j+1}, indices mod n,
/// with l_{j+1} = l_j^d.
struct DicksonChainData {
  std::vector<Scalar> c;
  std::vector<Scalar> ell;
  ChainCase kind = ChainCase::power;
};

namespace detail {

inline UniPoly chain_factor(int d, const Scalar& c_in, const Scalar& ell, const Scalar& c_out) {
  const UniPoly D = dickson_specialized(d, ell, 'x');
  return compose(D, UniPoly({-c_in, Scalar(1)}, 'x')) + UniPoly::constant(c_out, 'x');
}

/// tau_{c0} o D_{d^n}(., l_0) o tau_{-c0}
inline UniPoly chain_target(int d, std::size_t n, const Scalar& c0, const Scalar& ell0) {
  int dn = 1;
  for (std::size_t k = 0; k < n; ++k) dn *= d;
  return conjugate_affine(dickson_specialized(dn, ell0, 'x'), AffineMap1::shift(-c0));
}

inline std::optional<ChainCase> chain_case(int d, const std::vector<Scalar>& ell, const ToleranceContext& ctx) {
  const std::size_t n = ell.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (!near(pow(ell[j], static_cast<unsigned long>(d)), ell[(j + 1) % n], ctx)) return std::nullopt;
  }
  bool all_zero = true;
  for (const auto& l : ell) all_zero = all_zero && near_zero(l, Scalar(1), ctx);
  if (all_zero) return ChainCase::power;
  unsigned long dn = 1;
  for (std::size_t k = 0; k < n; ++k) dn *= static_cast<unsigned long>(d);
  if (!near(pow(ell[0], dn - 1), Scalar(1), ctx)) return std::nullopt;
  return ChainCase::chebyshev;
}

}  // namespace detail

/// Recovers (c_j, l_j) from a cyclic chain of monic degree-d factors, or nullopt
/// if the chain is not of this form. The parameters are uniquely determined:
/// c_j from [x^{d-1}] f_j, then l_j from [x^{d-2}] f_j(x + c_j).
inline std::optional<DicksonChainData> decompose_special_chain(const std::vector<UniPoly>& F,
                                                               const ToleranceContext& ctx) {
  if (F.empty()) throw DegreeError("decompose_special_chain: empty chain");
  const int d = F[0].degree();
  if (d < 2) throw DegreeError("decompose_special_chain: degree must be at least 2");
  for (const auto& f : F) {
    if (f.degree() != d) throw DegreeError("decompose_special_chain: factors must share one degree");
    if (!near(f.lead(), Scalar(1), ctx)) return std::nullopt;
  }
  const std::size_t n = F.size();
  std::vector<UniPoly> Fx;
  for (const auto& f : F) Fx.push_back(f.with_var('x'));

  DicksonChainData out;
  for (const auto& f : Fx) out.c.push_back(-f.coeff(d - 1) / Scalar(d));
  for (std::size_t j = 0; j < n; ++j) {
    const UniPoly centered = compose(Fx[j], UniPoly({out.c[j], Scalar(1)}, 'x')) - UniPoly::constant(out.c[(j + 1) % n], 'x');
    out.ell.push_back(-centered.coeff(d - 2) / Scalar(d));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!approx_equal(Fx[j], detail::chain_factor(d, out.c[j], out.ell[j], out.c[(j + 1) % n]), ctx)) return std::nullopt;
  }
  const auto kind = detail::chain_case(d, out.ell, ctx);
  if (!kind) return std::nullopt;
  out.kind = *kind;
  if (!approx_equal(compose_chain(Fx), detail::chain_target(d, n, out.c[0], out.ell[0]), ctx)) return std::nullopt;
  return out;
}

/// Builds the factors f_0, ..., f_{n-1} from chain data after checking the
/// cycle conditions and the composed identity.
inline std::vector<UniPoly> compose_special_chain(const DicksonChainData& data, int d, const ToleranceContext& ctx) {
  const std::size_t n = data.c.size();
  if (n == 0 || data.ell.size() != n) throw Error("compose_special_chain: c and l must have equal positive length");
  if (d < 2) throw DegreeError("compose_special_chain: degree must be at least 2");
  const auto kind = detail::chain_case(d, data.ell, ctx);
  if (!kind) throw Error("compose_special_chain: invariant violated (l_{j+1} = l_j^d, l_0^{d^n - 1} = 1 or all l = 0)");
  if (*kind != data.kind) throw Error(std::string("compose_special_chain: data is tagged ") + chain_case_name(data.kind) +
                                      " but parameters give " + chain_case_name(*kind));
  std::vector<UniPoly> F;
  for (std::size_t j = 0; j < n; ++j) F.push_back(detail::chain_factor(d, data.c[j], data.ell[j], data.c[(j + 1) % n]));
  if (!approx_equal(compose_chain(F), detail::chain_target(d, n, data.c[0], data.ell[0]), ctx)) {
    throw NumericError("compose_special_chain: composed identity failed");
  }
  return F;
}

}  // namespace skewprod

#endif  // SKEWPROD_RITT_HPP
