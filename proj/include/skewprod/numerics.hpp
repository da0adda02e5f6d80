#ifndef SKEWPROD_NUMERICS_HPP
#define SKEWPROD_NUMERICS_HPP

// Scalars with two interchangeable backends: exact Gaussian rationals (GMP)
// and complex floats at a configurable binary precision (MPFR).

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "skewprod/error.hpp"

namespace skewprod {

/// Variable-precision MPFR real. Results of arithmetic keep the larger
/// operand precision (expression templates are off on purpose so temporaries
/// never fall back to the thread default).
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;

namespace detail {

inline mpfr_ptr raw(Real& r) { return r.backend().data(); }
inline mpfr_srcptr raw(const Real& r) { return r.backend().data(); }

}  // namespace detail

inline Real make_real(unsigned bits) {
  Real r;
  mpfr_set_prec(detail::raw(r), static_cast<mpfr_prec_t>(bits));
  mpfr_set_zero(detail::raw(r), 1);
  return r;
}

inline Real real_from_long(long v, unsigned bits) {
  Real r = make_real(bits);
  mpfr_set_si(detail::raw(r), v, MPFR_RNDN);
  return r;
}

inline Real real_from_double(double v, unsigned bits) {
  Real r = make_real(bits);
  mpfr_set_d(detail::raw(r), v, MPFR_RNDN);
  return r;
}

inline Real real_from_q(const mpq_class& q, unsigned bits) {
  Real r = make_real(bits);
  mpfr_set_q(detail::raw(r), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

/// Exact binary value of a finite MPFR number as a rational.
inline mpq_class real_to_q(const Real& x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), detail::raw(x));
  return q;
}

inline unsigned precision_bits(const Real& x) {
  return static_cast<unsigned>(mpfr_get_prec(detail::raw(x)));
}

inline bool is_finite(const Real& x) { return mpfr_number_p(detail::raw(x)) != 0; }

inline Real real_pi(unsigned bits) {
  Real r = make_real(bits);
  mpfr_const_pi(detail::raw(r), MPFR_RNDN);
  return r;
}

inline double to_double(const Real& x) { return mpfr_get_d(detail::raw(x), MPFR_RNDN); }

/// Shortest-ish general-format decimal with `digits` significant digits.
inline std::string format_real(const Real& x, int digits) {
  if (mpfr_zero_p(detail::raw(x))) return "0";
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(digits) + "Rg";
  mpfr_asprintf(&buf, fmt.c_str(), detail::raw(x));
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

inline int digits_for_bits(unsigned bits) {
  return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120));
}

struct GaussRat {
  mpq_class re;
  mpq_class im;
};

struct Cplx {
  Real re;
  Real im;
};

enum class Backend { exact, floating };

class Scalar {
 public:
  Scalar() : v_(GaussRat{mpq_class(0), mpq_class(0)}) {}

  template <std::integral I>
  Scalar(I n) : v_(GaussRat{mpq_class(static_cast<long>(n)), mpq_class(0)}) {}  // NOLINT

  explicit Scalar(mpq_class re, mpq_class im = mpq_class(0)) {
    re.canonicalize();
    im.canonicalize();
    v_ = GaussRat{std::move(re), std::move(im)};
  }

  explicit Scalar(Cplx c) {
    if (!is_finite(c.re) || !is_finite(c.im)) {
      throw NumericError("non-finite floating scalar");
    }
    v_ = std::move(c);
  }

  static Scalar rational(long num, long den, long im_num = 0, long im_den = 1) {
    if (den == 0 || im_den == 0) throw std::domain_error("zero denominator");
    return Scalar(mpq_class(num, den), mpq_class(im_num, im_den));
  }

  static Scalar imag_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

  static Scalar floating(Real re, Real im) { return Scalar(Cplx{std::move(re), std::move(im)}); }

  static Scalar floating(double re, double im, unsigned bits) {
    return floating(real_from_double(re, bits), real_from_double(im, bits));
  }

  Backend backend() const { return v_.index() == 0 ? Backend::exact : Backend::floating; }
  bool is_exact() const { return v_.index() == 0; }
  bool is_float() const { return v_.index() == 1; }

  const GaussRat& exact() const {
    if (!is_exact()) throw BackendMismatch();
    return std::get<GaussRat>(v_);
  }
  const Cplx& flt() const {
    if (!is_float()) throw BackendMismatch();
    return std::get<Cplx>(v_);
  }

  /// Structural zero: no tolerance involved.
  bool is_zero() const {
    if (is_exact()) {
      const auto& g = std::get<GaussRat>(v_);
      return sgn(g.re) == 0 && sgn(g.im) == 0;
    }
    const auto& c = std::get<Cplx>(v_);
    return mpfr_zero_p(detail::raw(c.re)) && mpfr_zero_p(detail::raw(c.im));
  }

  bool is_real() const {
    if (is_exact()) return sgn(std::get<GaussRat>(v_).im) == 0;
    return mpfr_zero_p(detail::raw(std::get<Cplx>(v_).im)) != 0;
  }

  /// 0 for exact values.
  unsigned precision() const {
    return is_exact() ? 0u : precision_bits(std::get<Cplx>(v_).re);
  }

  Scalar to_float(unsigned bits) const {
    if (is_float()) {
      const auto& c = std::get<Cplx>(v_);
      if (precision_bits(c.re) == bits) return *this;
      Real re = make_real(bits), im = make_real(bits);
      mpfr_set(detail::raw(re), detail::raw(c.re), MPFR_RNDN);
      mpfr_set(detail::raw(im), detail::raw(c.im), MPFR_RNDN);
      return floating(std::move(re), std::move(im));
    }
    const auto& g = std::get<GaussRat>(v_);
    return floating(real_from_q(g.re, bits), real_from_q(g.im, bits));
  }

  Real re_real(unsigned bits) const {
    return is_exact() ? real_from_q(std::get<GaussRat>(v_).re, bits) : std::get<Cplx>(v_).re;
  }
  Real im_real(unsigned bits) const {
    return is_exact() ? real_from_q(std::get<GaussRat>(v_).im, bits) : std::get<Cplx>(v_).im;
  }

  /// max(|re|, |im|)
  Real norm_inf(unsigned bits = kDefaultPrecisionBits) const {
    const unsigned b = is_float() ? precision() : bits;
    Real a = abs(re_real(b));
    Real c = abs(im_real(b));
    return a > c ? a : c;
  }

  Real abs_value(unsigned bits = kDefaultPrecisionBits) const {
    const unsigned b = is_float() ? precision() : bits;
    return sqrt(re_real(b) * re_real(b) + im_real(b) * im_real(b));
  }

  Scalar conj() const {
    if (is_exact()) {
      const auto& g = std::get<GaussRat>(v_);
      return Scalar(g.re, -g.im);
    }
    const auto& c = std::get<Cplx>(v_);
    return floating(c.re, -c.im);
  }

  /// Zeroes components whose magnitude is at most `threshold`; exact values pass through.
  Scalar chop(const Real& threshold) const {
    if (is_exact()) return *this;
    Cplx c = std::get<Cplx>(v_);
    if (abs(c.re) <= threshold) mpfr_set_zero(detail::raw(c.re), 1);
    if (abs(c.im) <= threshold) mpfr_set_zero(detail::raw(c.im), 1);
    return Scalar(std::move(c));
  }

  Scalar operator-() const {
    if (is_exact()) {
      const auto& g = std::get<GaussRat>(v_);
      return Scalar(-g.re, -g.im);
    }
    const auto& c = std::get<Cplx>(v_);
    return floating(-c.re, -c.im);
  }

  Scalar& operator+=(const Scalar& o) { return *this = add(*this, o); }
  Scalar& operator-=(const Scalar& o) { return *this = sub(*this, o); }
  Scalar& operator*=(const Scalar& o) { return *this = mul(*this, o); }
  Scalar& operator/=(const Scalar& o) { return *this = div(*this, o); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return sub(a, b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return mul(a, b); }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return div(a, b); }

  /// Structural equality; an exact and a floating value never compare equal.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.backend() != b.backend()) return false;
    if (a.is_exact()) {
      const auto& x = std::get<GaussRat>(a.v_);
      const auto& y = std::get<GaussRat>(b.v_);
      return x.re == y.re && x.im == y.im;
    }
    const auto& x = std::get<Cplx>(a.v_);
    const auto& y = std::get<Cplx>(b.v_);
    return x.re == y.re && x.im == y.im;
  }

 private:
  // Mixed exact/float arithmetic promotes the exact side to the float's precision.
  static std::pair<Scalar, Scalar> unify(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_float()) return {a.to_float(b.precision()), b};
    if (a.is_float() && b.is_exact()) return {a, b.to_float(a.precision())};
    return {a, b};
  }

  static Scalar add(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
      const auto& x = std::get<GaussRat>(a.v_);
      const auto& y = std::get<GaussRat>(b.v_);
      return Scalar(mpq_class(x.re + y.re), mpq_class(x.im + y.im));
    }
    auto [u, v] = unify(a, b);
    const auto& x = std::get<Cplx>(u.v_);
    const auto& y = std::get<Cplx>(v.v_);
    return floating(x.re + y.re, x.im + y.im);
  }

  static Scalar sub(const Scalar& a, const Scalar& b) { return add(a, -b); }

  static Scalar mul(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
      const auto& x = std::get<GaussRat>(a.v_);
      const auto& y = std::get<GaussRat>(b.v_);
      if (sgn(x.im) == 0 && sgn(y.im) == 0) return Scalar(mpq_class(x.re * y.re), mpq_class(0));
      return Scalar(mpq_class(x.re * y.re - x.im * y.im), mpq_class(x.re * y.im + x.im * y.re));
    }
    auto [u, v] = unify(a, b);
    const auto& x = std::get<Cplx>(u.v_);
    const auto& y = std::get<Cplx>(v.v_);
    return floating(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
  }

  static Scalar div(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw std::domain_error("division by zero scalar");
    if (a.is_exact() && b.is_exact()) {
      const auto& x = std::get<GaussRat>(a.v_);
      const auto& y = std::get<GaussRat>(b.v_);
      if (sgn(y.im) == 0) return Scalar(mpq_class(x.re / y.re), mpq_class(x.im / y.re));
      mpq_class den = y.re * y.re + y.im * y.im;
      return Scalar(mpq_class((x.re * y.re + x.im * y.im) / den),
                    mpq_class((x.im * y.re - x.re * y.im) / den));
    }
    auto [u, v] = unify(a, b);
    const auto& x = std::get<Cplx>(u.v_);
    const auto& y = std::get<Cplx>(v.v_);
    Real den = y.re * y.re + y.im * y.im;
    return floating((x.re * y.re + x.im * y.im) / den, (x.im * y.re - x.re * y.im) / den);
  }

  std::variant<GaussRat, Cplx> v_;
};

inline Scalar pow(Scalar base, unsigned long k) {
  Scalar acc(1);
  if (base.is_float()) acc = acc.to_float(base.precision());
  while (k > 0) {
    if (k & 1u) acc *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return acc;
}

/// Canonical text: `3/4`, `-2`, `3/4i`, `(1/2 - 3i)`; floats use `digits`
/// significant decimal digits (0 selects the value's full precision).
inline std::string to_string(const Scalar& s, int digits = 0) {
  auto part = [&](bool real) -> std::string {
    if (s.is_exact()) return (real ? s.exact().re : s.exact().im).get_str();
    const Real& r = real ? s.flt().re : s.flt().im;
    return format_real(r, digits > 0 ? digits : digits_for_bits(precision_bits(r)));
  };
  auto is_neg = [&](bool real) {
    if (s.is_exact()) return sgn(real ? s.exact().re : s.exact().im) < 0;
    return (real ? s.flt().re : s.flt().im) < 0;
  };
  auto imag_text = [&](std::string mag) { return mag == "1" ? std::string("i") : mag + "i"; };

  if (s.is_real()) return part(true);
  std::string im = part(false);
  const bool neg_im = is_neg(false);
  if (neg_im) im.erase(0, 1);
  const bool zero_re = s.is_exact() ? sgn(s.exact().re) == 0 : mpfr_zero_p(detail::raw(s.flt().re)) != 0;
  if (zero_re) return (neg_im ? "-" : "") + imag_text(im);
  return "(" + part(true) + (neg_im ? " - " : " + ") + imag_text(im) + ")";
}

struct ToleranceContext {
  /// Coefficient equality threshold, relative with an absolute floor of 1.
  double eps_eq = std::ldexp(1.0, -128);
  /// Root-finding residual threshold, relative to the evaluation scale.
  double eps_root = std::ldexp(1.0, -160);
  unsigned precision_bits = kDefaultPrecisionBits;
  /// Largest polynomial degree the periodic-point machinery will root-find.
  std::size_t degree_cap = 1024;

  void validate() const {
    if (!(eps_eq > 0.0) || !(eps_root > 0.0)) throw Error("tolerances must be positive");
    if (precision_bits < 16) throw Error("precision must be at least 16 bits");
    if (degree_cap < 1) throw Error("degree cap must be positive");
  }

  Real eq_threshold() const { return real_from_double(eps_eq, precision_bits); }
  Real root_threshold() const { return real_from_double(eps_root, precision_bits); }
};

/// max component distance |a - b|_inf, computed at the wider precision involved.
inline Real distance(const Scalar& a, const Scalar& b, unsigned bits = kDefaultPrecisionBits) {
  if (a.is_exact() && b.is_exact()) return (a - b).norm_inf(bits);
  const unsigned p = std::max(a.precision(), b.precision());
  return (a.to_float(p) - b.to_float(p)).norm_inf(p);
}

/// Mixed relative/absolute closeness: |a - b|_inf <= eps * max(1, |a|_inf, |b|_inf).
/// Exact pairs compare structurally. Mixed backends are allowed here.
inline bool near(const Scalar& a, const Scalar& b, const ToleranceContext& ctx, double eps = -1.0) {
  if (a.is_exact() && b.is_exact()) return a == b;
  const unsigned p = std::max({a.precision(), b.precision(), 16u});
  Real scale = real_from_long(1, p);
  Real na = a.norm_inf(p), nb = b.norm_inf(p);
  if (na > scale) scale = na;
  if (nb > scale) scale = nb;
  return distance(a, b, p) <= real_from_double(eps < 0 ? ctx.eps_eq : eps, p) * scale;
}

inline bool near_zero(const Scalar& a, const Scalar& scale_ref, const ToleranceContext& ctx) {
  if (a.is_exact()) return a.is_zero();
  const unsigned p = a.precision();
  Real scale = real_from_long(1, p);
  Real s = scale_ref.norm_inf(p);
  if (s > scale) scale = s;
  return a.norm_inf(p) <= real_from_double(ctx.eps_eq, p) * scale;
}

/// Equality contract of the numerics module: both sides must share a backend.
inline bool scalar_eq(const Scalar& a, const Scalar& b, const ToleranceContext& ctx) {
  if (a.backend() != b.backend()) throw BackendMismatch();
  return near(a, b, ctx);
}

/// Smallest-denominator continued-fraction convergent p/q with q <= max_den and
/// |x - p/q| <= tol.
inline std::optional<mpq_class> rational_reconstruct(const Real& x, const mpz_class& max_den,
                                                     const Real& tol) {
  if (!is_finite(x)) return std::nullopt;
  const unsigned bits = precision_bits(x);
  mpq_class rem = real_to_q(x);
  mpz_class p_prev = 1, q_prev = 0;
  mpz_class a;
  mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
  mpz_class p = a, q = 1;
  for (int iter = 0; iter < 4096; ++iter) {
    if (q > max_den) break;
    mpq_class cand(p, q);
    cand.canonicalize();
    if (abs(x - real_from_q(cand, bits)) <= tol) return cand;
    rem -= a;
    if (sgn(rem) == 0) break;
    rem = 1 / rem;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
    mpz_class p_next = a * p + p_prev;
    mpz_class q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  return std::nullopt;
}

/// Gaussian-rational reconstruction of a scalar, component by component.
inline std::optional<Scalar> reconstruct_gaussian(const Scalar& x, const mpz_class& max_den, const Real& tol) {
  if (x.is_exact()) return x;
  auto re = rational_reconstruct(x.flt().re, max_den, tol);
  if (!re) return std::nullopt;
  auto im = rational_reconstruct(x.flt().im, max_den, tol);
  if (!im) return std::nullopt;
  return Scalar(*re, *im);
}

/// All k-th roots of x, ordered counterclockwise starting from the principal
/// root. For exact x every root that is a Gaussian rational is returned exact
/// (verified by exact exponentiation); the others are floats at ctx precision.
inline std::vector<Scalar> nth_roots(const Scalar& x, unsigned k, const ToleranceContext& ctx) {
  if (k == 0) throw Error("root order must be positive");
  const unsigned bits = x.is_float() ? x.precision() : ctx.precision_bits;
  std::vector<Scalar> out;
  out.reserve(k);
  if (x.is_zero()) {
    for (unsigned j = 0; j < k; ++j) out.push_back(x);
    return out;
  }
  if (k == 1) return {x};
  Real re = x.re_real(bits), im = x.im_real(bits);
  Real mod = sqrt(re * re + im * im);
  Real root_mod = make_real(bits);
  mpfr_rootn_ui(detail::raw(root_mod), detail::raw(mod), k, MPFR_RNDN);
  Real theta = atan2(im, re);
  const Real two_pi = real_pi(bits) * 2;
  const mpz_class max_den("1000000000000");
  const Real tol = ldexp(real_from_long(1, bits), -static_cast<int>(bits / 2)) * (root_mod > 1 ? root_mod : real_from_long(1, bits));
  for (unsigned j = 0; j < k; ++j) {
    Real ang = (theta + two_pi * static_cast<long>(j)) / static_cast<long>(k);
    Scalar r = Scalar::floating(root_mod * cos(ang), root_mod * sin(ang));
    if (x.is_exact()) {
      if (auto cand = reconstruct_gaussian(r, max_den, tol); cand && pow(*cand, k) == x) {
        out.push_back(*cand);
        continue;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// First exact entry if one exists, otherwise the principal root.
inline Scalar preferred_root(const std::vector<Scalar>& roots) {
  for (const auto& r : roots) {
    if (r.is_exact()) return r;
  }
  return roots.front();
}

/// All solutions of zeta^k = 1, counterclockwise from 1. Exact backend only for
/// k in {1, 2, 4}, where every root is a Gaussian rational.
inline std::vector<Scalar> roots_of_unity(unsigned k, const ToleranceContext& ctx,
                                          Backend backend = Backend::floating) {
  if (k == 0) throw Error("roots_of_unity: k must be positive");
  if (backend == Backend::exact) {
    switch (k) {
      case 1: return {Scalar(1)};
      case 2: return {Scalar(1), Scalar(-1)};
      case 4: return {Scalar(1), Scalar::imag_unit(), Scalar(-1), -Scalar::imag_unit()};
      default: throw Error("roots_of_unity: exact backend supports k in {1, 2, 4} only");
    }
  }
  const unsigned bits = ctx.precision_bits;
  const Real two_pi = real_pi(bits) * 2;
  std::vector<Scalar> out;
  out.reserve(k);
  out.push_back(Scalar(1).to_float(bits));
  for (unsigned j = 1; j < k; ++j) {
    Real ang = two_pi * static_cast<long>(j) / static_cast<long>(k);
    Scalar z = Scalar::floating(cos(ang), sin(ang));
    if (4 * j == k || 4 * j == 3 * k) z = Scalar::floating(make_real(bits), sin(ang));
    if (2 * j == k) z = Scalar::floating(real_from_long(-1, bits), make_real(bits));
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace skewprod

#endif  // SKEWPROD_NUMERICS_HPP
