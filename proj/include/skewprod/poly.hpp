#ifndef SKEWPROD_POLY_HPP
#define SKEWPROD_POLY_HPP

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skewprod/numerics.hpp"

namespace skewprod {

/// Dense univariate polynomial, coefficients in ascending powers. The last
/// stored coefficient is structurally nonzero; the zero polynomial is empty.
class UniPoly {
 public:
  explicit UniPoly(char var = 'x') : var_(var) {}

  UniPoly(std::vector<Scalar> coeffs, char var = 'x') : c_(std::move(coeffs)), var_(var) { trim(); }

  static UniPoly constant(const Scalar& c, char var = 'x') { return UniPoly({c}, var); }

  static UniPoly monomial(const Scalar& c, int k, char var = 'x') {
    std::vector<Scalar> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return UniPoly(std::move(v), var);
  }

  static UniPoly identity(char var = 'x') { return UniPoly({Scalar(0), Scalar(1)}, var); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  char var() const { return var_; }
  std::span<const Scalar> coeffs() const { return c_; }

  Scalar coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Scalar(0);
    return c_[static_cast<std::size_t>(k)];
  }

  Scalar lead() const { return c_.empty() ? Scalar(0) : c_.back(); }

  UniPoly with_var(char v) const {
    UniPoly r = *this;
    r.var_ = v;
    return r;
  }

  bool is_exact() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_exact(); });
  }

  /// 0 when every coefficient is exact, else the widest float precision.
  unsigned precision() const {
    unsigned p = 0;
    for (const auto& s : c_) p = std::max(p, s.precision());
    return p;
  }

  UniPoly to_float(unsigned bits) const {
    std::vector<Scalar> v;
    v.reserve(c_.size());
    for (const auto& s : c_) v.push_back(s.to_float(bits));
    return UniPoly(std::move(v), var_);
  }

  Scalar operator()(const Scalar& x) const {
    if (c_.empty()) return Scalar(0);
    Scalar acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly(var_);
    std::vector<Scalar> v;
    v.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * Scalar(static_cast<long>(i)));
    return UniPoly(std::move(v), var_);
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& s : r.c_) s = -s;
    return r;
  }

  UniPoly& operator+=(const UniPoly& o) {
    adopt_var(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }

  UniPoly& operator-=(const UniPoly& o) { return *this += -o; }

  UniPoly& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const Scalar& s) { return a *= s; }
  friend UniPoly operator*(const Scalar& s, UniPoly a) { return a *= s; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly r(a.merged_var(b));
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }

  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  /// Structural equality (variable tags of nonconstant polynomials must agree).
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.c_ != b.c_) return false;
    return a.degree() <= 0 || a.var_ == b.var_;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  char merged_var(const UniPoly& o) const {
    if (is_constant()) return o.var_;
    if (!o.is_constant() && o.var_ != var_) {
      throw Error(std::string("variable mismatch: ") + var_ + " vs " + o.var_);
    }
    return var_;
  }

  void adopt_var(const UniPoly& o) { var_ = merged_var(o); }

  std::vector<Scalar> c_;
  char var_;
};

inline UniPoly derivative(const UniPoly& p) { return p.derivative(); }

inline UniPoly pow(const UniPoly& p, unsigned k) {
  UniPoly acc = UniPoly::constant(Scalar(1), p.var());
  UniPoly base = p;
  while (k > 0) {
    if (k & 1u) acc *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return acc;
}

/// outer(inner(x)), Horner in the outer polynomial. Result carries inner's variable.
inline UniPoly compose(const UniPoly& outer, const UniPoly& inner) {
  UniPoly acc(inner.var());
  const auto c = outer.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * inner;
    acc += UniPoly::constant(c[i], inner.var());
  }
  return acc;
}

/// Largest coefficient deviation |a_k - b_k|_inf relative to max(1, |b_k|_inf);
/// 0 exactly when both are exact and equal.
inline double max_deviation(const UniPoly& a, const UniPoly& b, unsigned bits = kDefaultPrecisionBits) {
  const int n = std::max(a.degree(), b.degree());
  Real worst = make_real(bits);
  for (int k = 0; k <= n; ++k) {
    const Scalar x = a.coeff(k), y = b.coeff(k);
    if (x.is_exact() && y.is_exact() && x == y) continue;
    Real scale = real_from_long(1, bits);
    Real ny = y.norm_inf(bits);
    if (ny > scale) scale = ny;
    Real dev = distance(x, y, bits) / scale;
    if (dev > worst) worst = dev;
  }
  return to_double(worst);
}

inline bool approx_equal(const UniPoly& a, const UniPoly& b, const ToleranceContext& ctx) {
  if (a.is_exact() && b.is_exact()) return std::ranges::equal(a.coeffs(), b.coeffs());
  const int n = std::max(a.degree(), b.degree());
  for (int k = 0; k <= n; ++k) {
    if (!near(a.coeff(k), b.coeff(k), ctx)) return false;
  }
  return true;
}

/// Drops float coefficients below eps_eq * max(1, max |coeff|); exact coefficients are kept.
inline UniPoly chop(const UniPoly& p, const ToleranceContext& ctx) {
  if (p.is_exact()) return p;
  const unsigned bits = p.precision();
  Real scale = real_from_long(1, bits);
  for (const auto& c : p.coeffs()) {
    Real n = c.norm_inf(bits);
    if (n > scale) scale = n;
  }
  const Real thr = real_from_double(ctx.eps_eq, bits) * scale;
  std::vector<Scalar> v;
  for (const auto& c : p.coeffs()) v.push_back(c.chop(thr));
  return UniPoly(std::move(v), p.var());
}

/// Invertible affine map x -> slope*x + intercept.
struct AffineMap1 {
  Scalar slope{1};
  Scalar intercept{0};

  AffineMap1() = default;
  AffineMap1(Scalar s, Scalar b) : slope(std::move(s)), intercept(std::move(b)) {
    if (slope.is_zero()) throw Error("affine map slope must be nonzero");
  }

  static AffineMap1 identity() { return {}; }
  static AffineMap1 shift(const Scalar& c) { return AffineMap1(Scalar(1), c); }
  static AffineMap1 scale(const Scalar& s) { return AffineMap1(s, Scalar(0)); }

  Scalar operator()(const Scalar& x) const { return slope * x + intercept; }

  UniPoly as_poly(char var = 'x') const { return UniPoly({intercept, slope}, var); }

  AffineMap1 inverse() const { return AffineMap1(Scalar(1) / slope, -intercept / slope); }

  bool is_exact() const { return slope.is_exact() && intercept.is_exact(); }

  friend bool operator==(const AffineMap1& a, const AffineMap1& b) {
    return a.slope == b.slope && a.intercept == b.intercept;
  }
};

/// (a o b)(x) = a(b(x))
inline AffineMap1 compose(const AffineMap1& a, const AffineMap1& b) {
  return AffineMap1(a.slope * b.slope, a.slope * b.intercept + a.intercept);
}

/// A^{-1} o P o A
inline UniPoly conjugate_affine(const UniPoly& p, const AffineMap1& a) {
  UniPoly inner = compose(p, a.as_poly(p.var()));
  inner -= UniPoly::constant(a.intercept, p.var());
  return inner * (Scalar(1) / a.slope);
}

/// Bivariate polynomial stored dense in the fiber variable with univariate
/// coefficients in the base variable: sum_k coeff_fiber(k)(base) * fiber^k.
class BiPoly {
 public:
  explicit BiPoly(char base = 'z', char fiber = 'w') : base_(base), fiber_(fiber) {}

  BiPoly(std::vector<UniPoly> by_fiber_power, char base = 'z', char fiber = 'w')
      : c_(std::move(by_fiber_power)), base_(base), fiber_(fiber) {
    for (auto& u : c_) u = u.with_var(base_);
    trim();
  }

  static BiPoly from_base(const UniPoly& p, char base = 'z', char fiber = 'w') {
    return BiPoly({p}, base, fiber);
  }

  static BiPoly from_fiber(const UniPoly& q, char base = 'z', char fiber = 'w') {
    std::vector<UniPoly> v;
    for (const auto& c : q.coeffs()) v.push_back(UniPoly::constant(c, base));
    return BiPoly(std::move(v), base, fiber);
  }

  static BiPoly constant(const Scalar& c, char base = 'z', char fiber = 'w') {
    return BiPoly({UniPoly::constant(c, base)}, base, fiber);
  }

  static BiPoly base_var(char base = 'z', char fiber = 'w') {
    return from_base(UniPoly::identity(base), base, fiber);
  }

  static BiPoly fiber_var(char base = 'z', char fiber = 'w') {
    return BiPoly({UniPoly(base), UniPoly::constant(Scalar(1), base)}, base, fiber);
  }

  /// c * base^i * fiber^j
  static BiPoly monomial(const Scalar& c, int i, int j, char base = 'z', char fiber = 'w') {
    std::vector<UniPoly> v(static_cast<std::size_t>(j) + 1, UniPoly(base));
    v.back() = UniPoly::monomial(c, i, base);
    return BiPoly(std::move(v), base, fiber);
  }

  char base() const { return base_; }
  char fiber() const { return fiber_; }
  bool is_zero() const { return c_.empty(); }
  std::span<const UniPoly> fiber_coeffs() const { return c_; }

  int deg_fiber() const { return static_cast<int>(c_.size()) - 1; }

  int deg_base() const {
    int d = -1;
    for (const auto& u : c_) d = std::max(d, u.degree());
    return d;
  }

  /// max over k of (k + deg coeff_fiber(k)); -1 for zero.
  int total_degree() const {
    int d = -1;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (!c_[k].is_zero()) d = std::max(d, static_cast<int>(k) + c_[k].degree());
    }
    return d;
  }

  UniPoly coeff_fiber(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return UniPoly(base_);
    return c_[static_cast<std::size_t>(k)];
  }

  Scalar coeff(int base_power, int fiber_power) const { return coeff_fiber(fiber_power).coeff(base_power); }

  bool depends_on_fiber() const { return c_.size() > 1; }

  bool is_exact() const {
    return std::all_of(c_.begin(), c_.end(), [](const UniPoly& u) { return u.is_exact(); });
  }

  unsigned precision() const {
    unsigned p = 0;
    for (const auto& u : c_) p = std::max(p, u.precision());
    return p;
  }

  BiPoly to_float(unsigned bits) const {
    std::vector<UniPoly> v;
    for (const auto& u : c_) v.push_back(u.to_float(bits));
    return BiPoly(std::move(v), base_, fiber_);
  }

  BiPoly with_vars(char base, char fiber) const {
    BiPoly r = *this;
    r.base_ = base;
    r.fiber_ = fiber;
    for (auto& u : r.c_) u = u.with_var(base);
    return r;
  }

  /// Specialize the base variable: a polynomial in the fiber variable.
  UniPoly eval_base(const Scalar& z) const {
    std::vector<Scalar> v;
    v.reserve(c_.size());
    for (const auto& u : c_) v.push_back(u(z));
    return UniPoly(std::move(v), fiber_);
  }

  /// Specialize the fiber variable: a polynomial in the base variable.
  UniPoly eval_fiber(const Scalar& w) const {
    UniPoly acc(base_);
    for (std::size_t k = c_.size(); k-- > 0;) {
      acc = acc * w;
      acc += c_[k];
    }
    return acc;
  }

  Scalar operator()(const Scalar& z, const Scalar& w) const { return eval_base(z)(w); }

  BiPoly deriv_fiber() const {
    std::vector<UniPoly> v;
    for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k] * Scalar(static_cast<long>(k)));
    return BiPoly(std::move(v), base_, fiber_);
  }

  BiPoly deriv_base() const {
    std::vector<UniPoly> v;
    for (const auto& u : c_) v.push_back(u.derivative());
    return BiPoly(std::move(v), base_, fiber_);
  }

  BiPoly operator-() const {
    BiPoly r = *this;
    for (auto& u : r.c_) u = -u;
    return r;
  }

  BiPoly& operator+=(const BiPoly& o) {
    check_vars(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), UniPoly(base_));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }

  BiPoly& operator-=(const BiPoly& o) { return *this += -o; }

  BiPoly& operator*=(const Scalar& s) {
    for (auto& u : c_) u *= s;
    trim();
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const Scalar& s) { return a *= s; }
  friend BiPoly operator*(const Scalar& s, BiPoly a) { return a *= s; }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    a.check_vars(b);
    BiPoly r(a.base_, a.fiber_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, UniPoly(a.base_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (!b.c_[j].is_zero()) r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    r.trim();
    return r;
  }

  /// Multiply by a polynomial in the base variable.
  friend BiPoly operator*(const BiPoly& a, const UniPoly& zpoly) {
    BiPoly r = a;
    for (auto& u : r.c_) u = u * zpoly.with_var(a.base_);
    r.trim();
    return r;
  }

  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t k = 0; k < a.c_.size(); ++k) {
      if (a.c_[k].coeffs().size() != b.c_[k].coeffs().size()) return false;
      for (std::size_t i = 0; i < a.c_[k].coeffs().size(); ++i) {
        if (!(a.c_[k].coeffs()[i] == b.c_[k].coeffs()[i])) return false;
      }
    }
    return true;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  void check_vars(const BiPoly& o) const {
    if (base_ != o.base_ || fiber_ != o.fiber_) {
      throw Error(std::string("variable mismatch: (") + base_ + "," + fiber_ + ") vs (" + o.base_ + "," +
                  o.fiber_ + ")");
    }
  }

  std::vector<UniPoly> c_;
  char base_;
  char fiber_;
};

inline BiPoly deriv_w(const BiPoly& q) { return q.deriv_fiber(); }
inline BiPoly deriv_z(const BiPoly& q) { return q.deriv_base(); }

/// [w^k] q as a polynomial in the base variable (zero past the fiber degree).
inline UniPoly coeff_w(const BiPoly& q, int k) { return q.coeff_fiber(k); }

inline BiPoly pow(const BiPoly& p, unsigned k) {
  BiPoly acc = BiPoly::constant(Scalar(1), p.base(), p.fiber());
  BiPoly base = p;
  while (k > 0) {
    if (k & 1u) acc *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return acc;
}

/// u(X) for a univariate u and a bivariate X, Horner in u.
inline BiPoly compose(const UniPoly& u, const BiPoly& x) {
  BiPoly acc(x.base(), x.fiber());
  const auto c = u.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * x;
    acc += BiPoly::constant(c[i], x.base(), x.fiber());
  }
  return acc;
}

/// F(X, Y): substitute X for F's base variable and Y for its fiber variable.
/// X and Y must share variables; the result lives in those variables.
inline BiPoly substitute(const BiPoly& f, const BiPoly& x, const BiPoly& y) {
  BiPoly acc(x.base(), x.fiber());
  const auto c = f.fiber_coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * y;
    acc += compose(c[k], x);
  }
  return acc;
}

/// F(z, Y(z, w)): keep the base variable, substitute Y for the fiber variable.
inline BiPoly substitute_fiber(const BiPoly& f, const BiPoly& y) {
  BiPoly acc(f.base(), f.fiber());
  const auto c = f.fiber_coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * y;
    acc += BiPoly::from_base(c[k], f.base(), f.fiber());
  }
  return acc;
}

/// F(a(z), w) for a univariate substitution in the base variable.
inline BiPoly substitute_base(const BiPoly& f, const UniPoly& a) {
  std::vector<UniPoly> v;
  for (const auto& u : f.fiber_coeffs()) v.push_back(compose(u, a.with_var(f.base())));
  return BiPoly(std::move(v), f.base(), f.fiber());
}

inline double max_deviation(const BiPoly& a, const BiPoly& b, unsigned bits = kDefaultPrecisionBits) {
  double worst = 0.0;
  const int n = std::max(a.deg_fiber(), b.deg_fiber());
  for (int k = 0; k <= n; ++k) worst = std::max(worst, max_deviation(a.coeff_fiber(k), b.coeff_fiber(k), bits));
  return worst;
}

inline bool approx_equal(const BiPoly& a, const BiPoly& b, const ToleranceContext& ctx) {
  if (a.is_exact() && b.is_exact()) return a == b;
  const int n = std::max(a.deg_fiber(), b.deg_fiber());
  for (int k = 0; k <= n; ++k) {
    if (!approx_equal(a.coeff_fiber(k), b.coeff_fiber(k), ctx)) return false;
  }
  return true;
}

inline BiPoly chop(const BiPoly& p, const ToleranceContext& ctx) {
  if (p.is_exact()) return p;
  const unsigned bits = p.precision();
  Real scale = real_from_long(1, bits);
  for (const auto& u : p.fiber_coeffs()) {
    for (const auto& c : u.coeffs()) {
      Real n = c.norm_inf(bits);
      if (n > scale) scale = n;
    }
  }
  const Real thr = real_from_double(ctx.eps_eq, bits) * scale;
  std::vector<UniPoly> v;
  for (const auto& u : p.fiber_coeffs()) {
    std::vector<Scalar> cs;
    for (const auto& c : u.coeffs()) cs.push_back(c.chop(thr));
    v.emplace_back(std::move(cs), p.base());
  }
  return BiPoly(std::move(v), p.base(), p.fiber());
}

/// A polynomial map of the plane, both coordinates in the same two variables.
struct PlaneMap {
  BiPoly first;
  BiPoly second;
};

/// (F o G)(u, v) = F(G(u, v)).
inline PlaneMap compose(const PlaneMap& f, const PlaneMap& g) {
  return {substitute(f.first, g.first, g.second), substitute(f.second, g.first, g.second)};
}

// ---- canonical printing ---------------------------------------------------

namespace detail {

inline std::string monomial_text(char base, int i, char fiber, int j) {
  std::string s;
  auto var = [](char v, int e) {
    std::string t(1, v);
    if (e > 1) t += "^" + std::to_string(e);
    return t;
  };
  if (i > 0) s += var(base, i);
  if (j > 0) {
    if (!s.empty()) s += "*";
    s += var(fiber, j);
  }
  return s;
}

/// Append one term `c * mono` to a sum under construction.
inline void append_term(std::string& out, const Scalar& c, const std::string& mono, int digits) {
  std::string cs = to_string(c, digits);
  bool negative = false;
  if (!cs.empty() && cs.front() == '-') {
    negative = true;
    cs.erase(0, 1);
  }
  std::string body;
  if (mono.empty()) {
    body = cs;
  } else if (cs == "1") {
    body = mono;
  } else {
    body = cs + "*" + mono;
  }
  if (out.empty()) {
    out = negative ? "-" + body : body;
  } else {
    out += negative ? " - " : " + ";
    out += body;
  }
}

}  // namespace detail

/// Descending powers, `*` between factors, exact coefficients as rationals.
inline std::string to_string(const UniPoly& p, int digits = 0) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const Scalar c = p.coeff(k);
    if (c.is_zero()) continue;
    detail::append_term(out, c, k == 0 ? "" : detail::monomial_text(p.var(), 0, p.var(), k), digits);
  }
  return out;
}

/// Terms ordered by descending fiber power, then descending base power; the
/// base variable is written first inside a monomial (e.g. `z*w`).
inline std::string to_string(const BiPoly& q, int digits = 0) {
  if (q.is_zero()) return "0";
  std::string out;
  for (int j = q.deg_fiber(); j >= 0; --j) {
    const UniPoly u = q.coeff_fiber(j);
    for (int i = u.degree(); i >= 0; --i) {
      const Scalar c = u.coeff(i);
      if (c.is_zero()) continue;
      detail::append_term(out, c, detail::monomial_text(q.base(), i, q.fiber(), j), digits);
    }
  }
  return out;
}

inline std::string to_string(const PlaneMap& m, int digits = 0) {
  return "(" + to_string(m.first, digits) + ", " + to_string(m.second, digits) + ")";
}

inline std::string to_string(const AffineMap1& a, char var = 'x', int digits = 0) {
  return to_string(a.as_poly(var), digits);
}

}  // namespace skewprod

#endif  // SKEWPROD_POLY_HPP
