#ifndef SKEWPROD_ROOTS_HPP
#define SKEWPROD_ROOTS_HPP

// Simultaneous-iteration (Aberth-Ehrlich) complex root finder at MPFR precision
// with residual certification and cluster merging for repeated roots.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "skewprod/poly.hpp"

namespace skewprod {

struct RootCluster {
  Scalar value;
  int multiplicity = 1;
  double residual = 0.0;  // |P(value)| / sum |c_k| |value|^k
};

struct RootResult {
  std::vector<RootCluster> clusters;
  int iterations = 0;

  int total_multiplicity() const {
    int s = 0;
    for (const auto& c : clusters) s += c.multiplicity;
    return s;
  }
};

namespace detail {

struct Cx {
  Real re, im;
};

inline Cx cx_add(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cx cx_sub(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cx cx_mul(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Real cx_norm2(const Cx& a) { return a.re * a.re + a.im * a.im; }
inline Real cx_abs(const Cx& a) { return sqrt(cx_norm2(a)); }
inline Cx cx_div(const Cx& a, const Cx& b) {
  Real den = cx_norm2(b);
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

inline std::vector<Cx> to_cx(const UniPoly& p, unsigned bits) {
  std::vector<Cx> v;
  for (const auto& c : p.coeffs()) v.push_back({c.re_real(bits), c.im_real(bits)});
  return v;
}

/// p(z) and p'(z) by Horner.
inline void horner2(const std::vector<Cx>& c, const Cx& z, Cx& val, Cx& der, unsigned bits) {
  val = c.back();
  der = {make_real(bits), make_real(bits)};
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    der = cx_add(cx_mul(der, z), val);
    val = cx_add(cx_mul(val, z), c[i]);
  }
}

inline Real eval_scale(const std::vector<Cx>& c, const Cx& z, unsigned bits) {
  Real r = cx_abs(z), acc = make_real(bits);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + cx_abs(c[i]);
  return acc;
}

inline Real relative_residual(const std::vector<Cx>& c, const Cx& z, unsigned bits) {
  Cx v, d;
  horner2(c, z, v, d, bits);
  Real s = eval_scale(c, z, bits);
  if (s == 0) return make_real(bits);
  return cx_abs(v) / s;
}

}  // namespace detail

/// Radius used to merge approximations of one repeated root: eps_root^{1/4},
/// relative to max(1, |z|).
inline double cluster_radius(const ToleranceContext& ctx) { return std::pow(ctx.eps_root, 0.25); }

/// Orders scalars by real part, treating real parts within `tol` as equal, then by
/// imaginary part.
inline bool canonical_less(const Scalar& a, const Scalar& b, double tol) {
  const unsigned bits = std::max({a.precision(), b.precision(), 64u});
  Real ra = a.re_real(bits), rb = b.re_real(bits);
  if (abs(ra - rb) > real_from_double(tol, bits)) return ra < rb;
  return a.im_real(bits) < b.im_real(bits);
}

inline RootResult find_roots(const UniPoly& poly, const ToleranceContext& ctx) {
  const int deg = poly.degree();
  if (deg < 1) throw NumericError("find_roots: polynomial must be nonconstant");
  if (static_cast<std::size_t>(deg) > ctx.degree_cap) {
    throw NumericError("find_roots: degree " + std::to_string(deg) + " exceeds cap " + std::to_string(ctx.degree_cap));
  }
  const unsigned bits = std::max(ctx.precision_bits, poly.precision());
  RootResult out;

  // exact zero roots are split off
  int zeros = 0;
  while (poly.coeff(zeros).is_zero()) ++zeros;
  std::vector<Scalar> rest(poly.coeffs().begin() + zeros, poly.coeffs().end());
  const UniPoly p(std::move(rest), poly.var());
  const int n = p.degree();

  std::vector<detail::Cx> c = detail::to_cx(p, bits);
  const detail::Cx lead = c.back();
  for (auto& x : c) x = detail::cx_div(x, lead);

  std::vector<detail::Cx> z;
  if (n >= 1) {
    // Fujiwara-type radius, start on a slightly rotated circle
    Real radius = make_real(bits);
    for (int k = 0; k < n; ++k) {
      Real a = detail::cx_abs(c[static_cast<std::size_t>(k)]);
      if (a == 0) continue;
      Real r = exp(log(a) / static_cast<long>(n - k));
      if (r > radius) radius = r;
    }
    if (radius == 0) radius = real_from_long(1, bits);
    const Real two_pi = real_pi(bits) * 2;
    for (int k = 0; k < n; ++k) {
      Real ang = two_pi * k / n + real_from_double(0.4, bits);
      z.push_back({radius * cos(ang), radius * sin(ang)});
    }

    const Real stop = ldexp(real_from_long(1, bits), -static_cast<int>(bits) + 12);
    // |p(z)| below the rounding noise of Horner's rule cannot be improved further
    std::vector<Real> mags;
    for (const auto& x : c) mags.push_back(detail::cx_abs(x));
    const Real noise = ldexp(real_from_long(4 * (n + 1), bits), -static_cast<int>(bits));
    const int max_iter = 400;
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    for (int it = 0; it < max_iter; ++it) {
      out.iterations = it + 1;
      bool all_done = true;
      for (int k = 0; k < n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        if (done[uk]) continue;
        detail::Cx v, d;
        detail::horner2(c, z[uk], v, d, bits);
        if (detail::cx_norm2(v) == 0) {
          done[uk] = true;
          continue;
        }
        const Real r = detail::cx_abs(z[uk]);
        Real bound = mags.back();
        for (int k2 = n - 1; k2 >= 0; --k2) bound = bound * r + mags[static_cast<std::size_t>(k2)];
        const bool at_noise = detail::cx_abs(v) <= noise * bound;
        detail::Cx sum{make_real(bits), make_real(bits)};
        for (int j = 0; j < n; ++j) {
          if (j == k) continue;
          detail::Cx diff = detail::cx_sub(z[uk], z[static_cast<std::size_t>(j)]);
          if (detail::cx_norm2(diff) == 0) diff.re = ldexp(real_from_long(1, bits), -static_cast<int>(bits) / 2);
          sum = detail::cx_add(sum, detail::cx_div(detail::Cx{real_from_long(1, bits), make_real(bits)}, diff));
        }
        const detail::Cx ratio = detail::cx_norm2(d) == 0 ? v : detail::cx_div(v, d);
        const detail::Cx one{real_from_long(1, bits), make_real(bits)};
        detail::Cx denom = detail::cx_sub(one, detail::cx_mul(ratio, sum));
        if (detail::cx_norm2(denom) == 0) denom = one;
        const detail::Cx w = detail::cx_div(ratio, denom);
        z[uk] = detail::cx_sub(z[uk], w);
        Real scale = detail::cx_abs(z[uk]);
        if (scale < 1) scale = real_from_long(1, bits);
        if (at_noise || detail::cx_abs(w) <= stop * scale) done[uk] = true;
        else all_done = false;
      }
      if (all_done) break;
    }
  }

  // merge approximations of repeated roots
  const double rc = cluster_radius(ctx);
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Real s = detail::cx_abs(z[static_cast<std::size_t>(i)]);
      if (s < 1) s = real_from_long(1, bits);
      if (detail::cx_abs(detail::cx_sub(z[static_cast<std::size_t>(i)], z[static_cast<std::size_t>(j)])) <= real_from_double(rc, bits) * s) {
        parent[static_cast<std::size_t>(find(j))] = find(i);
      }
    }
  }
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) groups[static_cast<std::size_t>(find(i))].push_back(i);

  const Real limit = real_from_double(ctx.eps_root, bits);
  std::vector<std::string> failures;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    detail::Cx center{make_real(bits), make_real(bits)};
    for (int i : g) center = detail::cx_add(center, z[static_cast<std::size_t>(i)]);
    center.re /= static_cast<long>(g.size());
    center.im /= static_cast<long>(g.size());
    if (g.size() == 1) {
      for (int step = 0; step < 2; ++step) {
        detail::Cx v, d;
        detail::horner2(c, center, v, d, bits);
        if (detail::cx_norm2(d) == 0 || detail::cx_norm2(v) == 0) break;
        center = detail::cx_sub(center, detail::cx_div(v, d));
      }
    }
    Real res = detail::relative_residual(c, center, bits);
    if (res > limit) failures.push_back(format_real(res, 6));
    Scalar value = Scalar::floating(center.re, center.im);
    Real scale = detail::cx_abs(center);
    if (scale < 1) scale = real_from_long(1, bits);
    value = value.chop(real_from_double(ctx.eps_eq, bits) * scale);
    out.clusters.push_back({value, static_cast<int>(g.size()), to_double(res)});
  }
  if (!failures.empty()) {
    std::string msg = "root finder did not converge; residuals:";
    for (const auto& f : failures) msg += " " + f;
    throw NumericError(msg);
  }
  if (zeros > 0) out.clusters.push_back({Scalar(0).to_float(bits), zeros, 0.0});

  std::sort(out.clusters.begin(), out.clusters.end(),
            [&](const RootCluster& a, const RootCluster& b) { return canonical_less(a.value, b.value, rc); });
  return out;
}

}  // namespace skewprod

#endif  // SKEWPROD_ROOTS_HPP
