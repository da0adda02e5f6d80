#include <gtest/gtest.h>

#include "support.hpp"

using namespace skewprod;
using gen::F;
using gen::P;

namespace {

const ToleranceContext ctx;

double dist(const Scalar& a, const Scalar& b) { return to_double(distance(a, b, 256)); }

bool contains(const std::vector<Scalar>& v, const Scalar& x, double tol = 1e-40) {
  for (const auto& s : v)
    if (dist(s, x) < tol) return true;
  return false;
}

}  // namespace

TEST(SkewProduct, DegreeMismatch) {
  EXPECT_THROW(F("(z^2, w^3)"), DegreeError);
  EXPECT_THROW(F("(z, w)"), DegreeError);
  EXPECT_THROW(SkewProduct::from_map(parse_map("(z^2 + w, w^2)").map), Error);
}

TEST(IsRegular, Examples) {
  EXPECT_TRUE(is_regular(F("(z^2, w^2 - 2*z)")));
  EXPECT_FALSE(is_regular(F("(z^2, w^2 - 2*z^3)")));
  EXPECT_FALSE(is_regular(F("(z^2, z*w^2)")));
}

TEST(IsRegular, ResultantCrossCheckAgrees) {
  for (const char* s : {"(z^2, w^2 - 2*z)", "(z^2, w^2 - 2*z^3)", "(z^2, z*w^2)", "(z^3 + z, 2*w^3 + z^2*w - z^3)",
                        "(z^3, w^3 + z^2*w^2)"}) {
    const auto r = regularity_report(F(s));
    EXPECT_TRUE(r.agree) << s;
  }
}

TEST(FiberIterate, Examples) {
  EXPECT_EQ(fiber_iterate(F("(z^2, w^2)"), Scalar::rational(3, 7), 2), P("w^4"));
  EXPECT_EQ(fiber_iterate(F("(z^2, w^2 - 2*z)"), Scalar(1), 1), P("w^2 - 2"));
  EXPECT_EQ(fiber_iterate(F("(z^2, w^2 - 2*z)"), Scalar(0), 1), P("w^2"));
}

TEST(MultiplierPair, Examples) {
  auto a = multiplier_pair(F("(z^2, w^2)"), Scalar(1), Scalar(1), 1, ctx);
  EXPECT_EQ(a.first, Scalar(2));
  EXPECT_EQ(a.second, Scalar(2));
  auto b = multiplier_pair(F("(z^2, w^2 - 2*z)"), Scalar(1), Scalar(2), 1, ctx);
  EXPECT_EQ(b.first, Scalar(2));
  EXPECT_EQ(b.second, Scalar(4));
  auto c = multiplier_pair(F("(z^2, w^2)"), Scalar(0), Scalar(0), 1, ctx);
  EXPECT_EQ(c.first, Scalar(0));
  EXPECT_EQ(c.second, Scalar(0));
  EXPECT_THROW(multiplier_pair(F("(z^2, w^2)"), Scalar(2), Scalar(0), 1, ctx), NumericError);
}

TEST(BasePeriodicPoints, PowerMapFixed) {
  const auto pts = base_periodic_points(F("(z^2, w^2)"), 1, ctx);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_LT(dist(pts[0].z, Scalar(0)), 1e-60);
  EXPECT_LT(dist(pts[0].base_multiplier, Scalar(0)), 1e-60);
  EXPECT_LT(dist(pts[1].z, Scalar(1)), 1e-60);
  EXPECT_LT(dist(pts[1].base_multiplier, Scalar(2)), 1e-60);
}

// z^4 - z = z (z - 1)(z^2 + z + 1): exact period 2 leaves the primitive cube roots.
TEST(BasePeriodicPoints, PowerMapPeriodTwo) {
  const auto pts = base_periodic_points(F("(z^2, w^2)"), 2, ctx);
  ASSERT_EQ(pts.size(), 2u);
  for (const auto& pt : pts) {
    EXPECT_LT(dist(pow(pt.z, 3), Scalar(1)), 1e-60);
    EXPECT_LT(dist(pt.base_multiplier, Scalar(4)), 1e-60);
    EXPECT_FALSE(pt.ambiguous);
  }
}

TEST(BasePeriodicPoints, ChebyshevFixed) {
  const auto pts = base_periodic_points(F("(z^2 - 2, w^2)"), 1, ctx);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_LT(dist(pts[0].z, Scalar(-1)), 1e-60);
  EXPECT_LT(dist(pts[0].base_multiplier, Scalar(-2)), 1e-60);
  EXPECT_LT(dist(pts[1].z, Scalar(2)), 1e-60);
  EXPECT_LT(dist(pts[1].base_multiplier, Scalar(4)), 1e-60);
}

TEST(BasePeriodicPoints, CapExceeded) {
  ToleranceContext small = ctx;
  small.degree_cap = 8;
  EXPECT_THROW(base_periodic_points(F("(z^2, w^2)"), 4, small), NumericError);
}

TEST(FiberPeriodicPoints, Examples) {
  auto pts = fiber_periodic_points(F("(z^2, w^2 - 2*z)"), Scalar(1), 1, ctx);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_LT(dist(*pts[0].w, Scalar(-1)), 1e-60);
  EXPECT_LT(dist(*pts[0].fiber_multiplier, Scalar(-2)), 1e-60);
  EXPECT_LT(dist(*pts[1].w, Scalar(2)), 1e-60);
  EXPECT_LT(dist(*pts[1].fiber_multiplier, Scalar(4)), 1e-60);

  pts = fiber_periodic_points(F("(z^2, w^2)"), Scalar(1), 1, ctx);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_LT(dist(*pts[0].fiber_multiplier, Scalar(0)), 1e-60);
  EXPECT_LT(dist(*pts[1].fiber_multiplier, Scalar(2)), 1e-60);

  pts = fiber_periodic_points(F("(z^2, w^2 - 2*z)"), Scalar(0), 1, ctx);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_LT(dist(*pts[0].w, Scalar(0)), 1e-60);
  EXPECT_LT(dist(*pts[1].w, Scalar(1)), 1e-60);
}

TEST(Semiconjugacy, Examples) {
  const PlaneMap f = parse_map("(z^2, w^2 - 2*z)").map;
  const PlaneMap pi = parse_map("(u^2, u*v)").map;
  const auto a = verify_semiconjugacy(f, pi, parse_map("(u^2, v^2 - 2)").map, ctx);
  EXPECT_TRUE(a.holds);
  EXPECT_TRUE(a.residual.second.is_zero());

  const PlaneMap g = parse_map("(z^2, w^2)").map;
  EXPECT_TRUE(verify_semiconjugacy(g, parse_map("(z, w)").map, g, ctx).holds);

  const auto c = verify_semiconjugacy(f, pi, parse_map("(u^2, v^2)").map, ctx);
  EXPECT_FALSE(c.holds);
  EXPECT_EQ(c.residual.second, parse_poly("-2*u^2").poly);
  EXPECT_TRUE(c.residual.first.is_zero());
}

// For regular f the slots feeding c(z) and phi(z) have bounded degree.
TEST(Property, RegularCoefficientDegrees) {
  gen::Rng rng(61);
  for (int t = 0; t < 100; ++t) {
    const int d = static_cast<int>(rng.integer(2, 5));
    std::vector<UniPoly> cs;
    for (int j = 0; j < d; ++j) cs.push_back(rng.poly(d - j, 'z'));
    cs.push_back(UniPoly::constant(rng.nonzero_gaussian(), 'z'));
    const SkewProduct f(rng.poly(d, 'z'), BiPoly(cs, 'z', 'w'));
    ASSERT_TRUE(is_regular(f));
    EXPECT_LE(coeff_w(f.q(), d - 1).degree(), 1);
    EXPECT_LE(coeff_w(f.q(), d - 2).degree(), 2);
  }
}

TEST(Property, FiberCocycle) {
  gen::Rng rng(62);
  for (int t = 0; t < 30; ++t) {
    const SkewProduct f(rng.poly(2, 'z'), BiPoly({rng.poly(2, 'z'), rng.poly(1, 'z'), UniPoly::constant(Scalar(1), 'z')}, 'z', 'w'));
    const Scalar z = rng.gaussian(3, 2);
    const int m = static_cast<int>(rng.integer(0, 2)), n = static_cast<int>(rng.integer(0, 2));
    const Scalar zm = base_iterate(f.p(), m)(z);
    EXPECT_EQ(fiber_iterate(f, z, m + n), compose(fiber_iterate(f, zm, n), fiber_iterate(f, z, m)));
  }
}

// Chain-rule multiplier against the formal derivative of Q_{z0}^n.
TEST(Property, ChainRuleMatchesFormalDerivative) {
  const SkewProduct f = F("(z^2 - 1, w^2 + z*w - 1/3)");
  for (int n = 1; n <= 3; ++n) {
    for (const auto& pt : base_periodic_points(f, n, ctx)) {
      for (const auto& fp : fiber_periodic_points(f, pt.z, n, ctx)) {
        const Scalar formal = fiber_iterate(f, pt.z, n).derivative()(*fp.w);
        EXPECT_LT(dist(formal, *fp.fiber_multiplier) / std::max(1.0, to_double(formal.abs_value(256))), 1e-40);
      }
    }
  }
}

TEST(Property, PeriodicCountWithMultiplicity) {
  const SkewProduct f = F("(z^2 + 1/5*i, w^2)");
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(base_periodic_roots(f, n, ctx).total_multiplicity(), 1 << n);
}

// (z^d, w^d): every base point of exact period n has multiplier d^n, except z = 0.
TEST(Property, PowerModelMultipliers) {
  for (int d = 2; d <= 3; ++d) {
    std::string s = "(z^" + std::to_string(d) + ", w^" + std::to_string(d) + ")";
    const SkewProduct f = F(s);
    for (int n = 1; n <= 3; ++n) {
      double dn = std::pow(d, n);
      for (const auto& pt : base_periodic_points(f, n, ctx)) {
        if (dist(pt.z, Scalar(0)) < 1e-60) {
          EXPECT_LT(dist(pt.base_multiplier, Scalar(0)), 1e-60);
        } else {
          EXPECT_LT(dist(pt.base_multiplier, Scalar(static_cast<long>(dn))), 1e-50);
        }
      }
    }
  }
}

TEST(BaseIterate, Composition) {
  EXPECT_EQ(base_iterate(P("z^2 - 2"), 2), P("z^4 - 4*z^2 + 2"));
  EXPECT_TRUE(contains({Scalar(1)}, Scalar(1)));
}
