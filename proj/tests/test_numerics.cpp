#include <gtest/gtest.h>

#include "support.hpp"

using namespace skewprod;

namespace {

ToleranceContext with_eps(double eps) {
  ToleranceContext c;
  c.eps_eq = eps;
  return c;
}

}  // namespace

TEST(ScalarEq, IdenticalRationals) {
  const ToleranceContext ctx;
  EXPECT_TRUE(scalar_eq(Scalar::rational(1, 2), Scalar::rational(1, 2), ctx));
  EXPECT_FALSE(scalar_eq(Scalar::rational(1, 2), Scalar::rational(1, 3), ctx));
}

// A 1e-30 imaginary gap is below a 1e-20 threshold and above a 1e-40 one.
TEST(ScalarEq, ThresholdIsMaxComponentDistance) {
  const Scalar a = Scalar::floating(1.0, 0.0, 256);
  const Scalar b = Scalar::floating(real_from_long(1, 256), real_from_double(1e-30, 256));
  EXPECT_TRUE(scalar_eq(a, b, with_eps(1e-20)));
  EXPECT_FALSE(scalar_eq(a, b, with_eps(1e-40)));
}

TEST(ScalarEq, DecimalExpansionOfOneThird) {
  const Scalar a = parse_scalar("0.3333333333", {.backend = Backend::floating});
  const Scalar third = Scalar::rational(1, 3).to_float(256);
  EXPECT_TRUE(scalar_eq(a, third, with_eps(1e-9)));
  EXPECT_FALSE(scalar_eq(a, third, with_eps(1e-12)));
}

TEST(ScalarEq, BackendMismatchThrows) {
  const ToleranceContext ctx;
  EXPECT_THROW(scalar_eq(Scalar(1), Scalar(1).to_float(128), ctx), BackendMismatch);
}

TEST(Scalar, ExactInvariantsLowestTerms) {
  const Scalar s(mpq_class(6, -4), mpq_class(0));
  EXPECT_EQ(s.exact().re.get_num(), -3);
  EXPECT_EQ(s.exact().re.get_den(), 2);
}

TEST(Scalar, NonFiniteRejected) {
  EXPECT_THROW(Scalar::floating(std::numeric_limits<double>::infinity(), 0.0, 64), Error);
  EXPECT_THROW(Scalar::floating(std::nan(""), 0.0, 64), Error);
}

TEST(Scalar, DivisionByZeroThrows) { EXPECT_THROW(Scalar(1) / Scalar(0), std::domain_error); }

TEST(Scalar, Printing) {
  EXPECT_EQ(to_string(Scalar::rational(1, 2, -3, 4)), "(1/2 - 3/4i)");
  EXPECT_EQ(to_string(Scalar::rational(0, 1, 3, 4)), "3/4i");
  EXPECT_EQ(to_string(Scalar::imag_unit()), "i");
  EXPECT_EQ(to_string(Scalar(-7)), "-7");
}

TEST(RootsOfUnity, SmallOrdersExact) {
  const ToleranceContext ctx;
  auto r1 = roots_of_unity(1, ctx, Backend::exact);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_EQ(r1[0], Scalar(1));
  auto r2 = roots_of_unity(2, ctx, Backend::exact);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_EQ(r2[0], Scalar(1));
  EXPECT_EQ(r2[1], Scalar(-1));
  EXPECT_THROW(roots_of_unity(3, ctx, Backend::exact), Error);
}

// Oracle: |zeta^3 - 1| residual and distinctness, computed from the returned values.
TEST(RootsOfUnity, CubeRootsFloat) {
  const ToleranceContext ctx;
  auto r = roots_of_unity(3, ctx);
  ASSERT_EQ(r.size(), 3u);
  for (const auto& z : r) {
    EXPECT_LE(to_double(distance(pow(z, 3), Scalar(1), 256)), ctx.eps_root);
  }
  EXPECT_GT(to_double(distance(r[1], r[2], 256)), 1.0);
  EXPECT_NEAR(to_double(r[1].re_real(256)), -0.5, 1e-15);
  EXPECT_NEAR(to_double(r[1].im_real(256)), std::sqrt(3.0) / 2, 1e-15);
}

TEST(RootsOfUnity, PropertyEveryRootSatisfiesEquation) {
  const ToleranceContext ctx;
  for (unsigned k = 1; k <= 12; ++k) {
    for (const auto& z : roots_of_unity(k, ctx)) EXPECT_TRUE(scalar_eq(pow(z, k), Scalar(1).to_float(256), ctx)) << k;
  }
}

TEST(NthRoots, ExactWhenGaussianRational) {
  const ToleranceContext ctx;
  auto r = nth_roots(Scalar(-8), 3, ctx);
  ASSERT_EQ(r.size(), 3u);
  int exact = 0;
  for (const auto& s : r) {
    if (s.is_exact()) {
      ++exact;
      EXPECT_EQ(s, Scalar(-2));
    }
  }
  EXPECT_EQ(exact, 1);
  auto sq = nth_roots(Scalar(-1), 2, ctx);
  EXPECT_TRUE(sq[0].is_exact());
  EXPECT_EQ(pow(sq[0], 2), Scalar(-1));
}

TEST(Rational, ReconstructPi) {
  const Real pi = real_pi(256);
  auto q = rational_reconstruct(pi, mpz_class(200), real_from_double(1e-6, 256));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, mpq_class(355, 113));
}

TEST(FieldAxioms, PropertyRandomGaussianRationals) {
  gen::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const Scalar a = rng.gaussian(), b = rng.gaussian(), c = rng.gaussian();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + (-a), Scalar(0));
    if (!a.is_zero()) {
      EXPECT_EQ(a * (Scalar(1) / a), Scalar(1));
    }
  }
}

TEST(RoundTrip, PropertyExactFloatExact) {
  gen::Rng rng(12);
  const Real tol = ldexp(real_from_long(1, 160), -100);
  for (int i = 0; i < 300; ++i) {
    mpq_class re(rng.integer(-1000000, 1000000), rng.integer(1, 1000000));
    mpq_class im(rng.integer(-1000000, 1000000), rng.integer(1, 1000000));
    re.canonicalize();
    im.canonicalize();
    const Scalar s(re, im);
    const auto back = reconstruct_gaussian(s.to_float(160), mpz_class(1000000), tol);
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, s);
  }
}

TEST(Tolerance, RelativeWithAbsoluteFloor) {
  const ToleranceContext ctx = with_eps(1e-20);
  const Scalar big = Scalar::floating(1e30, 0.0, 256);
  const Scalar big2 = Scalar::floating(real_from_double(1e30, 256) + real_from_long(1000, 256), make_real(256));
  EXPECT_TRUE(near(big, big2, ctx));
  EXPECT_FALSE(near(Scalar::floating(0.0, 0.0, 256), Scalar::floating(1e-15, 0.0, 256), ctx));
}

TEST(Tolerance, ValidateRejectsNonPositive) {
  ToleranceContext ctx;
  ctx.eps_eq = 0;
  EXPECT_THROW(ctx.validate(), Error);
}
