#include <gtest/gtest.h>

#include "support.hpp"

using namespace skewprod;
using gen::P;
using gen::Q;

TEST(Derivative, DicksonThreeInX) {
  // d/dx of x^3 - 3 a x, with a held as the base variable
  const BiPoly d3 = parse_poly("x^3 - 3*a*x").poly;
  EXPECT_EQ(to_string(deriv_w(d3)), "3*x^2 - 3*a");
}

TEST(Derivative, FiberDerivative) {
  EXPECT_EQ(deriv_w(Q("w^2 - 2*z")), Q("2*w"));
  EXPECT_EQ(deriv_z(Q("w^2 - 2*z")), Q("-2"));
}

TEST(Arithmetic, TimesZero) {
  EXPECT_TRUE((P("x^3 + 2*x") * UniPoly(std::vector<Scalar>{}, 'x')).is_zero());
}

TEST(Compose, Examples) {
  EXPECT_EQ(compose(P("x^2"), P("x^2")), P("x^4"));
  EXPECT_EQ(compose(P("x^2 - 2"), P("x^2 - 2")), P("x^4 - 4*x^2 + 2"));
  const UniPoly p = P("3*x^3 - x + 1/2");
  EXPECT_EQ(compose(p, UniPoly::identity('x')), p);
}

TEST(ConjugateAffine, Examples) {
  EXPECT_EQ(conjugate_affine(P("x^2"), AffineMap1::identity()), P("x^2"));
  // A^{-1}(P(A(x))) = (x + 1)^2 + 1 - 1
  const UniPoly c = conjugate_affine(P("x^2 + 1"), AffineMap1::shift(Scalar(1)));
  EXPECT_EQ(c, P("x^2 + 2*x + 1"));
  for (int x = -3; x <= 3; ++x) EXPECT_EQ(c(Scalar(x)), Scalar((x + 1) * (x + 1)));
}

// L(x) = i x with i^2 = -1 takes D_3(x, -1) = x^3 + 3x to i^2 T_3 = -T_3.
TEST(ConjugateAffine, ScalingGivesLambdaPowerTimesChebyshev) {
  const UniPoly d = P("x^3 + 3*x");
  EXPECT_EQ(conjugate_affine(d, AffineMap1::scale(Scalar::imag_unit())), P("-x^3 + 3*x"));
}

TEST(CoeffW, ReadOff) {
  const BiPoly q = Q("w^2 - 2*z");
  EXPECT_TRUE(coeff_w(q, 1).is_zero());
  EXPECT_EQ(coeff_w(q, 0), P("-2*z"));
  EXPECT_EQ(coeff_w(q, 2), UniPoly::constant(Scalar(1), 'z'));
  EXPECT_TRUE(coeff_w(q, 7).is_zero());
}

TEST(BiPoly, TotalDegree) {
  EXPECT_EQ(Q("w^3 - 3*z^2*w").total_degree(), 3);
  EXPECT_EQ(Q("z*w^2").total_degree(), 3);
  EXPECT_EQ(Q("0").total_degree(), -1);
}

TEST(BiPoly, VariableMismatchThrows) {
  const BiPoly a = Q("w + z");
  const BiPoly b = parse_poly("u + v").poly;
  EXPECT_THROW(a + b, Error);
}

TEST(Printing, CanonicalForms) {
  EXPECT_EQ(to_string(Q("w^3 - 3*z*w")), "w^3 - 3*z*w");
  EXPECT_EQ(to_string(P("x^2 - 2")), "x^2 - 2");
  EXPECT_EQ(to_string(Q("(1/2 - 3/4i)*z")), "(1/2 - 3/4i)*z");
  EXPECT_EQ(to_string(parse_map("(z^2, w^2 - 2*z)").map), "(z^2, w^2 - 2*z)");
}

TEST(Property, ComposeAssociative) {
  gen::Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    const UniPoly a = rng.poly(static_cast<int>(rng.integer(1, 4)));
    const UniPoly b = rng.poly(static_cast<int>(rng.integer(1, 4)));
    const UniPoly c = rng.poly(static_cast<int>(rng.integer(1, 4)));
    EXPECT_EQ(compose(a, compose(b, c)), compose(compose(a, b), c));
    EXPECT_EQ(compose(a, b).degree(), a.degree() * b.degree());
  }
}

TEST(Property, ConjugationRoundTrip) {
  gen::Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const UniPoly p = rng.poly(static_cast<int>(rng.integer(1, 6)));
    const AffineMap1 A = rng.affine();
    const UniPoly c = conjugate_affine(p, A);
    EXPECT_EQ(c.degree(), p.degree());
    EXPECT_EQ(conjugate_affine(c, A.inverse()), p);
  }
}

TEST(Property, ProductRule) {
  gen::Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const UniPoly a = rng.poly(static_cast<int>(rng.integer(0, 6)));
    const UniPoly b = rng.poly(static_cast<int>(rng.integer(0, 6)));
    EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
  }
}

TEST(Property, PrintParseIdentity) {
  gen::Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    std::vector<UniPoly> cs;
    const int dw = static_cast<int>(rng.integer(0, 4));
    for (int k = 0; k <= dw; ++k) cs.push_back(rng.poly(static_cast<int>(rng.integer(0, 3)), 'z'));
    const BiPoly q(std::move(cs), 'z', 'w');
    const std::string text = to_string(q);
    const BiPoly back = parse_poly(text, {.vars = VarPair{'z', 'w'}}).poly;
    EXPECT_EQ(back, q) << text;
    EXPECT_EQ(to_string(back), text);
  }
}

TEST(Property, BiDerivativeProductRule) {
  gen::Rng rng(25);
  for (int i = 0; i < 50; ++i) {
    std::vector<UniPoly> ca, cb;
    for (int k = 0; k < 3; ++k) {
      ca.push_back(rng.poly(2, 'z'));
      cb.push_back(rng.poly(1, 'z'));
    }
    const BiPoly a(ca, 'z', 'w'), b(cb, 'z', 'w');
    EXPECT_EQ(deriv_w(a * b), deriv_w(a) * b + a * deriv_w(b));
    EXPECT_EQ(deriv_z(a * b), deriv_z(a) * b + a * deriv_z(b));
  }
}
