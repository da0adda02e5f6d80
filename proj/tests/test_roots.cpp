#include <gtest/gtest.h>

#include "support.hpp"

using namespace skewprod;
using gen::P;

namespace {

const ToleranceContext ctx;

double dist(const Scalar& a, const Scalar& b) { return to_double(distance(a, b, 256)); }

}  // namespace

TEST(FindRoots, SimpleRealRoots) {
  const RootResult r = find_roots(P("x^3 - 6*x^2 + 11*x - 6"), ctx);
  ASSERT_EQ(r.clusters.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LT(dist(r.clusters[static_cast<std::size_t>(k)].value, Scalar(k + 1)), 1e-60);
    EXPECT_EQ(r.clusters[static_cast<std::size_t>(k)].multiplicity, 1);
  }
}

TEST(FindRoots, RepeatedRootsCluster) {
  const RootResult r = find_roots(P("(x-1)^3*(x+2)"), ctx);
  ASSERT_EQ(r.clusters.size(), 2u);
  EXPECT_LT(dist(r.clusters[0].value, Scalar(-2)), 1e-60);
  EXPECT_EQ(r.clusters[1].multiplicity, 3);
  // a triple root is only determined to about the cube root of the working precision
  EXPECT_LT(dist(r.clusters[1].value, Scalar(1)), 1e-20);
  EXPECT_EQ(r.total_multiplicity(), 4);
}

TEST(FindRoots, ZeroRootsSplitExactly) {
  const RootResult r = find_roots(P("x^4 - x^2"), ctx);
  EXPECT_EQ(r.total_multiplicity(), 4);
  bool zero = false;
  for (const auto& c : r.clusters) {
    if (c.value.is_zero()) {
      zero = true;
      EXPECT_EQ(c.multiplicity, 2);
    }
  }
  EXPECT_TRUE(zero);
}

TEST(FindRoots, ComplexCoefficients) {
  // (x - i)(x - (1 + 2i))
  const RootResult r = find_roots(P("(x - i)*(x - 1 - 2*i)"), ctx);
  ASSERT_EQ(r.clusters.size(), 2u);
  EXPECT_LT(dist(r.clusters[0].value, Scalar::imag_unit()), 1e-60);
  EXPECT_LT(dist(r.clusters[1].value, Scalar::rational(1, 1, 2, 1)), 1e-60);
}

TEST(FindRoots, CanonicalOrder) {
  const RootResult r = find_roots(P("x^4 - 1"), ctx);
  ASSERT_EQ(r.clusters.size(), 4u);
  EXPECT_LT(dist(r.clusters[0].value, Scalar(-1)), 1e-60);
  EXPECT_LT(dist(r.clusters[1].value, -Scalar::imag_unit()), 1e-60);
  EXPECT_LT(dist(r.clusters[2].value, Scalar::imag_unit()), 1e-60);
  EXPECT_LT(dist(r.clusters[3].value, Scalar(1)), 1e-60);
}

TEST(FindRoots, Errors) {
  EXPECT_THROW(find_roots(P("3"), ctx), NumericError);
  ToleranceContext small = ctx;
  small.degree_cap = 3;
  EXPECT_THROW(find_roots(P("x^4 - 1"), small), NumericError);
}

// Roots of a product of random linear factors are recovered with the right count.
TEST(Property, RandomProducts) {
  gen::Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    const int n = static_cast<int>(rng.integer(2, 12));
    std::vector<Scalar> roots;
    UniPoly p = UniPoly::constant(Scalar(1), 'x');
    for (int k = 0; k < n; ++k) {
      roots.push_back(rng.gaussian(20, 7));
      p = p * UniPoly({-roots.back(), Scalar(1)}, 'x');
    }
    const RootResult r = find_roots(p, ctx);
    EXPECT_EQ(r.total_multiplicity(), n);
    for (const auto& z : roots) {
      double best = 1e9;
      for (const auto& c : r.clusters) best = std::min(best, dist(c.value, z));
      EXPECT_LT(best, 1e-25);
    }
  }
}

TEST(Property, HighDegreeUnityRoots) {
  const RootResult r = find_roots(P("x^256 - 1"), ctx);
  EXPECT_EQ(r.clusters.size(), 256u);
  for (const auto& c : r.clusters) EXPECT_LT(c.residual, ctx.eps_root);
}
