#include <gtest/gtest.h>

#include <thread>

#include "support.hpp"

using namespace skewprod;
using gen::P;

namespace {

BiPoly D(const std::string& s) { return parse_poly(s, {.vars = VarPair{'a', 'x'}}).poly; }

}  // namespace

TEST(Dickson, SmallDegrees) {
  EXPECT_EQ(dickson(0).poly, D("2"));
  EXPECT_EQ(dickson(1).poly, D("x"));
  EXPECT_EQ(dickson(2).poly, D("x^2 - 2*a"));
  EXPECT_EQ(dickson(3).poly, D("x^3 - 3*a*x"));
  // one recurrence step: x (x^3 - 3ax) - a (x^2 - 2a)
  EXPECT_EQ(dickson(4).poly, D("x^4 - 4*a*x^2 + 2*a^2"));
  EXPECT_EQ(to_string(dickson(3).poly), "x^3 - 3*a*x");
  EXPECT_THROW(dickson(-1), DegreeError);
}

TEST(Chebyshev, SmallDegrees) {
  EXPECT_EQ(chebyshev(1), P("x"));
  EXPECT_EQ(chebyshev(2), P("x^2 - 2"));
  EXPECT_EQ(chebyshev(4), P("x^4 - 4*x^2 + 2"));
}

TEST(DicksonAt, Examples) {
  EXPECT_EQ(dickson_at(2, P("z")).poly, gen::Q("w^2 - 2*z"));
  EXPECT_EQ(dickson_at(2, UniPoly(std::vector<Scalar>{}, 'z')).poly, gen::Q("w^2"));
  const DicksonAt d = dickson_at(3, P("z^2"));
  EXPECT_EQ(d.poly, gen::Q("w^3 - 3*z^2*w"));
  EXPECT_EQ(d.total_degree, 3);
}

TEST(DegreeBound, Examples) {
  const auto a = check_degree_bound(4, P("z"));
  EXPECT_TRUE(a.total_degree_is_d);
  EXPECT_TRUE(a.agree);
  // D_4(w, z^3) = w^4 - 4 z^3 w^2 + 2 z^6: the z^6 term dominates
  const auto b = check_degree_bound(4, P("z^3"));
  EXPECT_FALSE(b.total_degree_is_d);
  EXPECT_EQ(dickson_at(4, P("z^3")).poly, gen::Q("w^4 - 4*z^3*w^2 + 2*z^6"));
  EXPECT_EQ(b.total_degree, 6);
  EXPECT_TRUE(b.agree);
  // d = 2: D_2(w, z^5) = w^2 - 2 z^5 has total degree 5
  const auto c = check_degree_bound(2, P("z^5"));
  EXPECT_EQ(c.total_degree, 5);
  EXPECT_FALSE(c.total_degree_is_d);
  EXPECT_TRUE(c.agree);
}

// The two criteria never disagree. D_d(w, a) has a nonzero a^k w^{d-2k} term for
// every k <= d/2, so with deg phi = m the total degree is max_k d + k (m - 2).
TEST(DegreeBound, PropertyCriteriaAgree) {
  gen::Rng rng(31);
  for (int d = 2; d <= 8; ++d) {
    for (int m = 0; m <= 6; ++m) {
      for (int t = 0; t < 3; ++t) {
        const auto r = check_degree_bound(d, rng.poly(m, 'z'));
        EXPECT_TRUE(r.agree) << d << " " << m;
        int want = d;
        for (int k = 0; 2 * k <= d; ++k) want = std::max(want, d + k * (m - 2));
        EXPECT_EQ(r.total_degree, want);
      }
    }
  }
}

TEST(PmChebyshev, Examples) {
  const ToleranceContext ctx;
  const auto t2 = pm_chebyshev_normal_form(P("x^2 - 2"), ctx);
  ASSERT_TRUE(t2);
  EXPECT_EQ(t2->sigma, 1);
  EXPECT_EQ(t2->zeta, Scalar(1));

  const auto d3 = pm_chebyshev_normal_form(P("x^3 + 3*x"), ctx);
  ASSERT_TRUE(d3);
  EXPECT_EQ(d3->zeta, Scalar(-1));
  EXPECT_EQ(pow(d3->lambda, 2), Scalar(-1));
  // verify L^{-1} (sigma T_3) L = P
  EXPECT_EQ(conjugate_affine(chebyshev(3) * Scalar(d3->sigma), AffineMap1::scale(d3->lambda).inverse()), P("x^3 + 3*x"));

  EXPECT_FALSE(pm_chebyshev_normal_form(P("x^2 - 4"), ctx));
  EXPECT_THROW(pm_chebyshev_normal_form(P("2*x^2"), ctx), Error);
  EXPECT_THROW(pm_chebyshev_normal_form(P("x^2 + x"), ctx), Error);
}

TEST(PmChebyshev, EvenDegreePrefersPlus) {
  const ToleranceContext ctx;
  // lambda = +-1 both satisfy lambda^2 = 1; the sign giving +T_4 is chosen
  const auto f = pm_chebyshev_normal_form(chebyshev(4), ctx);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->sigma, 1);
  EXPECT_EQ(f->lambda, Scalar(1));
}

// Family members D_d(x, zeta) with zeta^{d-1} = 1 are accepted; perturbed ones are not.
TEST(PmChebyshev, PropertyAcceptsExactlyTheFamily) {
  const ToleranceContext ctx;
  gen::Rng rng(32);
  for (int d = 2; d <= 7; ++d) {
    for (const auto& zeta : roots_of_unity(static_cast<unsigned>(d - 1), ctx)) {
      const UniPoly p = dickson_specialized(d, zeta);
      const auto f = pm_chebyshev_normal_form(p, ctx);
      ASSERT_TRUE(f) << d;
      EXPECT_LE(f->residual, 1e-60);
      for (int t = 0; t < 3; ++t) {
        const int k = static_cast<int>(rng.integer(0, d - 2));
        std::vector<Scalar> c(p.coeffs().begin(), p.coeffs().end());
        c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] + Scalar::rational(rng.integer(1, 9), 100);
        EXPECT_FALSE(pm_chebyshev_normal_form(UniPoly(c, 'x'), ctx)) << d << " slot " << k;
      }
    }
  }
}

TEST(Identities, FullSuitePasses) {
  const IdentityReport rep = verify_dickson_identities();
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << " d=" << c.d << " m=" << c.m;
  EXPECT_EQ(rep.failures, 0);
}

TEST(Identities, SpecializationUpToSixteen) {
  const IdentityReport rep = verify_dickson_identities({16, 36, 10});
  EXPECT_TRUE(rep.all_passed());
}

TEST(Identities, CosineOracleMatchesSmallCases) {
  EXPECT_EQ(chebyshev_from_cosine_recurrence(3), P("x^3 - 3*x"));
  EXPECT_EQ(chebyshev_from_cosine_recurrence(0), P("2"));
}

TEST(Cache, ConcurrentReaders) {
  std::vector<std::thread> ts;
  std::vector<BiPoly> out(8);
  for (int i = 0; i < 8; ++i) ts.emplace_back([&out, i] { out[static_cast<std::size_t>(i)] = dickson(40 + i % 3).poly; });
  for (auto& t : ts) t.join();
  for (int i = 0; i < 8; ++i) EXPECT_EQ(out[static_cast<std::size_t>(i)], dickson(40 + i % 3).poly);
}
