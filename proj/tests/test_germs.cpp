#include <gtest/gtest.h>

#include "ellnb/sampling.hpp"
#include "oracles.hpp"

using namespace ellnb;
using C = Cyclo;
using G = Germ<C>;
using P = PSeries<C>;

namespace {

G germ(std::vector<long> c, int n) {
  std::vector<C> v;
  for (long x : c) v.push_back(C(x));
  return G(P(v, n));
}

// h f h^-1 with the power-sum oracle.
G oracle_conjugate(const G& f, const G& h) {
  const auto hc = oracle::coeffs(h.series());
  const auto hi = oracle::reversion(hc);
  return G(oracle::series(oracle::compose(hc, oracle::compose(oracle::coeffs(f.series()), hi))));
}

}  // namespace

TEST(GermType, RejectsNonGerms) {
  for (const auto& c : {std::vector<long>{1, 1}, std::vector<long>{0, 0, 1}}) {
    try {
      germ(c, 4);
      FAIL();
    } catch (const MathError& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotAGerm);
    }
  }
}

TEST(ContactOrder, Examples) {
  EXPECT_EQ(contact_order(germ({0, 1, 1}, 6), germ({0, 1, 1}, 6)), std::nullopt);
  EXPECT_EQ(contact_order(G::identity(6), germ({0, 1, 0, 1}, 6)), 3);
  const auto v = v_k_lambda(2, C(0L), 10);
  EXPECT_EQ(contact_order(C(-1L) * flow(v, C(1L)), C(-1L) * flow(v, C(2L))), 3);
}

TEST(Conjugate, Examples) {
  const G f = germ({0, 1, 1}, 4);
  EXPECT_EQ(conjugate(f, G::identity(4)), f);
  EXPECT_EQ(conjugate(G::linear(C(2L), 4), G::linear(C(3L), 4)), G::linear(C(2L), 4));
  // A germ commutes with itself.
  EXPECT_EQ(conjugate(f, f), f);
  EXPECT_EQ(conjugate(f, f), oracle_conjugate(f, f));
}

TEST(Conjugate, MatchesOracleOnRandomGerms) {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const G f = C::zeta(3) * random_tangent_germ<C>(rng, 16, 2, 4);
    const G h = random_tangent_germ<C>(rng, 16, 2, 4);
    EXPECT_EQ(conjugate(f, h), oracle_conjugate(f, h));
  }
}

TEST(Iterate, Examples) {
  const G f = germ({0, 1, 1}, 8);
  EXPECT_EQ(iterate(f, 0), G::identity(8));
  // y / (1 - y) to y / (1 - 3y).
  P a(12), b(12);
  for (int e = 1; e <= 12; ++e) {
    a.set(e, C(1L));
    b.set(e, power(C(3L), e - 1));
  }
  EXPECT_EQ(iterate(G(a), 3), G(b));
  const G g = germ({0, 2, 1}, 8);
  EXPECT_EQ(iterate(g, -1), g.inverse());
  EXPECT_EQ(iterate(g, -1).series(), reversion(g.series()));
}

TEST(Iterate, ExponentLaw) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const G f = C(-1L) * random_tangent_germ<C>(rng, 12, 2, 3);
    const int m = int(uniform_int(rng, -5, 5)), n = int(uniform_int(rng, -5, 5));
    EXPECT_EQ(iterate(f, m) * iterate(f, n), iterate(f, m + n)) << m << " " << n;
  }
}

TEST(ContactOrder, SymmetricAndJetPreserving) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const G f = random_tangent_germ<C>(rng, 14, 2, 4), g = random_tangent_germ<C>(rng, 14, 2, 4);
    EXPECT_EQ(contact_order(f, g), contact_order(g, f));
    const int n = int(uniform_int(rng, 2, 10));
    // h tangent to the identity to order n moves only terms of degree > n.
    const G h = random_tangent_germ<C>(rng, 14, n, 3);
    const G fc = conjugate(f, h);
    for (int e = 0; e <= n; ++e) EXPECT_EQ(fc.coeff(e), f.coeff(e)) << n << " " << e;
  }
}
