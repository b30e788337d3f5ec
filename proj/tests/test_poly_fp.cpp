#include <gtest/gtest.h>

#include "fqroot/irreducible.hpp"
#include "fqroot/poly.hpp"
#include "oracles.hpp"

using namespace fqroot;
using P = Poly<Fp64>;

namespace {

P poly(const Fp64& f, std::initializer_list<std::uint64_t> cs) { return P::from_u64(f, cs); }

}  // namespace

TEST(PolyMul, Examples) {
  const Fp64 f3(3);
  EXPECT_EQ(poly_mul(poly(f3, {1, 1}), poly(f3, {2, 1})), poly(f3, {2, 0, 1}));
  EXPECT_TRUE(poly_mul(P(f3), poly(f3, {1, 2, 1})).is_zero());
  const FpBig f2{Natural(2u)};
  const Poly<FpBig> x = Poly<FpBig>::x(f2);
  EXPECT_EQ(poly_mul(x, x), Poly<FpBig>::monomial(f2, f2.one(), 2));
}

TEST(PolyMul, KaratsubaMatchesSchoolbook) {
  Rng rng(1);
  const Fp64 f((1ull << 61) - 1);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t la = 1 + uniform_below(rng, std::uint64_t{201});
    const std::size_t lb = 1 + uniform_below(rng, std::uint64_t{201});
    const P a = random_poly(f, la, rng), b = random_poly(f, lb, rng);
    ASSERT_EQ(poly_mul(a, b), poly_mul_schoolbook(a, b)) << la << " x " << lb;
  }
}

TEST(PolyMul, AcrossThresholds) {
  Rng rng(2);
  const Fp64 f(1000003);
  const std::size_t saved = karatsuba_threshold;
  for (std::size_t th : {2u, 3u, 8u, 17u, 32u, 64u, 96u}) {
    karatsuba_threshold = th;
    for (int i = 0; i < 50; ++i) {
      const P a = random_poly(f, 1 + uniform_below(rng, std::uint64_t{150}), rng);
      const P b = random_poly(f, 1 + uniform_below(rng, std::uint64_t{150}), rng);
      EXPECT_EQ(poly_mul(a, b), poly_mul_schoolbook(a, b));
      EXPECT_EQ(poly_sqr(a), poly_mul_schoolbook(a, a));
    }
  }
  karatsuba_threshold = saved;
}

TEST(PolyMul, BigBackendMatchesWordBackend) {
  Rng rng(3);
  const std::uint64_t p = 1000003;
  const Fp64 f(p);
  const FpBig g{Natural(p)};
  for (int i = 0; i < 20; ++i) {
    const P a = random_poly(f, 80, rng), b = random_poly(f, 70, rng);
    std::vector<Natural> ca, cb;
    for (auto c : a.coeffs()) ca.push_back(f.to_natural(c));
    for (auto c : b.coeffs()) cb.push_back(f.to_natural(c));
    const Poly<FpBig> A(g, ca), B(g, cb);
    EXPECT_EQ(format_poly(poly_mul(a, b)), format_poly(poly_mul(A, B)));
  }
}

TEST(PolyRem, Examples) {
  const Fp64 f3(3);
  const P f = poly(f3, {1, 0, 1});
  EXPECT_EQ(poly_rem(poly(f3, {1, 2, 1}), f), poly(f3, {0, 2}));
  EXPECT_EQ(poly_rem(P::x(f3), f), P::x(f3));
  EXPECT_TRUE(poly_rem(f, f).is_zero());
}

TEST(PolyRem, ModulusReductionMatchesDivision) {
  Rng rng(4);
  const Fp64 fp((1ull << 61) - 1);
  for (std::size_t n : {1u, 2u, 9u, 33u, 70u, 129u}) {
    const P f = random_poly(fp, n, rng) + P::monomial(fp, fp.one(), n);
    const PolyModulus<Fp64> mod(f);
    for (int i = 0; i < 20; ++i) {
      const P a = random_poly(fp, n, rng), b = random_poly(fp, n, rng);
      const P prod = poly_mul(a, b);
      ASSERT_EQ(mod.reduce(prod), poly_divrem(prod, f).second) << n;
      ASSERT_EQ(mod.mul(a, b), mod.mul(mod.reduce(a), mod.reduce(b)));
      ASSERT_EQ(mod.sqr(a), mod.mul(a, a));
    }
  }
}

TEST(PolyDivrem, Identity) {
  Rng rng(5);
  const Fp64 fp(101);
  for (int i = 0; i < 200; ++i) {
    const P a = random_poly(fp, uniform_below(rng, std::uint64_t{30}), rng);
    P b = random_poly(fp, 1 + uniform_below(rng, std::uint64_t{20}), rng);
    if (b.is_zero()) continue;
    auto [q, r] = poly_divrem(a, b);
    EXPECT_EQ(poly_mul(q, b) + r, a);
    EXPECT_LT(r.degree(), b.degree());
  }
  EXPECT_THROW(poly_divrem(poly(fp, {1}), P(fp)), division_by_zero);
}

TEST(PolyPowmod, Examples) {
  const Fp64 f3(3);
  const P f = poly(f3, {1, 0, 1});
  EXPECT_EQ(poly_powmod(P::x(f3), Natural(8u), f), poly(f3, {1}));
  EXPECT_EQ(poly_powmod(P::x(f3), Natural(3u), f), poly(f3, {0, 2}));
  const P a = poly(f3, {2, 1});
  EXPECT_EQ(poly_powmod(a, Natural(1u), f), a);
}

TEST(PolyXgcd, Examples) {
  const Fp64 f3(3), f7(7);
  {
    const P a = poly(f3, {1, 0, 1}), b = P::x(f3);
    auto [g, u, v] = poly_xgcd(a, b);
    EXPECT_EQ(g, poly(f3, {1}));
    EXPECT_EQ(poly_mul(u, a) + poly_mul(v, b), g);
  }
  {
    const P a = poly(f7, {3, 0, 2});
    auto [g, u, v] = poly_xgcd(a, P(f7));
    EXPECT_EQ(g, a.monic());
    EXPECT_EQ(u, poly(f7, {4}));  // 2^{-1} mod 7
    EXPECT_TRUE(v.is_zero());
  }
  {
    auto [g, u, v] = poly_xgcd(poly(f7, {6, 0, 1}), poly(f7, {6, 1}));
    EXPECT_EQ(g, poly(f7, {6, 1}));
  }
}

TEST(PolyXgcd, BezoutRandom) {
  Rng rng(6);
  const Fp64 fp(13);
  for (int i = 0; i < 300; ++i) {
    const P a = random_poly(fp, uniform_below(rng, std::uint64_t{12}), rng);
    const P b = random_poly(fp, uniform_below(rng, std::uint64_t{12}), rng);
    if (a.is_zero() && b.is_zero()) continue;
    auto [g, u, v] = poly_xgcd(a, b);
    EXPECT_TRUE(g.is_monic());
    EXPECT_EQ(poly_mul(u, a) + poly_mul(v, b), g);
    EXPECT_TRUE(poly_divrem(a, g).second.is_zero());
    EXPECT_TRUE(poly_divrem(b, g).second.is_zero());
    EXPECT_EQ(g, poly_gcd(a, b));
  }
}

TEST(Resultant, Examples) {
  const Fp64 f3(3);
  const P f = poly(f3, {1, 0, 1});
  EXPECT_EQ(f3.canonical(resultant(f, P::x(f3))), 1u);
  EXPECT_EQ(f3.canonical(resultant(f, poly(f3, {1, 1}))), 2u);
  EXPECT_EQ(f3.canonical(resultant(f, poly(f3, {1}))), 1u);
}

template <PrimeField F>
void check_against_sylvester(const F& f, Rng& rng) {
  for (int i = 0; i < 300; ++i) {
    const auto a = random_poly(f, 1 + uniform_below(rng, std::uint64_t{7}), rng);
    const auto b = random_poly(f, 1 + uniform_below(rng, std::uint64_t{7}), rng);
    if (a.is_zero() || b.is_zero() || a.degree() + b.degree() == 0) continue;
    ASSERT_EQ(resultant(a, b), oracle::sylvester_resultant(a, b)) << format_poly(a) << " | " << format_poly(b);
  }
}

TEST(Resultant, MatchesSylvesterDeterminant) {
  Rng rng(7);
  check_against_sylvester(FpBig{Natural(2u)}, rng);
  for (std::uint64_t p : {3ull, 7ull, 101ull}) check_against_sylvester(Fp64(p), rng);
}

TEST(Resultant, NormIsMultiplicative) {
  Rng rng(8);
  const Fp64 fp(1000003);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + uniform_below(rng, std::uint64_t{32});
    const P f = random_poly(fp, n, rng) + P::monomial(fp, fp.one(), n);
    const P a = random_poly(fp, n, rng), b = random_poly(fp, n, rng);
    const auto ab = poly_rem(poly_mul(a, b), f);
    EXPECT_EQ(resultant(f, ab), fp.mul(resultant(f, a), resultant(f, b)));
  }
}

TEST(Irreducible, Examples) {
  EXPECT_TRUE(is_irreducible(poly(Fp64(3), {1, 0, 1})));
  EXPECT_FALSE(is_irreducible(poly(Fp64(5), {1, 0, 1})));
  EXPECT_TRUE(is_irreducible(poly(Fp64(7), {4, 1})));
}

TEST(Irreducible, MatchesExhaustiveFactorSearch) {
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    const FpBig f{Natural(p)};
    for (std::size_t n = 1; n <= 5; ++n) {
      std::size_t count = 0;
      for (const auto& g : oracle::monic_polys(f, n)) {
        const bool expect = oracle::irreducible_by_search(g);
        ASSERT_EQ(is_irreducible(g), expect) << p << ": " << format_poly(g);
        count += expect;
      }
      EXPECT_EQ(count, oracle::count_irreducible(p, n)) << p << " " << n;
    }
  }
}

TEST(Irreducible, RandomIrreducible) {
  Rng rng(9);
  const FpBig f2{Natural(2u)};
  EXPECT_EQ(format_poly(random_irreducible(f2, 2, rng)), "1 1 1");
  const Fp64 f(1000003);
  for (std::size_t n : {1u, 2u, 5u, 16u}) {
    const P g = random_irreducible(f, n, rng);
    EXPECT_EQ(g.degree(), static_cast<std::ptrdiff_t>(n));
    EXPECT_TRUE(g.is_monic());
    EXPECT_TRUE(is_irreducible(g));
  }
}

TEST(PolyText, RoundTrip) {
  const Fp64 f(7);
  EXPECT_EQ(format_poly(parse_poly(f, "1 2 0 3")), "1 2 0 3");
  EXPECT_EQ(format_poly(parse_poly(f, "1 0 0")), "1");
  EXPECT_EQ(format_poly(P(f)), "0");
  EXPECT_THROW(parse_poly(f, "1 7"), std::invalid_argument);
  EXPECT_THROW(parse_poly(f, "x"), std::invalid_argument);
}
