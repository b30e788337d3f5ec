#include <gtest/gtest.h>

#include <set>

#include "fqroot/prime_field.hpp"

using namespace fqroot;

namespace {

std::uint64_t can(const Fp64& f, std::uint64_t v) { return f.canonical(v); }

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= n; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (prime) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Natural, ParseAndPrint) {
  EXPECT_EQ(Natural::parse("0").str(), "0");
  EXPECT_EQ(Natural::parse("000123").str(), "123");
  const std::string big = "340282366920938463463374607431768211457";
  EXPECT_EQ(Natural::parse(big).str(), big);
  EXPECT_THROW(Natural::parse(""), std::invalid_argument);
  EXPECT_THROW(Natural::parse("-3"), std::invalid_argument);
  EXPECT_THROW(Natural::parse("12a"), std::invalid_argument);
}

TEST(Natural, ArithmeticIdentities) {
  Rng rng(7);
  const Natural bound = pow(Natural(2u), 300);
  for (int i = 0; i < 200; ++i) {
    const Natural a = uniform_below(rng, bound);
    const Natural b = uniform_below(rng, bound) + Natural(1u);
    EXPECT_EQ(a + b - b, a);
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ((a / b) * b + a % b, a);
  }
  EXPECT_THROW(Natural(3u) - Natural(5u), std::domain_error);
}

TEST(Natural, Bits) {
  const Natural x = pow(Natural(2u), 70) * Natural(6u);
  EXPECT_EQ(x.bit_length(), 73u);
  EXPECT_EQ(x.trailing_zeros(), 71u);
  EXPECT_FALSE(x.fits_u64());
  EXPECT_TRUE(Natural(~0ull).fits_u64());
  EXPECT_EQ(Natural(0u).bit_length(), 0u);
}

TEST(Natural, Invmod) {
  EXPECT_EQ(invmod(Natural(5u), Natural(6u)), Natural(5u));
  EXPECT_EQ(invmod(Natural(1u), Natural(9u)), Natural(1u));
  EXPECT_EQ(invmod(Natural(3u), Natural(8u)), Natural(3u));
  EXPECT_THROW(invmod(Natural(4u), Natural(8u)), std::domain_error);
}

TEST(Natural, OrderMod) {
  EXPECT_EQ(order_mod(Natural(3u), Natural(2u)), Natural(1u));
  EXPECT_EQ(order_mod(Natural(7u), Natural(5u)), Natural(4u));
  EXPECT_EQ(order_mod(Natural(2u), Natural(7u)), Natural(3u));
  for (std::uint64_t t : primes_up_to(60)) {
    for (std::uint64_t p : primes_up_to(60)) {
      if (p == t) continue;
      const Natural s = order_mod(Natural(p), Natural(t));
      EXPECT_TRUE((Natural(t - 1) % s).is_zero()) << p << " " << t;
      EXPECT_EQ(powmod(Natural(p), s, Natural(t)), Natural(1u));
    }
  }
}

TEST(Natural, Primality) {
  const auto ps = primes_up_to(2000);
  std::set<std::uint64_t> set(ps.begin(), ps.end());
  for (std::uint64_t n = 0; n <= 2000; ++n) EXPECT_EQ(is_probable_prime(Natural(n)), set.count(n) == 1) << n;
  EXPECT_TRUE(is_probable_prime(Natural((1ull << 61) - 1)));
  EXPECT_FALSE(is_probable_prime(Natural(3215031751ull)));  // strong pseudoprime to 2, 3, 5, 7
  EXPECT_TRUE(is_probable_prime(pow(Natural(2u), 127) - Natural(1u)));
  EXPECT_FALSE(is_probable_prime(pow(Natural(2u), 128) + Natural(1u)));
}

TEST(Natural, FactorTrial) {
  auto f = factor_trial(360);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].first, Natural(2u));
  EXPECT_EQ(f[0].second, 3u);
  EXPECT_EQ(f[2].first, Natural(5u));
  EXPECT_TRUE(factor_trial(1).empty());
}

TEST(Fp64, PowExamples) {
  const Fp64 f7(7), f19(19);
  EXPECT_EQ(can(f7, fp_pow(f7, f7.from_u64(5), Natural(0u))), 1u);
  EXPECT_EQ(can(f19, fp_pow(f19, f19.from_u64(4), Natural(5u))), 17u);
  EXPECT_EQ(can(f7, fp_pow(f7, f7.from_u64(3), Natural(6u))), 1u);
}

TEST(Fp64, AgreesWithBigBackend) {
  Rng rng(3);
  for (std::uint64_t p : {3ull, 13ull, 1000003ull, (1ull << 61) - 1, 4611686018427387847ull}) {
    const Fp64 a(p);
    const FpBig b{Natural(p)};
    for (int i = 0; i < 500; ++i) {
      const std::uint64_t x = uniform_below(rng, p), y = uniform_below(rng, p);
      const auto ax = a.from_u64(x), ay = a.from_u64(y);
      const auto bx = b.from_u64(x), by = b.from_u64(y);
      EXPECT_EQ(a.to_natural(a.mul(ax, ay)), b.to_natural(b.mul(bx, by)));
      EXPECT_EQ(a.to_natural(a.add(ax, ay)), b.to_natural(b.add(bx, by)));
      EXPECT_EQ(a.to_natural(a.sub(ax, ay)), b.to_natural(b.sub(bx, by)));
      if (x != 0) {
        EXPECT_EQ(a.to_natural(a.inv(ax)), b.to_natural(b.inv(bx)));
        EXPECT_EQ(a.mul(ax, a.inv(ax)), a.one());
      }
    }
  }
}

TEST(Fp64, LazyAccumulationMatchesPlainSum) {
  const Fp64 f((1ull << 62) - 57);
  Rng rng(5);
  for (std::size_t len : {1u, 15u, 16u, 17u, 100u}) {
    std::vector<std::uint64_t> xs(len), ys(len);
    for (auto& v : xs) v = f.from_u64(uniform_below(rng, f.p()));
    for (auto& v : ys) v = f.from_u64(uniform_below(rng, f.p()));
    DotAccumulator<Fp64> acc(f);
    std::uint64_t plain = f.zero();
    for (std::size_t i = 0; i < len; ++i) {
      acc.add(xs[i], ys[i]);
      plain = f.add(plain, f.mul(xs[i], ys[i]));
    }
    EXPECT_EQ(acc.value(), plain) << len;
  }
}

TEST(Fp64, FermatRandomized) {
  Rng rng(11);
  for (std::uint64_t p : {5ull, 101ull, 65537ull, (1ull << 61) - 1}) {
    const Fp64 f(p);
    for (int i = 0; i < 1000; ++i) {
      const auto a = f.from_u64(1 + uniform_below(rng, p - 1));
      EXPECT_EQ(fp_pow(f, a, Natural(p - 1)), f.one());
    }
  }
}

TEST(Fp64, RejectsBadModulus) {
  EXPECT_THROW(Fp64(4), std::invalid_argument);
  EXPECT_THROW(Fp64(2), std::invalid_argument);
  EXPECT_THROW(Fp64(1ull << 62), std::invalid_argument);
  EXPECT_THROW(FpBig(Natural(91u)), std::invalid_argument);
}

TEST(FpBig, LargePrime) {
  const Natural p = pow(Natural(2u), 127) - Natural(1u);
  const FpBig f(p);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto a = f.random(rng);
    if (f.is_zero(a)) continue;
    EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
    EXPECT_EQ(fp_pow(f, a, p - Natural(1u)), f.one());
  }
}

TEST(TonelliShanksFp, Examples) {
  const Fp64 f(13);
  Rng rng(1);
  auto r = tonelli_shanks_fp(f, f.from_u64(10), rng);
  ASSERT_TRUE(r);
  EXPECT_TRUE(can(f, *r) == 6 || can(f, *r) == 7);
  r = tonelli_shanks_fp(f, f.one(), rng);
  ASSERT_TRUE(r);
  EXPECT_TRUE(can(f, *r) == 1 || can(f, *r) == 12);
  EXPECT_FALSE(tonelli_shanks_fp(f, f.from_u64(5), rng));
}

TEST(TonelliShanksFp, ExhaustiveUpTo1000) {
  Rng rng(4);
  for (std::uint64_t p : primes_up_to(1000)) {
    if (p == 2) continue;
    const Fp64 f(p);
    std::vector<char> square(p, 0);
    for (std::uint64_t x = 1; x < p; ++x) square[x * x % p] = 1;
    for (std::uint64_t a = 1; a < p; ++a) {
      auto r = tonelli_shanks_fp(f, f.from_u64(a), rng);
      ASSERT_EQ(static_cast<bool>(r), static_cast<bool>(square[a])) << p << " " << a;
      if (r) {
        ASSERT_EQ(can(f, f.mul(*r, *r)), a);
      }
    }
  }
}

TEST(AmmRootFp, Examples) {
  const Fp64 f(7);
  Rng rng(1);
  auto r = amm_root_fp(f, f.from_u64(6), Natural(3u), rng);
  ASSERT_TRUE(r);
  EXPECT_TRUE(std::set<std::uint64_t>({3, 5, 6}).count(can(f, *r)));
  r = amm_root_fp(f, f.one(), Natural(3u), rng);
  ASSERT_TRUE(r);
  EXPECT_TRUE(std::set<std::uint64_t>({1, 2, 4}).count(can(f, *r)));
  EXPECT_FALSE(amm_root_fp(f, f.from_u64(2), Natural(3u), rng));
}

TEST(AmmRootFp, ExhaustiveUpTo50) {
  Rng rng(8);
  for (std::uint64_t p : primes_up_to(50)) {
    if (p == 2) continue;
    const Fp64 f(p);
    for (std::uint64_t t : primes_up_to(p)) {
      if ((p - 1) % t != 0) continue;
      for (std::uint64_t a = 1; a < p; ++a) {
        const auto av = f.from_u64(a);
        const bool power = fp_pow(f, av, Natural((p - 1) / t)) == f.one();
        auto r = amm_root_fp(f, av, Natural(t), rng);
        ASSERT_EQ(static_cast<bool>(r), power) << p << " " << t << " " << a;
        if (r) {
          ASSERT_EQ(fp_pow(f, *r, Natural(t)), av);
        }
      }
    }
  }
}

TEST(AmmRootFp, LargeIndex) {
  // 65537^2 divides p - 1, so the baby-step giant-step digit solver runs.
  const std::uint64_t p = 65537ull * 65537ull * 70ull + 1ull;
  ASSERT_TRUE(is_probable_prime(Natural(p)));
  const Fp64 f(p);
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto c = f.from_u64(1 + uniform_below(rng, p - 1));
    const auto a = fp_pow(f, c, Natural(65537u));
    auto r = amm_root_fp(f, a, Natural(65537u), rng);
    ASSERT_TRUE(r);
    EXPECT_EQ(fp_pow(f, *r, Natural(65537u)), a);
  }
}
