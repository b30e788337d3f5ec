#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "fqroot/natural.hpp"

namespace fqroot {

class unsupported_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class division_by_zero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A prime field backend. Field objects are cheap handles that compare equal
// iff they share the modulus; values are opaque residues owned by the field.
//
// The acc_* members implement delayed reduction for dot products: up to
// lazy_terms products may be folded into one accumulator before it has to be
// reduced (and optionally lifted back with acc_lift).
template <class F>
concept PrimeField = std::copyable<F> && std::equality_comparable<F> &&
    requires(const F& f, const typename F::value_type& a, typename F::acc_type& acc, Rng& rng,
             std::uint64_t u, const Natural& n) {
      typename F::value_type;
      typename F::acc_type;
      { F::lazy_terms } -> std::convertible_to<std::size_t>;
      { f.modulus() } -> std::convertible_to<Natural>;
      { f.zero() } -> std::same_as<typename F::value_type>;
      { f.one() } -> std::same_as<typename F::value_type>;
      { f.from_u64(u) } -> std::same_as<typename F::value_type>;
      { f.from_natural(n) } -> std::same_as<typename F::value_type>;
      { f.to_natural(a) } -> std::same_as<Natural>;
      { f.is_zero(a) } -> std::same_as<bool>;
      { f.add(a, a) } -> std::same_as<typename F::value_type>;
      { f.sub(a, a) } -> std::same_as<typename F::value_type>;
      { f.neg(a) } -> std::same_as<typename F::value_type>;
      { f.mul(a, a) } -> std::same_as<typename F::value_type>;
      { f.inv(a) } -> std::same_as<typename F::value_type>;
      { f.random(rng) } -> std::same_as<typename F::value_type>;
      { f.acc_zero() } -> std::same_as<typename F::acc_type>;
      { f.acc_fma(acc, a, a) };
      { f.acc_reduce(acc) } -> std::same_as<typename F::value_type>;
      { f.acc_lift(a) } -> std::same_as<typename F::acc_type>;
    };

/// Word-sized prime field for odd p < 2^62, Montgomery representation.
class Fp64 {
 public:
  using value_type = std::uint64_t;
  using acc_type = unsigned __int128;
  // 16 * (2^62)^2 = 2^128
  static constexpr std::size_t lazy_terms = 16;
  static constexpr std::uint64_t max_modulus = (1ull << 62);

  explicit Fp64(std::uint64_t p) : p_(p) {
    if (p < 3 || p % 2 == 0 || p >= max_modulus) {
      throw std::invalid_argument("Fp64: modulus must be odd and below 2^62");
    }
    if (!detail::miller_rabin_u64(p)) throw std::invalid_argument("p is not prime");
    std::uint64_t inv = p;  // p * p = 1 mod 8
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    neg_pinv_ = 0 - inv;
    r2_ = static_cast<std::uint64_t>(static_cast<unsigned __int128>(-static_cast<unsigned __int128>(p) % p) % p);
    // -p mod p over 128 bits gives 2^128 mod p
    one_ = redc(r2_);
  }

  Natural modulus() const { return Natural(p_); }
  std::uint64_t p() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return one_; }
  value_type from_u64(std::uint64_t v) const { return mul(v % p_, r2_); }
  value_type from_natural(const Natural& n) const {
    return from_u64(static_cast<std::uint64_t>(n.raw() % p_));
  }
  Natural to_natural(value_type a) const { return Natural(canonical(a)); }
  std::uint64_t canonical(value_type a) const { return redc(a); }

  bool is_zero(value_type a) const { return a == 0; }

  value_type add(value_type a, value_type b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return redc(static_cast<unsigned __int128>(a) * b);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw division_by_zero("Fp64: inverse of zero");
    // Extended Euclid on the canonical value, then back to Montgomery form.
    std::int64_t r0 = static_cast<std::int64_t>(p_), r1 = static_cast<std::int64_t>(canonical(a));
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      std::int64_t s2 = s0 - q * s1;
      s0 = s1;
      s1 = s2;
    }
    if (s0 < 0) s0 += static_cast<std::int64_t>(p_);
    return from_u64(static_cast<std::uint64_t>(s0));
  }
  value_type random(Rng& rng) const { return from_u64(uniform_below(rng, p_)); }

  acc_type acc_zero() const { return 0; }
  void acc_fma(acc_type& acc, value_type a, value_type b) const {
    acc += static_cast<unsigned __int128>(a) * b;
  }
  value_type acc_reduce(const acc_type& acc) const {
    auto hi = static_cast<std::uint64_t>(acc >> 64);
    auto lo = static_cast<std::uint64_t>(acc);
    if (hi >= p_) hi %= p_;
    return redc((static_cast<unsigned __int128>(hi) << 64) | lo);
  }
  acc_type acc_lift(value_type a) const { return static_cast<unsigned __int128>(a) << 64; }

  // sum of a[i] * b[k - i] for lo <= i <= hi
  value_type dot_reversed(const value_type* a, const value_type* b, std::size_t lo, std::size_t hi,
                          std::size_t k) const {
    using u128 = unsigned __int128;
    u128 total = 0;
    std::uint64_t carry = 0;
    std::size_t i = lo;
    while (i <= hi) {
      // 8 products per accumulator stay below 2^127
      const std::size_t end = std::min(hi + 1, i + 16);
      u128 s0 = 0, s1 = 0;
      for (; i + 1 < end; i += 2) {
        s0 += static_cast<u128>(a[i]) * b[k - i];
        s1 += static_cast<u128>(a[i + 1]) * b[k - i - 1];
      }
      if (i < end) {
        s0 += static_cast<u128>(a[i]) * b[k - i];
        ++i;
      }
      s0 += s1;  // < 2^128
      total += s0;
      carry += total < s0;
    }
    const u128 top = (static_cast<u128>(carry) << 64) | static_cast<std::uint64_t>(total >> 64);
    const std::uint64_t top_mod = redc(static_cast<u128>(redc(top)) * r2_);
    return redc((static_cast<u128>(top_mod) << 64) | static_cast<std::uint64_t>(total));
  }

  friend bool operator==(const Fp64& a, const Fp64& b) { return a.p_ == b.p_; }

 private:
  // t < p * 2^64 required.
  value_type redc(unsigned __int128 t) const {
    std::uint64_t m = static_cast<std::uint64_t>(t) * neg_pinv_;
    unsigned __int128 u = (t + static_cast<unsigned __int128>(m) * p_) >> 64;
    auto r = static_cast<std::uint64_t>(u);
    return r >= p_ ? r - p_ : r;
  }

  std::uint64_t p_ = 0;
  std::uint64_t neg_pinv_ = 0;
  std::uint64_t r2_ = 0;
  std::uint64_t one_ = 0;
};

/// Arbitrary-precision prime field; values are canonical residues.
class FpBig {
 public:
  using value_type = Natural;
  using acc_type = Natural;
  static constexpr std::size_t lazy_terms = ~std::size_t{0};

  explicit FpBig(const Natural& p) {
    if (p < Natural(2u)) throw std::invalid_argument("FpBig: modulus must be >= 2");
    if (!is_probable_prime(p)) throw std::invalid_argument("p is not prime");
    p_ = std::make_shared<const Natural>(p);
  }

  Natural modulus() const { return *p_; }

  value_type zero() const { return Natural(); }
  value_type one() const { return Natural(1u); }
  value_type from_u64(std::uint64_t v) const { return Natural(v) % *p_; }
  value_type from_natural(const Natural& n) const { return n % *p_; }
  Natural to_natural(const value_type& a) const { return a; }

  bool is_zero(const value_type& a) const { return a.is_zero(); }

  value_type add(const value_type& a, const value_type& b) const {
    Natural s = a + b;
    if (s >= *p_) s -= *p_;
    return s;
  }
  value_type sub(const value_type& a, const value_type& b) const {
    if (a >= b) return a - b;
    return (a + *p_) - b;
  }
  value_type neg(const value_type& a) const { return a.is_zero() ? a : *p_ - a; }
  value_type mul(const value_type& a, const value_type& b) const { return (a * b) % *p_; }
  value_type inv(const value_type& a) const {
    if (a.is_zero()) throw division_by_zero("FpBig: inverse of zero");
    return invmod(a, *p_);
  }
  value_type random(Rng& rng) const { return uniform_below(rng, *p_); }

  acc_type acc_zero() const { return Natural(); }
  void acc_fma(acc_type& acc, const value_type& a, const value_type& b) const { acc += a * b; }
  value_type acc_reduce(const acc_type& acc) const { return acc % *p_; }
  acc_type acc_lift(const value_type& a) const { return a; }

  friend bool operator==(const FpBig& a, const FpBig& b) {
    return a.p_ == b.p_ || *a.p_ == *b.p_;
  }

 private:
  std::shared_ptr<const Natural> p_;
};

/// Sum of products with delayed reduction.
template <PrimeField F>
class DotAccumulator {
 public:
  explicit DotAccumulator(const F& f) : f_(f), acc_(f.acc_zero()) {}

  void add(const typename F::value_type& a, const typename F::value_type& b) {
    if (pending_ == F::lazy_terms - 1) {
      acc_ = f_.acc_lift(f_.acc_reduce(acc_));
      pending_ = 0;
    }
    f_.acc_fma(acc_, a, b);
    ++pending_;
  }
  typename F::value_type value() const { return f_.acc_reduce(acc_); }

 private:
  const F& f_;
  typename F::acc_type acc_;
  std::size_t pending_ = 0;
};

template <PrimeField F>
typename F::value_type fp_pow(const F& f, typename F::value_type a, const Natural& e) {
  typename F::value_type r = f.one();
  for (std::size_t i = e.bit_length(); i-- > 0;) {
    r = f.mul(r, r);
    if (e.bit(i)) r = f.mul(r, a);
  }
  return r;
}

template <PrimeField F>
std::string format_value(const F& f, const typename F::value_type& a) {
  return f.to_natural(a).str();
}

namespace detail {

// Nonresidue search: uniform sampling, then a deterministic sweep after
// 128 failed draws so tiny fields always terminate.
template <class Draw, class Sweep, class Accept>
auto search_element(Rng& rng, Draw draw, Sweep sweep, Accept accept) -> decltype(draw(rng)) {
  for (int i = 0; i < 128; ++i) {
    auto c = draw(rng);
    if (accept(c)) return c;
  }
  for (std::uint64_t k = 0;; ++k) {
    auto c = sweep(k);
    if (accept(c)) return c;
  }
}

}  // namespace detail

/// Square root in F_p. Returns nullopt when a is not a square.
template <PrimeField F>
std::optional<typename F::value_type> tonelli_shanks_fp(const F& f, const typename F::value_type& a,
                                                        Rng& rng) {
  using V = typename F::value_type;
  const Natural p = f.modulus();
  if (!p.is_odd()) throw std::invalid_argument("tonelli_shanks_fp: p must be odd");
  if (f.is_zero(a)) return a;
  const Natural pm1 = p - Natural(1u);
  if (fp_pow(f, a, pm1 >> 1) != f.one()) return std::nullopt;
  const std::size_t r = pm1.trailing_zeros();
  const Natural odd = pm1 >> r;
  V g = detail::search_element(
      rng, [&](Rng& g_) { return f.random(g_); }, [&](std::uint64_t k) { return f.from_u64(k + 2); },
      [&](const V& c) { return !f.is_zero(c) && fp_pow(f, c, pm1 >> 1) != f.one(); });
  V x = fp_pow(f, a, (odd + Natural(1u)) >> 1);
  V b = fp_pow(f, a, odd);
  V c = fp_pow(f, g, odd);
  std::size_t m = r;
  while (b != f.one()) {
    std::size_t i = 0;
    V b2 = b;
    while (b2 != f.one()) {
      b2 = f.mul(b2, b2);
      ++i;
    }
    if (i == m) return std::nullopt;
    V tt = c;
    for (std::size_t k = 0; k + i + 1 < m; ++k) tt = f.mul(tt, tt);
    x = f.mul(x, tt);
    c = f.mul(tt, tt);
    b = f.mul(b, c);
    m = i;
  }
  return x;
}

/// t-th root in F_p for prime t | p - 1 (Adleman-Manders-Miller).
/// Returns nullopt when a is not a t-th power.
template <PrimeField F>
std::optional<typename F::value_type> amm_root_fp(const F& f, const typename F::value_type& a,
                                                  const Natural& t, Rng& rng) {
  using V = typename F::value_type;
  const Natural p = f.modulus();
  const Natural pm1 = p - Natural(1u);
  if (t < Natural(2u) || !(pm1 % t).is_zero()) {
    throw std::invalid_argument("amm_root_fp: t must divide p - 1");
  }
  if (f.is_zero(a)) return a;
  if (fp_pow(f, a, pm1 / t) != f.one()) return std::nullopt;

  // p - 1 = t^e * m with t coprime to m.
  std::size_t e = 0;
  Natural m = pm1;
  while ((m % t).is_zero()) {
    m /= t;
    ++e;
  }
  // y = a^u with t*u = 1 mod m, so y^t = a * a^(k*m) for some k; the
  // correction a^(-k*m) lives in the t-Sylow subgroup.
  const Natural one = 1u;
  const Natural u = m == one ? Natural() : invmod(t % m, m);
  V y = fp_pow(f, a, u);
  V defect = f.mul(fp_pow(f, y, t), f.inv(a));  // y^t / a, in the Sylow group
  if (defect == f.one()) return y;

  V rho = detail::search_element(
      rng, [&](Rng& g_) { return f.random(g_); }, [&](std::uint64_t k) { return f.from_u64(k + 2); },
      [&](const V& c) { return !f.is_zero(c) && fp_pow(f, c, pm1 / t) != f.one(); });
  const V z = fp_pow(f, rho, m);  // order exactly t^e
  const V zeta = fp_pow(f, z, pow(t, e - 1));  // order t

  // Discrete log L of target = defect^{-1} to base z, one base-t digit at a time.
  const V target = f.inv(defect);
  const bool small_t = t.fits_u64() && t.to_u64() <= (1u << 16);
  std::map<Natural, Natural> table;  // baby steps for large t
  Natural step = 1u;
  if (!small_t) {
    Natural sq = 1u;
    while (sq * sq < t) sq += one;
    step = sq;
    V cur = f.one();
    for (Natural j = 0u; j < sq; j += one) {
      table.emplace(f.to_natural(cur), j);
      cur = f.mul(cur, zeta);
    }
  }
  auto digit_log = [&](const V& h) -> Natural {
    if (small_t) {
      V cur = f.one();
      for (std::uint64_t d = 0;; ++d) {
        if (cur == h) return Natural(d);
        cur = f.mul(cur, zeta);
        if (d > t.to_u64()) throw std::logic_error("amm_root_fp: discrete log failed");
      }
    }
    const V giant = f.inv(fp_pow(f, zeta, step));
    V cur = h;
    for (Natural i = 0u; i <= step; i += one) {
      auto it = table.find(f.to_natural(cur));
      if (it != table.end()) return (i * step + it->second) % t;
      cur = f.mul(cur, giant);
    }
    throw std::logic_error("amm_root_fp: discrete log failed");
  };

  Natural log = 0u;
  Natural tpow = 1u;  // t^k
  for (std::size_t k = 0; k < e; ++k) {
    // (target * z^{-log})^{t^{e-1-k}} = zeta^{digit}
    V h = f.mul(target, f.inv(fp_pow(f, z, log)));
    h = fp_pow(f, h, pow(t, e - 1 - k));
    log += digit_log(h) * tpow;
    tpow *= t;
  }
  if (!(log % t).is_zero()) return std::nullopt;
  return f.mul(y, fp_pow(f, z, log / t));
}

}  // namespace fqroot
