#pragma once

#include <bit>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

namespace fqroot {

/// Random source used by every randomized operation. Seeded by the caller.
using Rng = std::mt19937_64;

/// Unbounded non-negative integer.
///
/// Thin value wrapper around boost's cpp_int that keeps the magnitude
/// non-negative: subtraction below zero throws instead of wrapping.
class Natural {
 public:
  using backend_type = boost::multiprecision::cpp_int;

  Natural() = default;

  template <std::unsigned_integral U>
  Natural(U v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  template <std::signed_integral S>
  Natural(S v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (v < 0) throw std::domain_error("Natural: negative value");
  }

  explicit Natural(backend_type v) : v_(std::move(v)) {
    if (v_.sign() < 0) throw std::domain_error("Natural: negative value");
  }

  /// Parses an unsigned decimal string: digits only, no sign or whitespace.
  static Natural parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Natural: empty string");
    backend_type v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') {
        throw std::invalid_argument("Natural: invalid digit in '" + std::string(s) + "'");
      }
      v *= 10;
      v += static_cast<unsigned>(ch - '0');
    }
    return Natural(std::move(v));
  }

  std::string str() const { return v_.str(); }

  const backend_type& raw() const { return v_; }

  bool is_zero() const { return v_.is_zero(); }
  bool is_odd() const { return bit(0); }

  bool fits_u64() const { return bit_length() <= 64; }
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("Natural: value exceeds 64 bits");
    return static_cast<std::uint64_t>(v_);
  }

  /// Number of significant bits; 0 for zero.
  std::size_t bit_length() const {
    return v_.is_zero() ? 0 : boost::multiprecision::msb(v_) + 1;
  }
  bool bit(std::size_t i) const { return boost::multiprecision::bit_test(v_, static_cast<unsigned>(i)); }

  /// Exponent of the largest power of two dividing a nonzero value.
  std::size_t trailing_zeros() const {
    if (v_.is_zero()) throw std::domain_error("Natural: trailing_zeros of zero");
    return boost::multiprecision::lsb(v_);
  }

  Natural& operator+=(const Natural& o) {
    v_ += o.v_;
    return *this;
  }
  Natural& operator-=(const Natural& o) {
    if (v_ < o.v_) throw std::domain_error("Natural: subtraction underflow");
    v_ -= o.v_;
    return *this;
  }
  Natural& operator*=(const Natural& o) {
    v_ *= o.v_;
    return *this;
  }
  Natural& operator/=(const Natural& o) {
    if (o.is_zero()) throw std::domain_error("Natural: division by zero");
    v_ /= o.v_;
    return *this;
  }
  Natural& operator%=(const Natural& o) {
    if (o.is_zero()) throw std::domain_error("Natural: division by zero");
    v_ %= o.v_;
    return *this;
  }
  Natural& operator<<=(std::size_t k) {
    v_ <<= k;
    return *this;
  }
  Natural& operator>>=(std::size_t k) {
    v_ >>= k;
    return *this;
  }

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
  friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
  friend Natural operator/(Natural a, const Natural& b) { return a /= b; }
  friend Natural operator%(Natural a, const Natural& b) { return a %= b; }
  friend Natural operator<<(Natural a, std::size_t k) { return a <<= k; }
  friend Natural operator>>(Natural a, std::size_t k) { return a >>= k; }

  friend bool operator==(const Natural& a, const Natural& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    int c = a.v_.compare(b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Natural& a) { return os << a.str(); }

 private:
  backend_type v_;
};

inline Natural pow(Natural base, std::size_t e) {
  Natural r = 1u;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

inline Natural gcd(Natural a, Natural b) {
  while (!b.is_zero()) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

/// base^e mod m for m >= 1.
inline Natural powmod(const Natural& base, const Natural& e, const Natural& m) {
  if (m.is_zero()) throw std::domain_error("powmod: zero modulus");
  return Natural(boost::multiprecision::powm(base.raw(), e.raw(), m.raw()));
}

/// Inverse of a modulo m. Throws std::domain_error when gcd(a, m) != 1.
inline Natural invmod(const Natural& a, const Natural& m) {
  if (m < Natural(2u)) throw std::invalid_argument("invmod: modulus must be >= 2");
  using I = Natural::backend_type;
  I r0 = m.raw(), r1 = a.raw() % m.raw();
  I s0 = 0, s1 = 1;
  while (!r1.is_zero()) {
    I q = r0 / r1;
    I r2 = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    I s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0 != 1) throw std::domain_error("invmod: arguments are not coprime");
  s0 %= m.raw();
  if (s0.sign() < 0) s0 += m.raw();
  return Natural(std::move(s0));
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all 64-bit inputs with this witness set.
inline bool miller_rabin_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int r = std::countr_zero(d);
  d >>= r;
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// Miller-Rabin. Deterministic below 2^64, 40 random rounds above.
inline bool is_probable_prime(const Natural& n) {
  if (n.fits_u64()) return detail::miller_rabin_u64(n.to_u64());
  std::mt19937_64 gen(0x5eed'1234'abcdULL);
  return boost::multiprecision::miller_rabin_test(n.raw(), 40, gen);
}

/// Least s >= 1 with p^s = 1 mod t. Requires gcd(p, t) = 1 and t >= 2.
inline Natural order_mod(const Natural& p, const Natural& t) {
  if (t < Natural(2u)) throw std::invalid_argument("order_mod: t must be >= 2");
  if (gcd(p, t) != Natural(1u)) throw std::invalid_argument("order_mod: gcd(p, t) != 1");
  Natural base = p % t;
  Natural acc = base;
  Natural s = 1u;
  const Natural one = 1u;
  while (acc != one) {
    acc = (acc * base) % t;
    s += one;
  }
  return s;
}

/// Uniform integer in [0, bound) by rejection on the bit length of bound.
inline Natural uniform_below(Rng& rng, const Natural& bound) {
  if (bound.is_zero()) throw std::invalid_argument("uniform_below: empty range");
  const std::size_t bits = bound.bit_length();
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
  const std::uint64_t top_mask = top_bits == 64 ? ~0ull : ((1ull << top_bits) - 1);
  for (;;) {
    Natural::backend_type v = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t limb = rng();
      if (w == 0) limb &= top_mask;
      v <<= 64;
      v += limb;
    }
    if (v < bound.raw()) return Natural(std::move(v));
  }
}

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const unsigned bits = 64 - static_cast<unsigned>(std::countl_zero((bound - 1) | 1));
  const std::uint64_t mask = bits == 64 ? ~0ull : ((1ull << bits) - 1);
  for (;;) {
    std::uint64_t v = rng() & mask;
    if (v < bound) return v;
  }
}

/// Prime factorization by trial division, ascending primes with exponents.
inline std::vector<std::pair<Natural, unsigned>> factor_trial(std::uint64_t m) {
  std::vector<std::pair<Natural, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e) out.emplace_back(Natural(d), e);
  }
  if (m > 1) out.emplace_back(Natural(m), 1u);
  return out;
}

}  // namespace fqroot
