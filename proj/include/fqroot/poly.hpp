#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "fqroot/natural.hpp"
#include "fqroot/prime_field.hpp"

namespace fqroot {

/// Operand length (in coefficients) below which multiplication is schoolbook.
inline std::size_t karatsuba_threshold = 96;

namespace detail {

// Dot product of a[lo..hi] with b[k-lo..k-hi], reduced once per lazy block.
template <PrimeField F>
typename F::value_type dot_reversed(const F& f, const typename F::value_type* a, const typename F::value_type* b,
                                    std::size_t lo, std::size_t hi, std::size_t k) {
  if constexpr (requires { f.dot_reversed(a, b, lo, hi, k); }) return f.dot_reversed(a, b, lo, hi, k);
  constexpr std::size_t block = F::lazy_terms - 1;
  auto acc = f.acc_zero();
  std::size_t i = lo;
  for (;;) {
    const std::size_t end = hi + 1 - i > block ? i + block : hi + 1;
    for (; i < end; ++i) f.acc_fma(acc, a[i], b[k - i]);
    if (i > hi) return f.acc_reduce(acc);
    acc = f.acc_lift(f.acc_reduce(acc));
  }
}

template <PrimeField F>
void mul_schoolbook(const F& f, std::span<const typename F::value_type> a,
                    std::span<const typename F::value_type> b, std::span<typename F::value_type> out) {
  const std::size_t na = a.size(), nb = b.size();
  for (std::size_t k = 0; k + 1 < na + nb; ++k) {
    const std::size_t lo = k >= nb ? k - nb + 1 : 0;
    const std::size_t hi = std::min(k, na - 1);
    out[k] = dot_reversed(f, a.data(), b.data(), lo, hi, k);
  }
}

// First out.size() coefficients of a * b.
template <PrimeField F>
void mul_low_schoolbook(const F& f, std::span<const typename F::value_type> a,
                        std::span<const typename F::value_type> b, std::span<typename F::value_type> out) {
  const std::size_t na = a.size(), nb = b.size();
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (k + 1 >= na + nb) {
      out[k] = f.zero();
      continue;
    }
    const std::size_t lo = k >= nb ? k - nb + 1 : 0;
    const std::size_t hi = std::min(k, na - 1);
    out[k] = dot_reversed(f, a.data(), b.data(), lo, hi, k);
  }
}

template <PrimeField F>
void add_into(const F& f, std::span<typename F::value_type> dst, std::span<const typename F::value_type> src) {
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = f.add(dst[i], src[i]);
}

template <PrimeField F>
void sub_into(const F& f, std::span<typename F::value_type> dst, std::span<const typename F::value_type> src) {
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = f.sub(dst[i], src[i]);
}

template <PrimeField F>
void sqr_schoolbook(const F& f, std::span<const typename F::value_type> a, std::span<typename F::value_type> out) {
  const std::size_t na = a.size();
  for (std::size_t k = 0; k + 1 < 2 * na; ++k) {
    const std::size_t lo = k >= na ? k - na + 1 : 0;
    const std::size_t mid = (k + 1) / 2;  // pairs i < k - i
    auto v = mid > lo ? dot_reversed(f, a.data(), a.data(), lo, mid - 1, k) : f.zero();
    v = f.add(v, v);
    if (k % 2 == 0) v = f.add(v, f.mul(a[k / 2], a[k / 2]));
    out[k] = v;
  }
}

// Scratch needed by the Karatsuba routines for operands of length n.
inline std::size_t karatsuba_scratch(std::size_t n) { return 8 * n + 128; }

// Per-thread scratch; valid until the next call on the same thread.
template <class V>
std::span<V> scratch(std::size_t n) {
  thread_local std::vector<V> buf;
  if (buf.size() < n) buf.resize(n);
  return {buf.data(), n};
}

// out must have size a.size() + b.size() - 1 and is overwritten.
// ws is scratch of at least karatsuba_scratch(max(na, nb)) elements.
template <PrimeField F>
void mul_karatsuba(const F& f, std::span<const typename F::value_type> a,
                   std::span<const typename F::value_type> b, std::span<typename F::value_type> out,
                   std::span<typename F::value_type> ws) {
  using V = typename F::value_type;
  const std::size_t na = a.size(), nb = b.size();
  if (std::min(na, nb) < std::max<std::size_t>(karatsuba_threshold, 2)) {
    mul_schoolbook(f, a, b, out);
    return;
  }
  if (na != nb) {
    // Unbalanced: slice the longer operand into chunks the size of the shorter.
    auto longer = na > nb ? a : b;
    auto shorter = na > nb ? b : a;
    const std::size_t m = shorter.size();
    std::fill(out.begin(), out.end(), f.zero());
    std::span<V> tmp = ws.first(2 * m - 1);
    std::span<V> rest = ws.subspan(2 * m - 1);
    for (std::size_t off = 0; off < longer.size(); off += m) {
      const std::size_t len = std::min(m, longer.size() - off);
      std::span<V> prod = tmp.first(len + m - 1);
      mul_karatsuba(f, longer.subspan(off, len), shorter, prod, rest);
      add_into<F>(f, out.subspan(off, prod.size()), prod);
    }
    return;
  }
  const std::size_t n = na;
  const std::size_t h = n / 2;
  const std::size_t hh = n - h;  // high part length, hh >= h
  auto a0 = a.first(h), a1 = a.subspan(h);
  auto b0 = b.first(h), b1 = b.subspan(h);

  std::span<V> sa = ws.first(hh), sb = ws.subspan(hh, hh), z1 = ws.subspan(2 * hh, 2 * hh - 1);
  std::span<V> rest = ws.subspan(4 * hh);
  mul_karatsuba<F>(f, a0, b0, out.first(2 * h - 1), rest);
  out[2 * h - 1] = f.zero();
  mul_karatsuba<F>(f, a1, b1, out.subspan(2 * h, 2 * hh - 1), rest);
  std::copy(a1.begin(), a1.end(), sa.begin());
  std::copy(b1.begin(), b1.end(), sb.begin());
  add_into<F>(f, sa, a0);
  add_into<F>(f, sb, b0);
  mul_karatsuba<F>(f, std::span<const V>(sa), std::span<const V>(sb), z1, rest);
  sub_into<F>(f, z1, std::span<const V>(out.first(2 * h - 1)));
  sub_into<F>(f, z1, std::span<const V>(out.subspan(2 * h, 2 * hh - 1)));
  add_into<F>(f, out.subspan(h), std::span<const V>(z1));
}

template <PrimeField F>
void sqr_karatsuba(const F& f, std::span<const typename F::value_type> a, std::span<typename F::value_type> out,
                   std::span<typename F::value_type> ws) {
  using V = typename F::value_type;
  const std::size_t n = a.size();
  if (n < std::max<std::size_t>(karatsuba_threshold, 2)) {
    sqr_schoolbook(f, a, out);
    return;
  }
  const std::size_t h = n / 2;
  const std::size_t hh = n - h;
  auto a0 = a.first(h), a1 = a.subspan(h);
  std::span<V> sa = ws.first(hh), z1 = ws.subspan(hh, 2 * hh - 1);
  std::span<V> rest = ws.subspan(3 * hh);
  sqr_karatsuba<F>(f, a0, out.first(2 * h - 1), rest);
  out[2 * h - 1] = f.zero();
  sqr_karatsuba<F>(f, a1, out.subspan(2 * h, 2 * hh - 1), rest);
  std::copy(a1.begin(), a1.end(), sa.begin());
  add_into<F>(f, sa, a0);
  sqr_karatsuba<F>(f, std::span<const V>(sa), z1, rest);
  sub_into<F>(f, z1, std::span<const V>(out.first(2 * h - 1)));
  sub_into<F>(f, z1, std::span<const V>(out.subspan(2 * h, 2 * hh - 1)));
  add_into<F>(f, out.subspan(h), std::span<const V>(z1));
}

// First k = out.size() coefficients of a * b, with a.size() = b.size() = k.
template <PrimeField F>
void mul_low(const F& f, std::span<const typename F::value_type> a, std::span<const typename F::value_type> b,
             std::span<typename F::value_type> out, std::span<typename F::value_type> ws) {
  using V = typename F::value_type;
  const std::size_t k = out.size();
  if (k < 2 * std::max<std::size_t>(karatsuba_threshold, 2)) {
    mul_low_schoolbook(f, a, b, out);
    return;
  }
  const std::size_t h = (2 * k + 2) / 3;
  const std::size_t l = k - h;
  std::span<V> full = ws.first(2 * h - 1);
  std::span<V> rest = ws.subspan(2 * h - 1);
  mul_karatsuba<F>(f, a.first(h), b.first(h), full, rest);
  std::copy_n(full.begin(), k, out.begin());
  std::span<V> t = rest.first(l);
  rest = rest.subspan(l);
  mul_low<F>(f, a.first(l), b.subspan(h, l), t, rest);
  add_into<F>(f, out.subspan(h), std::span<const V>(t));
  mul_low<F>(f, a.subspan(h, l), b.first(l), t, rest);
  add_into<F>(f, out.subspan(h), std::span<const V>(t));
}

}  // namespace detail

/// Dense univariate polynomial over F_p, coefficients low to high.
/// The coefficient vector never has a trailing zero; the zero polynomial is empty.
template <PrimeField F>
class Poly {
 public:
  using field_type = F;
  using value_type = typename F::value_type;

  explicit Poly(F field) : f_(std::move(field)) {}
  Poly(F field, std::vector<value_type> coeffs) : f_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const F& field, value_type c) { return Poly(field, {std::move(c)}); }
  static Poly x(const F& field) { return monomial(field, field.one(), 1); }
  static Poly monomial(const F& field, value_type c, std::size_t k) {
    std::vector<value_type> v(k + 1, field.zero());
    v[k] = std::move(c);
    return Poly(field, std::move(v));
  }
  /// From small integer coefficients, low to high.
  static Poly from_u64(const F& field, std::initializer_list<std::uint64_t> cs) {
    std::vector<value_type> v;
    v.reserve(cs.size());
    for (auto c : cs) v.push_back(field.from_u64(c));
    return Poly(field, std::move(v));
  }

  const F& field() const { return f_; }
  std::span<const value_type> coeffs() const { return c_; }
  std::vector<value_type>&& take_coeffs() && { return std::move(c_); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  value_type coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_.zero(); }
  value_type leading() const { return c_.empty() ? f_.zero() : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == f_.one(); }
  bool is_constant() const { return c_.size() <= 1; }

  Poly monic() const {
    if (c_.empty()) return *this;
    return scaled(f_.inv(c_.back()));
  }
  Poly scaled(const value_type& s) const {
    std::vector<value_type> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = f_.mul(c_[i], s);
    return Poly(f_, std::move(v));
  }

  value_type eval(const value_type& x) const {
    value_type r = f_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = f_.add(f_.mul(r, x), c_[i]);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_same(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f_.add(c_[i], o.c_[i]);
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f_.sub(c_[i], o.c_[i]);
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    std::vector<value_type> v(a.c_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.f_.neg(a.c_[i]);
    return Poly(a.f_, std::move(v));
  }
  friend Poly operator*(const Poly& a, const Poly& b) { return poly_mul(a, b); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

  /// Coefficients truncated to the first k (i.e. this mod X^k).
  Poly truncated(std::size_t k) const {
    if (k >= c_.size()) return *this;
    return Poly(f_, std::vector<value_type>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(k)));
  }
  /// Coefficient reversal over length len (X^{len-1} p(1/X)).
  Poly reversed(std::size_t len) const {
    std::vector<value_type> v(len, f_.zero());
    for (std::size_t i = 0; i < std::min(len, c_.size()); ++i) v[len - 1 - i] = c_[i];
    return Poly(f_, std::move(v));
  }
  Poly shifted_down(std::size_t k) const {
    if (k >= c_.size()) return Poly(f_);
    return Poly(f_, std::vector<value_type>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  void check_same(const Poly& o) const {
    if (!(f_ == o.f_)) throw std::invalid_argument("Poly: modulus mismatch");
  }

  template <PrimeField G>
  friend Poly<G> poly_mul(const Poly<G>& a, const Poly<G>& b);

 private:
  void trim() {
    while (!c_.empty() && f_.is_zero(c_.back())) c_.pop_back();
  }

  F f_;
  std::vector<value_type> c_;
};

template <PrimeField F>
Poly<F> poly_sqr(const Poly<F>& a) {
  if (a.is_zero()) return a;
  using V = typename F::value_type;
  std::vector<V> out(2 * a.size() - 1);
  detail::sqr_karatsuba<F>(a.field(), a.coeffs(), out, detail::scratch<V>(detail::karatsuba_scratch(a.size())));
  return Poly<F>(a.field(), std::move(out));
}

template <PrimeField F>
Poly<F> poly_mul(const Poly<F>& a, const Poly<F>& b) {
  a.check_same(b);
  if (a.is_zero() || b.is_zero()) return Poly<F>(a.field());
  if (&a == &b) return poly_sqr(a);
  using V = typename F::value_type;
  std::vector<V> out(a.size() + b.size() - 1);
  auto ws = detail::scratch<V>(detail::karatsuba_scratch(std::max(a.size(), b.size())));
  detail::mul_karatsuba<F>(a.field(), a.coeffs(), b.coeffs(), out, ws);
  return Poly<F>(a.field(), std::move(out));
}

/// Reference O(n^2) product, independent of the Karatsuba path.
template <PrimeField F>
Poly<F> poly_mul_schoolbook(const Poly<F>& a, const Poly<F>& b) {
  a.check_same(b);
  const F& f = a.field();
  std::vector<typename F::value_type> out(a.size() + b.size() > 0 ? a.size() + b.size() - 1 : 0, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a.coeffs()[i], b.coeffs()[j]));
  return Poly<F>(f, std::move(out));
}

/// Long division; b must be nonzero.
template <PrimeField F>
std::pair<Poly<F>, Poly<F>> poly_divrem(const Poly<F>& a, const Poly<F>& b) {
  a.check_same(b);
  const F& f = a.field();
  if (b.is_zero()) throw division_by_zero("poly_divrem: zero divisor");
  if (a.degree() < b.degree()) return {Poly<F>(f), a};
  using V = typename F::value_type;
  std::vector<V> r(a.coeffs().begin(), a.coeffs().end());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<V> q(r.size() - db, f.zero());
  const auto bc = b.coeffs();
  const bool monic = b.is_monic();
  const V lc_inv = monic ? f.one() : f.inv(b.leading());
  for (std::size_t k = q.size(); k-- > 0;) {
    V c = r[k + db];
    if (f.is_zero(c)) continue;
    if (!monic) c = f.mul(c, lc_inv);
    q[k] = c;
    for (std::size_t i = 0; i < db; ++i) r[k + i] = f.sub(r[k + i], f.mul(c, bc[i]));
    r[k + db] = f.zero();
  }
  r.resize(db);
  return {Poly<F>(f, std::move(q)), Poly<F>(f, std::move(r))};
}

/// a mod f for monic f of degree >= 1.
template <PrimeField F>
Poly<F> poly_rem(const Poly<F>& a, const Poly<F>& f) {
  if (f.degree() < 1 || !f.is_monic()) throw std::invalid_argument("poly_rem: divisor must be monic of degree >= 1");
  return poly_divrem(a, f).second;
}

/// Monic gcd; gcd(0, 0) = 0.
template <PrimeField F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    a = poly_divrem(a, b).second;
    std::swap(a, b);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, u, v) with g monic and u*a + v*b = g.
template <PrimeField F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> poly_xgcd(const Poly<F>& a, const Poly<F>& b) {
  a.check_same(b);
  const F& fld = a.field();
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("poly_xgcd: both arguments zero");
  Poly<F> r0 = a, r1 = b;
  Poly<F> s0 = Poly<F>::constant(fld, fld.one()), s1(fld);
  Poly<F> t0(fld), t1 = Poly<F>::constant(fld, fld.one());
  while (!r1.is_zero()) {
    auto [q, r2] = poly_divrem(r0, r1);
    Poly<F> s2 = s0 - q * s1;
    Poly<F> t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const auto li = fld.inv(r0.leading());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

/// Resultant res(a, b) by the Euclidean remainder sequence with
/// leading-coefficient tracking. res(f, a) = prod a(alpha) over roots alpha of monic f.
template <PrimeField F>
typename F::value_type resultant(Poly<F> a, Poly<F> b) {
  a.check_same(b);
  const F& f = a.field();
  using V = typename F::value_type;
  if (a.is_zero() || b.is_zero()) return f.zero();
  V acc = f.one();
  for (;;) {
    const auto m = static_cast<std::size_t>(a.degree());
    const auto n = static_cast<std::size_t>(b.degree());
    if (m == 0) return f.mul(acc, fp_pow(f, a.leading(), Natural(n)));
    if (n == 0) return f.mul(acc, fp_pow(f, b.leading(), Natural(m)));
    // res(a, b) = (-1)^{mn} res(b, a) = (-1)^{mn} lc(b)^{m - deg r} res(b, r)
    Poly<F> r = poly_divrem(a, b).second;
    if (r.is_zero()) return f.zero();
    if ((m & 1) && (n & 1)) acc = f.neg(acc);
    acc = f.mul(acc, fp_pow(f, b.leading(), Natural(m - static_cast<std::size_t>(r.degree()))));
    a = std::move(b);
    b = std::move(r);
  }
}

/// Precomputed reduction modulo a fixed monic f via a truncated power-series
/// inverse of its reversal, so remainders cost two multiplications.
template <PrimeField F>
class PolyModulus {
 public:
  explicit PolyModulus(Poly<F> f) {
    if (f.degree() < 1 || !f.is_monic()) throw std::invalid_argument("PolyModulus: modulus must be monic of degree >= 1");
    const F fld = f.field();
    auto d = std::make_shared<Data>(Data{std::move(f), Poly<F>(fld)});
    const std::size_t n = static_cast<std::size_t>(d->f.degree());
    if (n > 1) {
      // inverse of rev(f) modulo X^{n-1}
      const Poly<F> rf = d->f.reversed(n + 1);
      const std::size_t k = n - 1;
      using V = typename F::value_type;
      std::vector<V> inv(k, fld.zero());
      inv[0] = fld.one();
      for (std::size_t i = 1; i < k; ++i) {
        DotAccumulator<F> acc(fld);
        for (std::size_t j = 1; j <= i && j < rf.size(); ++j) acc.add(rf.coeffs()[j], inv[i - j]);
        inv[i] = fld.neg(acc.value());
      }
      d->rev_inv = Poly<F>(fld, std::move(inv));
    }
    d_ = std::move(d);
  }

  const Poly<F>& poly() const { return d_->f; }
  const F& field() const { return d_->f.field(); }
  std::size_t degree() const { return static_cast<std::size_t>(d_->f.degree()); }

  Poly<F> reduce(const Poly<F>& a) const {
    const std::size_t n = degree();
    if (a.degree() < static_cast<std::ptrdiff_t>(n)) return a;
    if (n <= 8 || a.degree() > static_cast<std::ptrdiff_t>(2 * n - 2)) return poly_divrem(a, d_->f).second;
    using V = typename F::value_type;
    const F& fld = field();
    const std::size_t k = static_cast<std::size_t>(a.degree()) - n + 1;  // quotient length, k <= n - 1
    const auto ac = a.coeffs();
    // q = reversed low_k(rev(a_high) * rev_inv)
    std::vector<V> buf(3 * n, fld.zero());
    std::span<V> top(buf.data(), k), inv(buf.data() + k, k), q(buf.data() + 2 * k, k);
    for (std::size_t i = 0; i < k; ++i) top[i] = ac[n + k - 1 - i];
    const auto ri = d_->rev_inv.coeffs();
    std::copy_n(ri.begin(), std::min(k, ri.size()), inv.begin());
    auto ws = detail::scratch<V>(detail::karatsuba_scratch(n) + 2 * n);
    std::span<V> qrev = ws.first(k);
    detail::mul_low<F>(fld, top, inv, qrev, ws.subspan(k));
    for (std::size_t i = 0; i < k; ++i) q[i] = qrev[k - 1 - i];
    // r = a_low - low_n(q * f)
    std::vector<V> qp(n, fld.zero()), fl(n);
    std::copy(q.begin(), q.end(), qp.begin());
    const auto fc = d_->f.coeffs();
    std::copy_n(fc.begin(), n, fl.begin());
    std::vector<V> prod(n);
    detail::mul_low<F>(fld, qp, fl, prod, ws);
    std::vector<V> r(ac.begin(), ac.begin() + static_cast<std::ptrdiff_t>(n));
    detail::sub_into<F>(fld, r, std::span<const V>(prod));
    return Poly<F>(fld, std::move(r));
  }

  Poly<F> mul(const Poly<F>& a, const Poly<F>& b) const { return reduce(poly_mul(a, b)); }
  Poly<F> sqr(const Poly<F>& a) const { return reduce(poly_sqr(a)); }

  Poly<F> pow(const Poly<F>& a, const Natural& e) const {
    Poly<F> base = reduce(a);
    Poly<F> r = Poly<F>::constant(field(), field().one());
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      r = sqr(r);
      if (e.bit(i)) r = mul(r, base);
    }
    return r;
  }

  friend bool operator==(const PolyModulus& a, const PolyModulus& b) {
    return a.d_ == b.d_ || a.d_->f == b.d_->f;
  }

 private:
  struct Data {
    Poly<F> f;
    Poly<F> rev_inv;
  };
  std::shared_ptr<const Data> d_;
};

/// a^e mod f for monic f of degree >= 1.
template <PrimeField F>
Poly<F> poly_powmod(const Poly<F>& a, const Natural& e, const Poly<F>& f) {
  return PolyModulus<F>(f).pow(a, e);
}

/// Space-separated decimal coefficients, low to high; zero prints as "0".
template <PrimeField F>
std::string format_poly(const Poly<F>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ' ';
    out += a.field().to_natural(a.coeffs()[i]).str();
  }
  return out;
}

/// Parses the coefficient text form. Coefficients must be canonical (< p).
template <PrimeField F>
Poly<F> parse_poly(const F& field, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<typename F::value_type> cs;
  const Natural p = field.modulus();
  std::string tok;
  while (in >> tok) {
    Natural v = Natural::parse(tok);
    if (v >= p) throw std::invalid_argument("coefficient " + tok + " is not reduced modulo p");
    cs.push_back(field.from_natural(v));
  }
  return Poly<F>(field, std::move(cs));
}

template <PrimeField F>
Poly<F> random_poly(const F& field, std::size_t len, Rng& rng) {
  std::vector<typename F::value_type> cs(len);
  for (auto& c : cs) c = field.random(rng);
  return Poly<F>(field, std::move(cs));
}

}  // namespace fqroot
