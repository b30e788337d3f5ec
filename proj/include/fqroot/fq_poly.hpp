#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fqroot/fq_field.hpp"

namespace fqroot {

/// Dense polynomial in Y over F_q, low to high, no trailing zeros.
/// Small degrees only (root extraction works with deg <= t).
template <PrimeField F>
class FqPoly {
 public:
  using Elem = FqElement<F>;

  explicit FqPoly(typename FieldCtx<F>::Ptr ctx) : ctx_(std::move(ctx)) {}
  FqPoly(typename FieldCtx<F>::Ptr ctx, std::vector<Elem> c) : ctx_(std::move(ctx)), c_(std::move(c)) { trim(); }

  static FqPoly constant(const Elem& c) { return FqPoly(c.ctx(), {c}); }
  static FqPoly y(const std::shared_ptr<const FieldCtx<F>>& ctx) {
    return FqPoly(ctx, {Elem::zero(ctx), Elem::one(ctx)});
  }

  const typename FieldCtx<F>::Ptr& ctx() const { return ctx_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem::zero(ctx_); }
  const Elem& leading() const { return c_.back(); }

  FqPoly monic() const {
    if (c_.empty()) return *this;
    const Elem li = c_.back().inv();
    std::vector<Elem> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(c * li);
    return FqPoly(ctx_, std::move(v));
  }

  friend FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    std::vector<Elem> v;
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(a.coeff(i) + b.coeff(i));
    return FqPoly(a.ctx_, std::move(v));
  }
  friend FqPoly operator-(const FqPoly& a, const FqPoly& b) {
    std::vector<Elem> v;
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(a.coeff(i) - b.coeff(i));
    return FqPoly(a.ctx_, std::move(v));
  }
  friend FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    if (a.is_zero() || b.is_zero()) return FqPoly(a.ctx_);
    std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, Elem::zero(a.ctx_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return FqPoly(a.ctx_, std::move(v));
  }
  friend bool operator==(const FqPoly& a, const FqPoly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder by nonzero b.
  friend std::pair<FqPoly, FqPoly> divrem(const FqPoly& a, const FqPoly& b) {
    if (b.is_zero()) throw division_by_zero("FqPoly: zero divisor");
    if (a.degree() < b.degree()) return {FqPoly(a.ctx_), a};
    std::vector<Elem> r = a.c_;
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<Elem> q(r.size() - db, Elem::zero(a.ctx_));
    const Elem li = b.leading().inv();
    for (std::size_t k = q.size(); k-- > 0;) {
      if (r[k + db].is_zero()) continue;
      const Elem c = r[k + db] * li;
      q[k] = c;
      for (std::size_t i = 0; i <= db; ++i) r[k + i] -= c * b.c_[i];
    }
    r.resize(db, Elem::zero(a.ctx_));
    return {FqPoly(a.ctx_, std::move(q)), FqPoly(a.ctx_, std::move(r))};
  }

  /// Monic gcd.
  friend FqPoly gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
      a = divrem(a, b).second;
      std::swap(a, b);
    }
    return a.monic();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  typename FieldCtx<F>::Ptr ctx_;
  std::vector<Elem> c_;
};

/// F_q[Y]/<h> for monic h.
template <PrimeField F>
class FqQuotientRing {
 public:
  using Elem = FqElement<F>;

  explicit FqQuotientRing(FqPoly<F> h) : h_(std::move(h)) {
    if (h_.degree() < 1 || !h_.leading().is_one()) throw std::invalid_argument("FqQuotientRing: modulus must be monic");
  }

  const FqPoly<F>& modulus() const { return h_; }
  std::size_t degree() const { return static_cast<std::size_t>(h_.degree()); }

  FqPoly<F> reduce(const FqPoly<F>& a) const { return divrem(a, h_).second; }
  FqPoly<F> mul(const FqPoly<F>& a, const FqPoly<F>& b) const { return reduce(a * b); }
  FqPoly<F> pow(const FqPoly<F>& a, const Natural& e) const {
    FqPoly<F> r = FqPoly<F>::constant(Elem::one(h_.ctx()));
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      r = mul(r, r);
      if (e.bit(i)) r = mul(r, a);
    }
    return r;
  }

  /// z^{p^j} where composer evaluates at Xi_j and y_j = Y^{p^j} mod h:
  /// Frobenius on every coefficient, then Horner in y_j.
  FqPoly<F> frobenius(const FqPoly<F>& z, const Composer<F>& composer, const FqPoly<F>& y_j) const {
    const auto& ctx = h_.ctx();
    if (z.is_zero()) return z;
    std::vector<Poly<F>> reps;
    reps.reserve(z.coeffs().size());
    for (const auto& c : z.coeffs()) reps.push_back(c.rep());
    std::vector<Poly<F>> mapped = composer.apply(reps);
    FqPoly<F> acc = FqPoly<F>::constant(Elem(ctx, mapped.back()));
    for (std::size_t i = mapped.size() - 1; i-- > 0;) {
      acc = mul(acc, y_j) + FqPoly<F>::constant(Elem(ctx, mapped[i]));
    }
    return acc;
  }

 private:
  FqPoly<F> h_;
};

}  // namespace fqroot
