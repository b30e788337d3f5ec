#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fqroot/poly.hpp"

namespace fqroot {

/// Brent-Kung modular composition with a fixed inner argument h.
///
/// Precomputes the baby steps h^0 .. h^{k-1} (k = ceil(sqrt(n))) and the giant
/// step h^k mod f. Every g(h) is then one blocked matrix product plus a
/// Horner pass over ceil(len(g)/k) blocks. Compositions that share h should
/// share a Composer.
template <PrimeField F>
class Composer {
 public:
  using V = typename F::value_type;

  Composer(PolyModulus<F> mod, const Poly<F>& h) : mod_(std::move(mod)) {
    const F& f = mod_.field();
    n_ = mod_.degree();
    k_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_))));
    if (k_ == 0) k_ = 1;
    while (k_ * k_ < n_) ++k_;
    const Poly<F> hr = mod_.reduce(h);
    baby_t_.assign(n_ * k_, f.zero());
    Poly<F> cur = Poly<F>::constant(f, f.one());
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t c = 0; c < cur.size(); ++c) baby_t_[c * k_ + i] = cur.coeffs()[c];
      cur = mod_.mul(cur, hr);
    }
    giant_ = std::move(cur);
  }

  const PolyModulus<F>& modulus() const { return mod_; }

  /// g(h) mod f.
  Poly<F> operator()(const Poly<F>& g) const {
    std::vector<Poly<F>> out = apply(std::span<const Poly<F>>(&g, 1));
    return std::move(out.front());
  }

  /// g(h) mod f for every g, with all blocks in one matrix product.
  std::vector<Poly<F>> apply(std::span<const Poly<F>> gs) const {
    const F& f = mod_.field();
    std::vector<Poly<F>> out;
    out.reserve(gs.size());
    std::vector<V> block(k_);
    for (const Poly<F>& g : gs) {
      if (g.is_constant()) {
        out.push_back(g);
        continue;
      }
      const std::size_t nblocks = (g.size() + k_ - 1) / k_;
      std::vector<Poly<F>> parts;
      parts.reserve(nblocks);
      for (std::size_t j = 0; j < nblocks; ++j) {
        const std::size_t len = std::min(k_, g.size() - j * k_);
        std::fill(block.begin(), block.end(), f.zero());
        std::copy_n(g.coeffs().begin() + static_cast<std::ptrdiff_t>(j * k_), len, block.begin());
        std::vector<V> coeffs(n_);
        for (std::size_t c = 0; c < n_; ++c) {
          DotAccumulator<F> acc(f);
          const V* row = baby_t_.data() + c * k_;
          for (std::size_t i = 0; i < len; ++i) acc.add(block[i], row[i]);
          coeffs[c] = acc.value();
        }
        parts.emplace_back(f, std::move(coeffs));
      }
      Poly<F> r = std::move(parts.back());
      for (std::size_t j = nblocks - 1; j-- > 0;) r = mod_.mul(r, giant_) + parts[j];
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  PolyModulus<F> mod_;
  std::size_t n_ = 0;
  std::size_t k_ = 1;
  std::vector<V> baby_t_;  // n x k, row c holds coefficient c of h^0..h^{k-1}
  Poly<F> giant_{mod_.field()};
};

/// g(h) mod f. Requires deg h < deg f; g may have any degree.
template <PrimeField F>
Poly<F> compose_mod(const Poly<F>& g, const Poly<F>& h, const PolyModulus<F>& f) {
  if (h.degree() >= static_cast<std::ptrdiff_t>(f.degree())) throw std::invalid_argument("compose_mod: deg h must be below deg f");
  return Composer<F>(f, h)(g);
}

template <PrimeField F>
Poly<F> compose_mod(const Poly<F>& g, const Poly<F>& h, const Poly<F>& f) {
  return compose_mod(g, h, PolyModulus<F>(f));
}

/// Horner-rule composition, O(n M(n)); the reference for compose_mod.
template <PrimeField F>
Poly<F> compose_horner(const Poly<F>& g, const Poly<F>& h, const Poly<F>& f) {
  if (h.degree() >= f.degree()) throw std::invalid_argument("compose_horner: deg h must be below deg f");
  Poly<F> r(f.field());
  for (std::size_t i = g.size(); i-- > 0;) {
    r = poly_rem(poly_mul_schoolbook(r, h), f) + Poly<F>::constant(f.field(), g.coeffs()[i]);
  }
  return r;
}

/// Memoized Frobenius images Xi_j = x^{p^j} mod f.
///
/// When f is known irreducible of degree n the table is built with period n
/// and exponents are reduced modulo n. Entries are computed outside the lock
/// and published whole, so concurrent readers never observe a partial entry.
template <PrimeField F>
class FrobTable {
 public:
  explicit FrobTable(PolyModulus<F> mod, std::optional<std::uint64_t> period = std::nullopt)
      : mod_(std::move(mod)), period_(period) {}

  FrobTable(const FrobTable&) = delete;
  FrobTable& operator=(const FrobTable&) = delete;

  const PolyModulus<F>& modulus() const { return mod_; }

  /// x^{p^j} mod f, built from Xi_1 by composition doubling.
  Poly<F> xi(std::uint64_t j) const {
    if (period_) j %= *period_;
    if (auto hit = lookup(j)) return *hit;
    if (j == 0) return store(0, mod_.reduce(Poly<F>::x(mod_.field())));
    if (j == 1) return store(1, mod_.pow(Poly<F>::x(mod_.field()), mod_.field().modulus()));
    const auto c1 = composer(1);
    int top = 63;
    while (!((j >> top) & 1)) --top;
    std::uint64_t k = 1;
    Poly<F> cur = xi(1);
    for (int b = top - 1; b >= 0; --b) {
      const std::uint64_t k2 = 2 * k;
      if (auto hit = lookup(k2)) {
        cur = *hit;
      } else {
        cur = store(k2, Composer<F>(mod_, cur)(cur));
      }
      k = k2;
      if ((j >> b) & 1) {
        ++k;
        if (auto hit = lookup(k)) {
          cur = *hit;
        } else {
          cur = store(k, (*c1)(cur));
        }
      }
    }
    return cur;
  }

  Poly<F> xi(const Natural& j) const {
    if (period_) return xi((j % Natural(*period_)).to_u64());
    return xi(j.to_u64());
  }

  /// Cached composer with inner argument Xi_j.
  std::shared_ptr<const Composer<F>> composer(std::uint64_t j) const {
    if (period_) j %= *period_;
    {
      std::lock_guard lock(mu_);
      auto it = composers_.find(j);
      if (it != composers_.end()) return it->second;
    }
    auto c = std::make_shared<const Composer<F>>(mod_, xi(j));
    std::lock_guard lock(mu_);
    return composers_.emplace(j, std::move(c)).first->second;
  }

  /// r^{p^j} mod f as one composition r(Xi_j).
  Poly<F> apply(const Poly<F>& r, std::uint64_t j) const {
    if (r.is_constant()) return r;
    if (period_ && j % *period_ == 0) return mod_.reduce(r);
    return (*composer(j))(mod_.reduce(r));
  }

 private:
  std::optional<Poly<F>> lookup(std::uint64_t j) const {
    std::lock_guard lock(mu_);
    auto it = xi_.find(j);
    if (it == xi_.end()) return std::nullopt;
    return it->second;
  }
  Poly<F> store(std::uint64_t j, Poly<F> v) const {
    std::lock_guard lock(mu_);
    return xi_.emplace(j, std::move(v)).first->second;
  }

  PolyModulus<F> mod_;
  std::optional<std::uint64_t> period_;
  mutable std::mutex mu_;
  mutable std::map<std::uint64_t, Poly<F>> xi_;
  mutable std::map<std::uint64_t, std::shared_ptr<const Composer<F>>> composers_;
};

/// x^{p^j} mod f.
template <PrimeField F>
Poly<F> frobenius_power(const FrobTable<F>& table, const Natural& j) {
  return table.xi(j);
}

/// r^{p^j} mod f.
template <PrimeField F>
Poly<F> apply_frobenius(const Poly<F>& r, const Natural& j, const FrobTable<F>& table) {
  if (r.degree() >= static_cast<std::ptrdiff_t>(table.modulus().degree())) {
    throw std::invalid_argument("apply_frobenius: operand must be reduced");
  }
  std::uint64_t jj = 0;
  // Without a known period Xi_j needs the exact exponent.
  jj = j.fits_u64() ? j.to_u64() : (j % Natural(table.modulus().degree())).to_u64();
  return table.apply(r, jj);
}

/// Minimal polynomial over F_p of b in F_p[X]/<f>, f irreducible.
///
/// Finds the first linear dependency among 1, b, b^2, ... by incremental
/// Gaussian elimination; the cost is O(d^2 n) for a result of degree d.
template <PrimeField F>
Poly<F> minimal_polynomial(const Poly<F>& b, const PolyModulus<F>& mod) {
  using V = typename F::value_type;
  const F& f = mod.field();
  const std::size_t n = mod.degree();
  if (b.degree() >= static_cast<std::ptrdiff_t>(n)) throw std::invalid_argument("minimal_polynomial: operand must be reduced");
  if (b.is_constant()) return Poly<F>(f, {f.neg(b.coeff(0)), f.one()});

  struct Row {
    std::vector<V> vec;
    std::vector<V> combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  Poly<F> power = Poly<F>::constant(f, f.one());
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<V> v(n, f.zero());
    std::copy(power.coeffs().begin(), power.coeffs().end(), v.begin());
    std::vector<V> combo(k + 1, f.zero());
    combo[k] = f.one();
    for (const Row& r : rows) {
      const V c = v[r.pivot];
      if (f.is_zero(c)) continue;
      for (std::size_t i = 0; i < n; ++i) v[i] = f.sub(v[i], f.mul(c, r.vec[i]));
      for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] = f.sub(combo[i], f.mul(c, r.combo[i]));
    }
    auto nz = std::find_if(v.begin(), v.end(), [&](const V& x) { return !f.is_zero(x); });
    if (nz == v.end()) return Poly<F>(f, std::move(combo));
    const std::size_t piv = static_cast<std::size_t>(nz - v.begin());
    const V inv = f.inv(v[piv]);
    for (auto& x : v) x = f.mul(x, inv);
    for (auto& x : combo) x = f.mul(x, inv);
    rows.push_back(Row{std::move(v), std::move(combo), piv});
    power = mod.mul(power, b);
  }
  throw std::logic_error("minimal_polynomial: no dependency found");
}

template <PrimeField F>
Poly<F> minimal_polynomial(const Poly<F>& b, const Poly<F>& f) {
  return minimal_polynomial(b, PolyModulus<F>(f));
}

}  // namespace fqroot
