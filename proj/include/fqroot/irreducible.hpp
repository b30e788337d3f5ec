#pragma once

#include <cstdint>
#include <stdexcept>

#include "fqroot/modcomp.hpp"

namespace fqroot {

/// Rabin's test: x^{p^n} = x mod f, and gcd(x^{p^{n/l}} - x, f) = 1 for every
/// prime l | n. The Frobenius images come from composition doubling.
template <PrimeField F>
bool is_irreducible(const Poly<F>& f) {
  if (f.degree() < 1 || !f.is_monic()) throw std::invalid_argument("is_irreducible: f must be monic of degree >= 1");
  const auto n = static_cast<std::uint64_t>(f.degree());
  if (n == 1) return true;
  const PolyModulus<F> mod(f);
  const FrobTable<F> table(mod);
  const Poly<F> x = Poly<F>::x(f.field());
  if (table.xi(n) != x) return false;
  for (const auto& [l, e] : factor_trial(n)) {
    const std::uint64_t ll = l.to_u64();
    const Poly<F> g = poly_gcd(table.xi(n / ll) - x, f);
    if (g.degree() != 0) return false;
  }
  return true;
}

/// Uniformly random monic irreducible polynomial of degree n.
template <PrimeField F>
Poly<F> random_irreducible(const F& field, std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_irreducible: degree must be >= 1");
  for (;;) {
    std::vector<typename F::value_type> cs(n + 1);
    for (std::size_t i = 0; i < n; ++i) cs[i] = field.random(rng);
    cs[n] = field.one();
    Poly<F> f(field, std::move(cs));
    if (is_irreducible(f)) return f;
  }
}

}  // namespace fqroot
