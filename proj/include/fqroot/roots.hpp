#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fqroot/fq_field.hpp"
#include "fqroot/fq_poly.hpp"
#include "fqroot/modcomp.hpp"
#include "fqroot/prime_field.hpp"

namespace fqroot {

class retry_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RootOptions {
  /// Bound on resampling loops; with failure probability <= 1/3 per draw it
  /// is never reached in practice.
  std::size_t max_retries = 128;
};

enum class BaseCase {
  Zero,           // a = 0
  PrimeField,     // s = 1: root taken in F_p
  SubfieldKS,     // 1 < s < n: Kaltofen-Shoup in F_{p^s}
  SubfieldPower,  // a'b^t fell into a proper subfield where t-th roots are unique
  Degenerate,     // s = n: Kaltofen-Shoup on F_q directly
};

template <PrimeField F>
struct RootResult {
  FqElement<F> root;
  std::size_t retries = 0;
  BaseCase base_case = BaseCase::PrimeField;
};

/// (xi_i, zeta_i, delta_i) for a fixed lambda and step s:
///   xi_i    = x^{p^{is}}
///   zeta_i  = lambda^{p^s + p^{2s} + ... + p^{is}}
///   delta_i = sum_{k=1..i} lambda^{p^s + ... + p^{ks}}
template <PrimeField F>
struct FrobChainState {
  FqElement<F> xi;
  FqElement<F> zeta;
  FqElement<F> delta;
  std::uint64_t i = 0;
  std::uint64_t s = 0;
};

namespace detail {

template <PrimeField F>
void check_root_index(const FieldCtx<F>& ctx, const Natural& t) {
  if (t < Natural(2u) || !is_probable_prime(t)) throw std::invalid_argument("root index t must be prime");
  if (!((ctx.order() - Natural(1u)) % t).is_zero()) throw std::invalid_argument("root index t must divide q - 1");
}

template <PrimeField F>
std::uint64_t step_of(const FieldCtx<F>& ctx, const Natural& t) {
  return order_mod(ctx.p() % t, t).to_u64();
}

}  // namespace detail

/// Binary powering over i with O(1) compositions per level.
/// xi1 = x^{p^s} and zeta1 = lambda^{p^s} must be supplied.
template <PrimeField F>
FrobChainState<F> xi_zeta_delta(const FqElement<F>& lambda, std::uint64_t i, std::uint64_t s, const FqElement<F>& xi1,
                                const FqElement<F>& zeta1) {
  (void)lambda;
  if (i == 0) throw std::invalid_argument("xi_zeta_delta: i must be >= 1");
  const auto& ctx = xi1.ctx();
  const Composer<F> c1(ctx->modulus(), xi1.rep());
  FqElement<F> xi = xi1, zeta = zeta1, delta = zeta1;
  int top = 63;
  while (!((i >> top) & 1)) --top;
  for (int b = top - 1; b >= 0; --b) {
    const Composer<F> cj(ctx->modulus(), xi.rep());
    const Poly<F> gs[3] = {xi.rep(), zeta.rep(), delta.rep()};
    auto m = cj.apply(gs);
    FqElement<F> xi2(ctx, m[0]);
    FqElement<F> zeta2 = zeta * FqElement<F>(ctx, m[1]);
    FqElement<F> delta2 = delta + zeta * FqElement<F>(ctx, m[2]);
    xi = std::move(xi2);
    zeta = std::move(zeta2);
    delta = std::move(delta2);
    if ((i >> b) & 1) {
      const Poly<F> hs[2] = {xi.rep(), zeta.rep()};
      auto m1 = c1.apply(hs);
      xi = FqElement<F>(ctx, m1[0]);
      zeta = zeta1 * FqElement<F>(ctx, m1[1]);
      delta = delta + zeta;
    }
  }
  return FrobChainState<F>{std::move(xi), std::move(zeta), std::move(delta), i, s};
}

/// Convenience form computing xi1 and zeta1 from the field's Frobenius table.
template <PrimeField F>
FrobChainState<F> xi_zeta_delta(const FqElement<F>& lambda, std::uint64_t i, std::uint64_t s) {
  const auto& ctx = lambda.ctx();
  FqElement<F> xi1(ctx, ctx->frob().xi(s));
  return xi_zeta_delta(lambda, i, s, xi1, lambda.frobenius(s));
}

/// alpha_i(lambda) = lambda * delta_i(lambda); alpha_0 = 0.
template <PrimeField F>
FqElement<F> alpha(const FqElement<F>& lambda, std::uint64_t i, std::uint64_t s) {
  if (i == 0) return FqElement<F>::zero(lambda.ctx());
  return lambda * xi_zeta_delta(lambda, i, s).delta;
}

/// zeta^{1 + p^s + ... + p^{(l-1)s}} via the zeta chain.
template <PrimeField F>
FqElement<F> frobenius_geometric_power(const FqElement<F>& zeta, std::uint64_t l, std::uint64_t s) {
  if (l <= 1) return zeta;
  if (zeta.is_zero() || zeta.is_constant()) {
    // Constants are fixed by Frobenius: the exponent collapses to l.
    return zeta.pow(Natural(l));
  }
  return zeta * xi_zeta_delta(zeta, l - 1, s).zeta;
}

/// a^{(q-1)/t} through zeta = a^{(p^s-1)/t} and the zeta chain.
template <PrimeField F>
bool is_tth_power_chain(const FqElement<F>& a, const Natural& t) {
  const auto& ctx = *a.ctx();
  detail::check_root_index(ctx, t);
  if (a.is_zero()) throw std::invalid_argument("is_tth_power: a must be nonzero");
  const std::uint64_t s = detail::step_of(ctx, t);
  const std::uint64_t l = ctx.degree() / s;
  const FqElement<F> zeta = a.pow((pow(ctx.p(), s) - Natural(1u)) / t);
  return frobenius_geometric_power(zeta, l, s).is_one();
}

/// a^{(q-1)/t} = res(f, a)^{(p-1)/t}; needs t | p - 1.
template <PrimeField F>
bool is_tth_power_resultant(const FqElement<F>& a, const Natural& t) {
  const auto& ctx = *a.ctx();
  detail::check_root_index(ctx, t);
  if (a.is_zero()) throw std::invalid_argument("is_tth_power: a must be nonzero");
  const Natural pm1 = ctx.p() - Natural(1u);
  if (!(pm1 % t).is_zero()) throw std::invalid_argument("is_tth_power_resultant: t must divide p - 1");
  const F& f = ctx.base();
  return fp_pow(f, norm(a), pm1 / t) == f.one();
}

/// Whether a lies in (F_q^*)^t, for prime t | q - 1.
template <PrimeField F>
bool is_tth_power(const FqElement<F>& a, const Natural& t) {
  const Natural pm1 = a.ctx()->p() - Natural(1u);
  if (!pm1.is_zero() && (pm1 % t).is_zero()) return is_tth_power_resultant(a, t);
  return is_tth_power_chain(a, t);
}

/// Kaltofen-Shoup equal-degree splitting of Y^t - a; returns one root.
/// Each attempt draws b in F_q[Y]/<h>, forms Tr(b) = b + b^p + ... + b^{p^{n-1}}
/// by composition doubling and splits h with gcd(Tr(b)^{(p-1)/2} - 1, h)
/// (gcd(Tr(b), h) when p = 2).
template <PrimeField F>
std::optional<FqElement<F>> ks_edf_root(const FqElement<F>& a, const Natural& t, Rng& rng,
                                        const RootOptions& opt = {}, std::size_t* retries_out = nullptr) {
  using Elem = FqElement<F>;
  const auto& ctx = a.ctx();
  detail::check_root_index(*ctx, t);
  if (a.is_zero()) return a;
  if (!is_tth_power(a, t)) return std::nullopt;
  const std::uint64_t tt = t.to_u64();
  const std::uint64_t n = ctx->degree();
  const Natural& p = ctx->p();
  const bool even = !p.is_odd();

  std::vector<Elem> hc(tt + 1, Elem::zero(ctx));
  hc[0] = -a;
  hc[tt] = Elem::one(ctx);
  FqPoly<F> h(ctx, std::move(hc));
  const Poly<F> xi1 = ctx->frob().xi(1);
  std::size_t retries = 0;

  while (h.degree() > 1) {
    const FqQuotientRing<F> ring(h);
    const std::size_t d = ring.degree();
    std::vector<Elem> bc;
    for (std::size_t i = 0; i < d; ++i) bc.push_back(random_element<F>(ctx, rng));
    const FqPoly<F> b(ctx, std::move(bc));

    // Doubling over (Xi_k, Y^{p^k}, T_k) with T_k = sum_{i<k} b^{p^i}.
    const Composer<F> c1(ctx->modulus(), xi1);
    const FqPoly<F> y1 = ring.pow(FqPoly<F>::y(ctx), p);
    Poly<F> xik = xi1;
    FqPoly<F> yk = y1;
    FqPoly<F> tk = b;
    int top = 63;
    while (!((n >> top) & 1)) --top;
    for (int bit = top - 1; bit >= 0; --bit) {
      const Composer<F> ck(ctx->modulus(), xik);
      FqPoly<F> t2 = tk + ring.frobenius(tk, ck, yk);
      FqPoly<F> y2 = ring.frobenius(yk, ck, yk);
      xik = ck(xik);
      tk = std::move(t2);
      yk = std::move(y2);
      if ((n >> bit) & 1) {
        tk = b + ring.frobenius(tk, c1, y1);
        yk = ring.frobenius(yk, c1, y1);
        xik = c1(xik);
      }
    }
    FqPoly<F> w = even ? tk : ring.pow(tk, (p - Natural(1u)) >> 1) - FqPoly<F>::constant(Elem::one(ctx));
    FqPoly<F> g = gcd(w, h);
    if (g.degree() >= 1 && g.degree() < h.degree()) {
      FqPoly<F> other = divrem(h, g).first.monic();
      h = g.degree() <= other.degree() ? std::move(g) : std::move(other);
    } else if (++retries > opt.max_retries) {
      throw retry_limit_error("ks_edf_root: retry bound exceeded");
    }
  }
  if (retries_out) *retries_out = retries;
  Elem r = -h.coeff(0);
  if (r.pow(t) != a) throw std::logic_error("ks_edf_root: root verification failed");
  return r;
}

/// Intermediate values of one pass of the trace-based root extraction.
template <PrimeField F>
struct TthRootTrace {
  std::uint64_t s = 0;
  std::uint64_t l = 0;
  std::optional<FqElement<F>> lambda;
  std::optional<FqElement<F>> b;
  std::optional<FqElement<F>> z;  // a' b^t
  std::optional<Poly<F>> g;       // minimal polynomial of z
  std::optional<FqElement<F>> beta;
  BaseCase base_case = BaseCase::PrimeField;
};

/// One pass of the trace-based root with a fixed multiplier c. Returns
/// nullopt when the pass must be repeated with a fresh c (c = 0 or b = 0).
/// a must be a nonzero t-th power and s < n.
template <PrimeField F>
std::optional<FqElement<F>> tth_root_attempt(const FqElement<F>& a, const Natural& t, const FqElement<F>& c, Rng& rng,
                                             TthRootTrace<F>* trace = nullptr) {
  using Elem = FqElement<F>;
  const auto& ctx = a.ctx();
  const F& fld = ctx->base();
  const std::uint64_t n = ctx->degree();
  const std::uint64_t s = detail::step_of(*ctx, t);
  const std::uint64_t l = n / s;
  if (trace) {
    trace->s = s;
    trace->l = l;
  }
  if (c.is_zero()) return std::nullopt;  // T(gamma * 0) = 0
  const Elem a1 = a * c.pow(t);
  const Elem lambda = a1.pow((pow(ctx->p(), s) - Natural(1u)) / t);
  const Elem b = Elem::one(ctx) + lambda + alpha(lambda, l - 2, s);
  if (trace) {
    trace->lambda = lambda;
    trace->b = b;
  }
  if (b.is_zero()) return std::nullopt;

  const Elem z = a1 * b.pow(t);
  const Poly<F> g = minimal_polynomial(z.rep(), ctx->modulus());
  const auto d = static_cast<std::uint64_t>(g.degree());
  if (trace) {
    trace->z = z;
    trace->g = g;
  }

  std::optional<Elem> beta;
  BaseCase base = BaseCase::PrimeField;
  if (d == 1) {
    const auto w0 = fld.neg(g.coeff(0));
    std::optional<typename F::value_type> r;
    if (s == 1) {
      r = amm_root_fp(fld, w0, t, rng);
    } else {
      // t does not divide p - 1: the t-th power map on F_p is a bijection.
      const Natural pm1 = ctx->p() - Natural(1u);
      r = pm1 == Natural(1u) ? w0 : fp_pow(fld, w0, invmod(t % pm1, pm1));
      base = BaseCase::SubfieldPower;
    }
    if (!r) throw std::logic_error("tth_root: prime-field root failed");
    beta = Elem::constant(ctx, *r);
  } else if (d < s) {
    // t is coprime to p^d - 1, so z has a unique t-th root in F_{p^d}.
    beta = z.pow(invmod(t, pow(ctx->p(), d) - Natural(1u)));
    base = BaseCase::SubfieldPower;
  } else {
    auto sub = FieldCtx<F>::create_unchecked(g);
    std::optional<Elem> r = ks_edf_root(Elem::gen(sub), t, rng);
    if (!r) throw std::logic_error("tth_root: subfield root failed");
    beta = embed(r->rep(), SubfieldImage<F>{g, z});
    base = BaseCase::SubfieldKS;
  }
  if (trace) {
    trace->beta = beta;
    trace->base_case = base;
  }
  return *beta * b.inv() * c.inv();
}

/// t-th root in F_q for prime t | q - 1 (trace-based, with a black-box
/// root in F_{p^s}). Returns nullopt when a is not a t-th power.
template <PrimeField F>
std::optional<RootResult<F>> tth_root(const FqElement<F>& a, const Natural& t, Rng& rng, const RootOptions& opt = {}) {
  using Elem = FqElement<F>;
  const auto& ctx = a.ctx();
  detail::check_root_index(*ctx, t);
  if (a.is_zero()) return RootResult<F>{a, 0, BaseCase::Zero};
  if (!is_tth_power(a, t)) return std::nullopt;
  const std::uint64_t s = detail::step_of(*ctx, t);
  if (s == ctx->degree()) {
    std::size_t retries = 0;
    auto r = ks_edf_root(a, t, rng, opt, &retries);
    return RootResult<F>{std::move(*r), retries, BaseCase::Degenerate};
  }
  TthRootTrace<F> trace;
  for (std::size_t retries = 0; retries <= opt.max_retries; ++retries) {
    const Elem c = random_element<F>(ctx, rng);
    std::optional<Elem> r = tth_root_attempt(a, t, c, rng, &trace);
    if (!r) continue;
    if (r->pow(t) != a) throw std::logic_error("tth_root: root verification failed");
    return RootResult<F>{std::move(*r), retries, trace.base_case};
  }
  throw retry_limit_error("tth_root: retry bound exceeded");
}

namespace detail {

template <PrimeField F>
bool is_square(const FqElement<F>& x) {
  return !x.is_zero() && is_tth_power(x, Natural(2u));
}

template <PrimeField F>
FqElement<F> nonresidue(const std::shared_ptr<const FieldCtx<F>>& ctx, Rng& rng, const Natural& t) {
  auto sweep = [&](std::uint64_t k) {
    const std::uint64_t p = ctx->p().fits_u64() ? ctx->p().to_u64() : ~0ull;
    std::vector<typename F::value_type> cs;
    for (std::size_t i = 0; i < ctx->degree() && k; ++i) {
      cs.push_back(ctx->base().from_u64(k % p));
      k /= p;
    }
    return FqElement<F>(ctx, Poly<F>(ctx->base(), std::move(cs)));
  };
  return search_element(
      rng, [&](Rng& g) { return random_element<F>(ctx, g); }, sweep,
      [&](const FqElement<F>& d) { return !d.is_zero() && !is_tth_power(d, t); });
}

template <PrimeField F>
void require_odd(const FieldCtx<F>& ctx, const char* who) {
  if (!ctx.p().is_odd()) throw unsupported_error(std::string(who) + ": requires odd characteristic");
}

// F_q[W]/<W^2 - D> on raw representatives, with one reduction per output
// coefficient.
template <PrimeField F>
struct QuadraticExt {
  const PolyModulus<F>& mod;
  Poly<F> d;

  using Pair = std::pair<Poly<F>, Poly<F>>;

  Pair sqr(const Pair& x) const {
    const Poly<F> uu = poly_sqr(x.first);
    const Poly<F> vv = poly_sqr(x.second);
    const Poly<F> ss = poly_sqr(x.first + x.second);
    const Poly<F> vr = mod.reduce(vv);
    return {mod.reduce(uu + poly_mul(d, vr)), mod.reduce(ss - uu - vv)};
  }

  Pair mul(const Pair& x, const Pair& y) const {
    const Poly<F> uu = poly_mul(x.first, y.first);
    const Poly<F> vv = poly_mul(x.second, y.second);
    const Poly<F> ss = poly_mul(x.first + x.second, y.first + y.second);
    const Poly<F> vr = mod.reduce(vv);
    return {mod.reduce(uu + poly_mul(d, vr)), mod.reduce(ss - uu - vv)};
  }

  // Sliding window of width 4 over e.
  Pair pow(const Pair& x, const Natural& e) const {
    const F& f = mod.field();
    std::vector<Pair> odd{x};
    const Pair x2 = sqr(x);
    for (int i = 1; i < 8; ++i) odd.push_back(mul(odd.back(), x2));
    Pair r{Poly<F>::constant(f, f.one()), Poly<F>(f)};
    bool started = false;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(e.bit_length()) - 1; i >= 0;) {
      if (!e.bit(static_cast<std::size_t>(i))) {
        if (started) r = sqr(r);
        --i;
        continue;
      }
      std::ptrdiff_t j = std::max<std::ptrdiff_t>(i - 3, 0);
      while (!e.bit(static_cast<std::size_t>(j))) ++j;
      std::size_t w = 0;
      for (std::ptrdiff_t k = i; k >= j; --k) {
        w = 2 * w + (e.bit(static_cast<std::size_t>(k)) ? 1 : 0);
        if (started) r = sqr(r);
      }
      r = started ? mul(r, odd[w / 2]) : odd[w / 2];
      started = true;
      i = j - 1;
    }
    return r;
  }
};

}  // namespace detail

/// Cipolla with an explicit b such that b^2 - 4a is a nonsquare:
/// sqrt(a) = Y^{(q+1)/2} mod (Y^2 - bY + a). Evaluated as (b/2 + W)^{(q+1)/2}
/// with W = Y - b/2, W^2 = b^2/4 - a.
template <PrimeField F>
FqElement<F> cipolla_sqrt_with(const FqElement<F>& a, const FqElement<F>& b) {
  using Elem = FqElement<F>;
  const auto& ctx = a.ctx();
  detail::require_odd(*ctx, "cipolla_sqrt");
  const auto& fld = ctx->base();
  const Elem c = b.scaled(fld.inv(fld.from_u64(2)));
  const Elem d = c * c - a;
  const detail::QuadraticExt<F> ext{ctx->modulus(), d.rep()};
  const Natural e = (ctx->order() + Natural(1u)) >> 1;
  auto r = ext.pow({c.rep(), Poly<F>::constant(fld, fld.one())}, e);
  return Elem(ctx, r.first);
}

template <PrimeField F>
std::optional<FqElement<F>> cipolla_sqrt(const FqElement<F>& a, Rng& rng) {
  using Elem = FqElement<F>;
  const auto& ctx = a.ctx();
  detail::require_odd(*ctx, "cipolla_sqrt");
  if (a.is_zero()) return a;
  if (!is_tth_power(a, Natural(2u))) return std::nullopt;
  const Elem four_a = a.scaled(ctx->base().from_u64(4));
  auto accept = [&](const Elem& b) {
    const Elem disc = b * b - four_a;
    return !disc.is_zero() && !is_tth_power(disc, Natural(2u));
  };
  auto sweep = [&](std::uint64_t k) { return Elem::from_u64(ctx, k); };
  const Elem b = detail::search_element(
      rng, [&](Rng& g) { return random_element<F>(ctx, g); }, sweep, accept);
  Elem r = cipolla_sqrt_with(a, b);
  if (r * r != a) throw std::logic_error("cipolla_sqrt: root verification failed");
  return r;
}

/// Tonelli-Shanks: reduce to the 2-Sylow subgroup of F_q^* and solve the
/// discrete logarithm there bit by bit.
template <PrimeField F>
std::optional<FqElement<F>> tonelli_shanks_fq(const FqElement<F>& a, Rng& rng) {
  using Elem = FqElement<F>;
  const auto& ctx = a.ctx();
  detail::require_odd(*ctx, "tonelli_shanks_fq");
  if (a.is_zero()) return a;
  if (!is_tth_power(a, Natural(2u))) return std::nullopt;
  const Natural qm1 = ctx->order() - Natural(1u);
  const std::size_t r = qm1.trailing_zeros();
  const Natural odd = qm1 >> r;
  const Elem g = detail::nonresidue<F>(ctx, rng, Natural(2u));
  Elem x = a.pow((odd + Natural(1u)) >> 1);
  Elem b = a.pow(odd);
  Elem c = g.pow(odd);
  std::size_t m = r;
  while (!b.is_one()) {
    std::size_t i = 0;
    Elem b2 = b;
    while (!b2.is_one()) {
      b2 = b2 * b2;
      ++i;
    }
    if (i == m) return std::nullopt;
    Elem tt = c;
    for (std::size_t k = 0; k + i + 1 < m; ++k) tt = tt * tt;
    x = x * tt;
    c = tt * tt;
    b = b * c;
    m = i;
  }
  return x;
}

/// Whether one of the closed-form square roots applies: q = 3 mod 4 or q = 5 mod 8.
template <PrimeField F>
bool sqrt_special_applicable(const FieldCtx<F>& ctx) {
  const std::uint64_t r = (ctx.order() % Natural(8u)).to_u64();
  return r == 3 || r == 5 || r == 7;
}

/// Closed-form square roots.
///
/// q = 3 mod 4: a^{(q+1)/4}, computed as (a * y^{p(p-1)})^{(p+1)/4} with
/// y = a^{1 + u + ... + u^{(n-3)/2}}, u = p^2, taken from the zeta chain with
/// Frobenius step 2. q = 5 mod 8: Atkin's formula. Otherwise throws
/// unsupported_error. Returns nullopt if a is not a square.
template <PrimeField F>
std::optional<FqElement<F>> sqrt_special(const FqElement<F>& a) {
  using Elem = FqElement<F>;
  const auto& ctx = a.ctx();
  if (!sqrt_special_applicable(*ctx)) throw unsupported_error("sqrt_special: q mod 8 must be 3, 5 or 7");
  if (a.is_zero()) return a;
  const Natural& q = ctx->order();
  const Natural& p = ctx->p();
  const std::uint64_t qmod8 = (q % Natural(8u)).to_u64();
  Elem r = a;
  if (qmod8 % 4 == 3) {
    const std::uint64_t n = ctx->degree();  // odd
    const std::uint64_t k = (n - 1) / 2;
    if (k == 0) {
      r = a.pow((p + Natural(1u)) >> 2);
    } else {
      Elem y = k == 1 ? a : frobenius_geometric_power(a, k, 2);
      r = (a * y.pow(p * (p - Natural(1u)))).pow((p + Natural(1u)) >> 2);
    }
  } else {
    const Elem two_a = a.scaled(ctx->base().from_u64(2));
    const Elem v = two_a.pow((q - Natural(5u)) >> 3);
    const Elem i = two_a * v * v;
    r = a * v * (i - Elem::one(ctx));
  }
  if (r * r != a) return std::nullopt;
  return r;
}

/// omega with omega^t = 1 and omega != 1, for prime t | q - 1.
template <PrimeField F>
FqElement<F> primitive_root_of_unity(const std::shared_ptr<const FieldCtx<F>>& ctx, const Natural& t, Rng& rng) {
  detail::check_root_index(*ctx, t);
  const Natural e = (ctx->order() - Natural(1u)) / t;
  const FqElement<F> d = detail::nonresidue<F>(ctx, rng, t);
  return d.pow(e);
}

struct PrimePower {
  Natural prime;
  unsigned exponent = 1;
};

/// One t-th root step of the m-th root driver.
template <PrimeField F>
struct MthRootStep {
  Natural t;
  FqElement<F> candidate;  // as returned by tth_root
  unsigned adjustments = 0;  // omega multiplications applied
  FqElement<F> accepted;
};

template <PrimeField F>
struct MthRootTranscript {
  std::optional<FqElement<F>> v_root;  // a^{v^{-1} mod q-1}
  std::vector<MthRootStep<F>> steps;
};

/// Whether a is an m-th power in F_q: a^{(q-1)/gcd(m, q-1)} = 1.
template <PrimeField F>
bool is_mth_power(const FqElement<F>& a, const Natural& m) {
  if (a.is_zero()) return true;
  const Natural qm1 = a.ctx()->order() - Natural(1u);
  return a.pow(qm1 / gcd(m, qm1)).is_one();
}

/// m-th root for arbitrary m >= 2. m = u v with gcd(v, q-1) = 1 and every
/// prime of u dividing q - 1: first a^{v^{-1} mod q-1}, then one t-th root
/// per prime factor of u, each corrected by powers of a primitive t-th root
/// of unity until it is still a power of the remaining index.
template <PrimeField F>
std::optional<FqElement<F>> mth_root(const FqElement<F>& a, const Natural& m, Rng& rng,
                                     std::optional<std::vector<PrimePower>> factorization = std::nullopt,
                                     MthRootTranscript<F>* transcript = nullptr, const RootOptions& opt = {}) {
  using Elem = FqElement<F>;
  const auto& ctx = a.ctx();
  if (m < Natural(2u)) throw std::invalid_argument("mth_root: m must be >= 2");
  std::vector<PrimePower> fac;
  if (factorization) {
    fac = *factorization;
    Natural prod = 1u;
    for (const auto& pp : fac) {
      if (pp.exponent == 0 || !is_probable_prime(pp.prime)) throw std::invalid_argument("mth_root: inconsistent factorization");
      prod *= pow(pp.prime, pp.exponent);
    }
    if (prod != m) throw std::invalid_argument("mth_root: inconsistent factorization");
  } else {
    if (m.bit_length() > 32) throw std::invalid_argument("mth_root: factorization required for m >= 2^32");
    for (auto& [pr, e] : factor_trial(m.to_u64())) fac.push_back(PrimePower{pr, e});
  }
  if (a.is_zero()) return a;
  if (!is_mth_power(a, m)) return std::nullopt;

  const Natural qm1 = ctx->order() - Natural(1u);
  Natural u = 1u, v = 1u;
  std::vector<PrimePower> u_fac;
  for (const auto& pp : fac) {
    if ((qm1 % pp.prime).is_zero()) {
      u *= pow(pp.prime, pp.exponent);
      u_fac.push_back(pp);
    } else {
      v *= pow(pp.prime, pp.exponent);
    }
  }
  Elem cur = a;
  if (v != Natural(1u) && qm1 > Natural(1u)) {
    cur = a.pow(invmod(v % qm1, qm1));
    if (transcript) transcript->v_root = cur;
  }
  Natural remaining = u;
  for (const auto& pp : u_fac) {
    std::optional<Elem> omega;
    for (unsigned k = 0; k < pp.exponent; ++k) {
      remaining /= pp.prime;
      auto step = tth_root(cur, pp.prime, rng, opt);
      if (!step) throw std::logic_error("mth_root: intermediate value is not a power");
      Elem cand = step->root;
      MthRootStep<F> rec{pp.prime, cand, 0, cand};
      if (remaining != Natural(1u)) {
        while (!is_mth_power(cand, remaining)) {
          if (!omega) omega = primitive_root_of_unity<F>(ctx, pp.prime, rng);
          cand = cand * *omega;
          if (++rec.adjustments >= pp.prime.to_u64()) throw std::logic_error("mth_root: no admissible root");
        }
      }
      rec.accepted = cand;
      if (transcript) transcript->steps.push_back(rec);
      cur = cand;
    }
  }
  if (cur.pow(m) != a) throw std::logic_error("mth_root: root verification failed");
  return cur;
}

}  // namespace fqroot
