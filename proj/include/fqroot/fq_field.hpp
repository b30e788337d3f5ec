#pragma once

#include <cassert>
#include <cstdint>
#include <istream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "fqroot/irreducible.hpp"
#include "fqroot/modcomp.hpp"

namespace fqroot {

/// F_q = F_p[X]/<f> for a monic irreducible f of degree n.
///
/// Immutable after construction apart from the lazily filled Frobenius
/// table. Always held through shared_ptr; elements keep their context alive.
template <PrimeField F>
class FieldCtx {
 public:
  using Ptr = std::shared_ptr<const FieldCtx>;

  /// Validates that f is monic and irreducible.
  static Ptr create(Poly<F> f) {
    if (f.degree() < 1 || !f.is_monic()) throw std::invalid_argument("field modulus must be monic of degree >= 1");
    if (!is_irreducible(f)) throw std::invalid_argument("field modulus is not irreducible");
    return Ptr(new FieldCtx(std::move(f)));
  }

  /// Caller guarantees f is monic and irreducible.
  static Ptr create_unchecked(Poly<F> f) { return Ptr(new FieldCtx(std::move(f))); }

  static Ptr random(const F& field, std::size_t n, Rng& rng) {
    return Ptr(new FieldCtx(random_irreducible(field, n, rng)));
  }

  const F& base() const { return mod_.field(); }
  const Natural& p() const { return p_; }
  std::size_t degree() const { return mod_.degree(); }
  const Poly<F>& poly() const { return mod_.poly(); }
  const PolyModulus<F>& modulus() const { return mod_; }
  const FrobTable<F>& frob() const { return frob_; }
  /// q = p^n
  const Natural& order() const { return q_; }

 private:
  explicit FieldCtx(Poly<F> f)
      : mod_(std::move(f)), frob_(mod_, mod_.degree()), p_(mod_.field().modulus()), q_(pow(p_, mod_.degree())) {}

  PolyModulus<F> mod_;
  FrobTable<F> frob_;
  Natural p_;
  Natural q_;
};

/// Element of F_q, stored as its reduced representative.
template <PrimeField F>
class FqElement {
 public:
  using Ctx = FieldCtx<F>;
  using V = typename F::value_type;

  /// Reduces rep modulo f.
  FqElement(typename Ctx::Ptr ctx, const Poly<F>& rep) : ctx_(std::move(ctx)), rep_(ctx_->modulus().reduce(rep)) {}

  static FqElement zero(const typename Ctx::Ptr& ctx) { return FqElement(ctx, Poly<F>(ctx->base())); }
  static FqElement one(const typename Ctx::Ptr& ctx) { return constant(ctx, ctx->base().one()); }
  static FqElement constant(const typename Ctx::Ptr& ctx, V c) { return FqElement(ctx, Poly<F>::constant(ctx->base(), std::move(c))); }
  static FqElement from_u64(const typename Ctx::Ptr& ctx, std::uint64_t c) { return constant(ctx, ctx->base().from_u64(c)); }
  static FqElement gen(const typename Ctx::Ptr& ctx) { return FqElement(ctx, Poly<F>::x(ctx->base())); }

  const typename Ctx::Ptr& ctx() const { return ctx_; }
  const Poly<F>& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_one() const { return rep_.size() == 1 && rep_.coeffs()[0] == ctx_->base().one(); }
  /// True when the element lies in the prime field.
  bool is_constant() const { return rep_.is_constant(); }

  FqElement& operator+=(const FqElement& o) {
    same_ctx(o);
    rep_ += o.rep_;
    return *this;
  }
  FqElement& operator-=(const FqElement& o) {
    same_ctx(o);
    rep_ -= o.rep_;
    return *this;
  }
  FqElement& operator*=(const FqElement& o) {
    same_ctx(o);
    rep_ = ctx_->modulus().mul(rep_, o.rep_);
    return *this;
  }
  friend FqElement operator+(FqElement a, const FqElement& b) { return a += b; }
  friend FqElement operator-(FqElement a, const FqElement& b) { return a -= b; }
  friend FqElement operator*(FqElement a, const FqElement& b) { return a *= b; }
  friend FqElement operator-(const FqElement& a) { return FqElement(a.ctx_, -a.rep_, Reduced{}); }

  FqElement scaled(const V& c) const { return FqElement(ctx_, rep_.scaled(c), Reduced{}); }

  /// Multiplicative inverse; throws division_by_zero for 0.
  FqElement inv() const {
    if (is_zero()) throw division_by_zero("FqElement: inverse of zero");
    auto [g, u, v] = poly_xgcd(rep_, ctx_->poly());
    return FqElement(ctx_, u);
  }

  FqElement square() const { return FqElement(ctx_, ctx_->modulus().sqr(rep_), Reduced{}); }

  FqElement pow(const Natural& e) const {
    FqElement r = one(ctx_);
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      r = r.square();
      if (e.bit(i)) r *= *this;
    }
    return r;
  }

  /// this^{p^j}
  FqElement frobenius(std::uint64_t j) const { return FqElement(ctx_, ctx_->frob().apply(rep_, j), Reduced{}); }

  friend bool operator==(const FqElement& a, const FqElement& b) {
    assert(a.ctx_ == b.ctx_);
    return a.rep_ == b.rep_;
  }

 private:
  struct Reduced {};
  FqElement(typename Ctx::Ptr ctx, Poly<F> rep, Reduced) : ctx_(std::move(ctx)), rep_(std::move(rep)) {}

  void same_ctx(const FqElement& o) const {
    assert(ctx_ == o.ctx_ && "cross-field operation");
    (void)o;
  }

  typename Ctx::Ptr ctx_;
  Poly<F> rep_;
};

template <PrimeField F>
FqElement<F> fq_add(const FqElement<F>& a, const FqElement<F>& b) { return a + b; }
template <PrimeField F>
FqElement<F> fq_mul(const FqElement<F>& a, const FqElement<F>& b) { return a * b; }
template <PrimeField F>
FqElement<F> fq_inv(const FqElement<F>& a) { return a.inv(); }
template <PrimeField F>
FqElement<F> fq_pow(const FqElement<F>& a, const Natural& e) { return a.pow(e); }

/// A subfield F_p[Z]/<g> of F_q given by g and a root w of g in F_q.
template <PrimeField F>
struct SubfieldImage {
  Poly<F> g;
  FqElement<F> w;
};

/// Sum of a^{p^{is}} for i < n/s, computed term by term.
template <PrimeField F>
FqElement<F> trace_to_subfield(const FqElement<F>& a, std::uint64_t s) {
  const std::uint64_t n = a.ctx()->degree();
  if (s == 0 || n % s != 0) throw std::invalid_argument("trace_to_subfield: s must divide n");
  FqElement<F> term = a;
  FqElement<F> sum = a;
  for (std::uint64_t i = 1; i < n / s; ++i) {
    term = term.frobenius(s);
    sum += term;
  }
  return sum;
}

/// N_{F_q/F_p}(a) = res(f, a).
template <PrimeField F>
typename F::value_type norm(const FqElement<F>& a) {
  return resultant(a.ctx()->poly(), a.rep());
}

/// Image of r in F_q under F_p[Z]/<g> -> F_q, Z -> w.
template <PrimeField F>
FqElement<F> embed(const Poly<F>& r, const SubfieldImage<F>& img) {
  if (r.degree() >= img.g.degree()) throw std::invalid_argument("embed: r must be reduced modulo g");
  const auto& ctx = img.w.ctx();
  return FqElement<F>(ctx, Composer<F>(ctx->modulus(), img.w.rep())(r));
}

/// Subfield generated by b: its minimal polynomial paired with b itself.
template <PrimeField F>
SubfieldImage<F> subfield_of(const FqElement<F>& b) {
  return SubfieldImage<F>{minimal_polynomial(b.rep(), b.ctx()->modulus()), b};
}

template <PrimeField F>
FqElement<F> random_element(const std::shared_ptr<const FieldCtx<F>>& ctx, Rng& rng) {
  return FqElement<F>(ctx, random_poly(ctx->base(), ctx->degree(), rng));
}

template <PrimeField F>
FqElement<F> random_nonzero(const std::shared_ptr<const FieldCtx<F>>& ctx, Rng& rng) {
  for (;;) {
    FqElement<F> e = random_element<F>(ctx, rng);
    if (!e.is_zero()) return e;
  }
}

/// Every element of F_q in lexicographic order of coefficient vectors (tests and self-checks).
template <PrimeField F>
std::vector<FqElement<F>> enumerate_field(const std::shared_ptr<const FieldCtx<F>>& ctx) {
  const std::uint64_t q = ctx->order().to_u64();
  const std::uint64_t p = ctx->p().to_u64();
  std::vector<FqElement<F>> out;
  out.reserve(q);
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    std::vector<typename F::value_type> cs(ctx->degree());
    std::uint64_t v = idx;
    for (auto& c : cs) {
      c = ctx->base().from_u64(v % p);
      v /= p;
    }
    out.emplace_back(ctx, Poly<F>(ctx->base(), std::move(cs)));
  }
  return out;
}

// ---- text formats ----

/// Field file: p, then n, then the n+1 coefficients of f low to high.
struct FieldSpec {
  Natural p;
  std::size_t n = 0;
  std::vector<Natural> coeffs;
};

inline FieldSpec read_field_spec(std::istream& in) {
  FieldSpec spec;
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw std::invalid_argument(std::string("field file: missing ") + what);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return line;
  };
  spec.p = Natural::parse(next_line("p"));
  const Natural n = Natural::parse(next_line("n"));
  if (n.is_zero() || !n.fits_u64()) throw std::invalid_argument("field file: n must be >= 1");
  spec.n = n.to_u64();
  std::istringstream cs(next_line("modulus coefficients"));
  std::string tok;
  while (cs >> tok) spec.coeffs.push_back(Natural::parse(tok));
  if (spec.coeffs.size() != spec.n + 1) throw std::invalid_argument("field file: expected n+1 modulus coefficients");
  return spec;
}

template <PrimeField F>
typename FieldCtx<F>::Ptr field_from_spec(const F& field, const FieldSpec& spec) {
  std::vector<typename F::value_type> cs;
  for (const Natural& c : spec.coeffs) {
    if (c >= spec.p) throw std::invalid_argument("field file: coefficient not reduced modulo p");
    cs.push_back(field.from_natural(c));
  }
  Poly<F> f(field, std::move(cs));
  if (f.degree() != static_cast<std::ptrdiff_t>(spec.n)) throw std::invalid_argument("field file: leading coefficient is zero");
  if (!f.is_monic()) throw std::invalid_argument("field file: modulus is not monic");
  return FieldCtx<F>::create(std::move(f));
}

template <PrimeField F>
std::string format_field(const FieldCtx<F>& ctx) {
  std::string out = ctx.p().str() + "\n" + std::to_string(ctx.degree()) + "\n";
  for (std::size_t i = 0; i <= ctx.degree(); ++i) {
    if (i) out += ' ';
    out += ctx.base().to_natural(ctx.poly().coeff(i)).str();
  }
  return out + "\n";
}

/// At most n coefficients, low to high.
template <PrimeField F>
FqElement<F> parse_element(const std::shared_ptr<const FieldCtx<F>>& ctx, std::string_view text) {
  Poly<F> r = parse_poly(ctx->base(), text);
  std::istringstream in{std::string(text)};
  std::size_t count = 0;
  std::string tok;
  while (in >> tok) ++count;
  if (count == 0) throw std::invalid_argument("element: no coefficients");
  if (count > ctx->degree()) throw std::invalid_argument("element: more than n coefficients");
  return FqElement<F>(ctx, r);
}

template <PrimeField F>
std::string format_element(const FqElement<F>& a) {
  return format_poly(a.rep());
}

}  // namespace fqroot
