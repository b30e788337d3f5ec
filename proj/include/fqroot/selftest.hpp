#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "fqroot/roots.hpp"

namespace fqroot {

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  bool ok() const { return failures == 0; }
};

namespace detail {

/// Base-p index of an element; injective on a field with q < 2^64.
template <PrimeField F>
std::uint64_t element_index(const FqElement<F>& a) {
  const auto& ctx = *a.ctx();
  const std::uint64_t p = ctx.p().to_u64();
  std::uint64_t idx = 0;
  for (std::size_t i = a.rep().size(); i-- > 0;) idx = idx * p + ctx.base().to_natural(a.rep().coeffs()[i]).to_u64();
  return idx;
}

inline std::vector<std::uint64_t> small_primes_dividing(std::uint64_t m, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = 2; t <= bound; ++t) {
    if (m % t == 0 && detail::miller_rabin_u64(t)) out.push_back(t);
  }
  return out;
}

}  // namespace detail

/// Residue test and root contract over every field with p in {3,5,7,11,13},
/// n <= 4, every prime t | q-1 with t <= 13 and every a in F_q^*.
inline SuiteResult selftest_roots(std::uint64_t seed = 1) {
  SuiteResult res{"roots: exhaustive residue test and root contract"};
  Rng rng(seed);
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const Fp64 fld(p);
    for (std::size_t n = 1; n <= 4; ++n) {
      auto ctx = FieldCtx<Fp64>::random(fld, n, rng);
      const auto elems = enumerate_field<Fp64>(ctx);
      const std::uint64_t q = elems.size();
      for (std::uint64_t t : detail::small_primes_dividing(q - 1, 13)) {
        const Natural tn(t);
        std::vector<char> is_power(q, 0);
        for (std::uint64_t i = 1; i < q; ++i) is_power[detail::element_index(elems[i].pow(tn))] = 1;
        for (std::uint64_t i = 1; i < q; ++i) {
          const auto& a = elems[i];
          ++res.cases;
          const bool claimed = is_tth_power(a, tn);
          if (claimed != static_cast<bool>(is_power[i])) {
            ++res.failures;
            continue;
          }
          if (!claimed) continue;
          auto check = [&](const std::optional<FqElement<Fp64>>& r) {
            if (!r || r->pow(tn) != a) ++res.failures;
          };
          try {
            auto r = tth_root(a, tn, rng);
            check(r ? std::optional(r->root) : std::nullopt);
            check(ks_edf_root(a, tn, rng));
            if (t == 2) {
              check(cipolla_sqrt(a, rng));
              check(tonelli_shanks_fq(a, rng));
              if (sqrt_special_applicable(*ctx)) check(sqrt_special(a));
            }
          } catch (const std::exception&) {
            ++res.failures;
          }
        }
      }
    }
  }
  return res;
}

/// mth_root(a, m)^m = a for every m-th power a, p in {3,5,7}, n <= 3, m <= 16.
inline SuiteResult selftest_mth_root(std::uint64_t seed = 2) {
  SuiteResult res{"roots: exhaustive m-th roots"};
  Rng rng(seed);
  for (std::uint64_t p : {3, 5, 7}) {
    const Fp64 fld(p);
    for (std::size_t n = 1; n <= 3; ++n) {
      auto ctx = FieldCtx<Fp64>::random(fld, n, rng);
      const auto elems = enumerate_field<Fp64>(ctx);
      for (std::uint64_t m = 2; m <= 16; ++m) {
        const Natural mn(m);
        std::vector<char> is_power(elems.size(), 0);
        for (const auto& r : elems) is_power[detail::element_index(r.pow(mn))] = 1;
        for (std::size_t i = 0; i < elems.size(); ++i) {
          ++res.cases;
          try {
            auto r = mth_root(elems[i], mn, rng);
            if (static_cast<bool>(r) != static_cast<bool>(is_power[i])) ++res.failures;
            else if (r && r->pow(mn) != elems[i]) ++res.failures;
          } catch (const std::exception&) {
            ++res.failures;
          }
        }
      }
    }
  }
  return res;
}

/// Runs every suite and reports one line each; true iff all pass.
inline bool run_selftest(std::ostream& out) {
  bool all = true;
  for (const SuiteResult& r : {selftest_roots(), selftest_mth_root()}) {
    out << (r.ok() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, " << r.failures << " failures)\n";
    all = all && r.ok();
  }
  return all;
}

}  // namespace fqroot
