#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fqroot/dispatch.hpp"
#include "fqroot/roots.hpp"

namespace fqroot {

class verification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root algorithms the harness can time.
enum class Algo { New, Cipolla, Tonelli, Ks, Special };

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::New: return "new";
    case Algo::Cipolla: return "cipolla";
    case Algo::Tonelli: return "tonelli";
    case Algo::Ks: return "ks";
    case Algo::Special: return "special";
  }
  return "?";
}

inline Algo parse_algo(const std::string& s) {
  for (Algo a : {Algo::New, Algo::Cipolla, Algo::Tonelli, Algo::Ks, Algo::Special}) {
    if (s == algo_name(a)) return a;
  }
  throw std::invalid_argument("unknown algorithm: " + s);
}

struct BenchRecord {
  Algo algo = Algo::New;
  std::size_t p_bits = 0;
  std::size_t n = 0;
  std::uint64_t t = 0;
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  double elapsed_micros = 0;
  std::size_t retries = 0;
  bool ok = false;
};

struct BenchParams {
  Natural p = Natural((1ull << 61) - 1);
  std::vector<std::size_t> n_list;
  std::uint64_t t = 2;
  std::size_t reps = 10;
  std::vector<Algo> algos;  // empty: every applicable algorithm
  std::uint64_t seed = 1;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

template <PrimeField F>
bool algo_applies(Algo a, const FieldCtx<F>& ctx, std::uint64_t t) {
  const bool sqrt_only = a == Algo::Cipolla || a == Algo::Tonelli || a == Algo::Special;
  if (sqrt_only && (t != 2 || !ctx.p().is_odd())) return false;
  if (a == Algo::Special) return sqrt_special_applicable(ctx);
  return true;
}

template <PrimeField F>
std::optional<FqElement<F>> run_algo(Algo a, const FqElement<F>& x, const Natural& t, Rng& rng, std::size_t& retries) {
  retries = 0;
  switch (a) {
    case Algo::New: {
      auto r = tth_root(x, t, rng);
      if (!r) return std::nullopt;
      retries = r->retries;
      return r->root;
    }
    case Algo::Cipolla: return cipolla_sqrt(x, rng);
    case Algo::Tonelli: return tonelli_shanks_fq(x, rng);
    case Algo::Ks: return ks_edf_root(x, t, rng, {}, &retries);
    case Algo::Special: return sqrt_special(x);
  }
  return std::nullopt;
}

template <PrimeField F>
void bench_degree(const F& fld, std::size_t n, const BenchParams& bp, std::vector<BenchRecord>& out) {
  Rng field_rng(splitmix(bp.seed ^ (n * 0x100000001b3ull)));
  auto ctx = FieldCtx<F>::random(fld, n, field_rng);
  const Natural t(bp.t);
  if (!((ctx->order() - Natural(1u)) % t).is_zero()) {
    throw std::invalid_argument("t does not divide q - 1 for n = " + std::to_string(n));
  }
  std::vector<Algo> algos = bp.algos;
  if (algos.empty()) {
    for (Algo a : {Algo::New, Algo::Cipolla, Algo::Tonelli, Algo::Ks, Algo::Special}) {
      if (algo_applies(a, *ctx, bp.t)) algos.push_back(a);
    }
  } else {
    for (Algo a : algos) {
      if (!algo_applies(a, *ctx, bp.t)) {
        throw unsupported_error(std::string(algo_name(a)) + " does not apply for n = " + std::to_string(n));
      }
    }
  }
  // Warm the Frobenius cache so the first timed call is not penalized.
  (void)ctx->frob().xi(1);
  const std::size_t p_bits = ctx->p().bit_length();
  for (std::size_t rep = 0; rep < bp.reps; ++rep) {
    const std::uint64_t seed = splitmix(bp.seed ^ splitmix(n * 1000003 + rep));
    Rng input_rng(seed);
    const FqElement<F> x = random_nonzero<F>(ctx, input_rng).pow(t);
    for (Algo a : algos) {
      Rng rng(seed);
      std::size_t retries = 0;
      const auto t0 = std::chrono::steady_clock::now();
      auto r = run_algo(a, x, t, rng, retries);
      const auto t1 = std::chrono::steady_clock::now();
      if (!r || r->pow(t) != x) {
        throw verification_error(std::string("bench: ") + algo_name(a) + " returned a wrong root at n = " + std::to_string(n));
      }
      out.push_back(BenchRecord{a, p_bits, n, bp.t, rep, seed,
                                std::chrono::duration<double, std::micro>(t1 - t0).count(), retries, true});
    }
  }
}

}  // namespace detail

/// Times every selected algorithm on reps random t-th powers per degree.
/// Every root is verified before its record is kept.
inline std::vector<BenchRecord> run_bench(const BenchParams& bp) {
  std::vector<BenchRecord> out;
  with_prime_field(bp.p, [&](const auto& fld) {
    for (std::size_t n : bp.n_list) detail::bench_degree(fld, n, bp, out);
  });
  return out;
}

struct BenchSummary {
  Algo algo;
  std::size_t p_bits, n;
  std::uint64_t t;
  double mean_micros, std_micros, mean_retries, std_retries;
  bool ok;
};

/// Mean and sample standard deviation per (algo, n), in first-seen order.
inline std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& recs) {
  std::vector<BenchSummary> out;
  std::vector<std::pair<Algo, std::size_t>> keys;
  for (const auto& r : recs) {
    if (std::find(keys.begin(), keys.end(), std::pair{r.algo, r.n}) == keys.end()) keys.emplace_back(r.algo, r.n);
  }
  for (const auto& [algo, n] : keys) {
    std::vector<double> ts, rs;
    BenchSummary s{algo, 0, n, 0, 0, 0, 0, 0, true};
    for (const auto& r : recs) {
      if (r.algo != algo || r.n != n) continue;
      ts.push_back(r.elapsed_micros);
      rs.push_back(static_cast<double>(r.retries));
      s.p_bits = r.p_bits;
      s.t = r.t;
      s.ok = s.ok && r.ok;
    }
    auto stats = [](const std::vector<double>& v) {
      double m = 0;
      for (double x : v) m += x;
      m /= static_cast<double>(v.size());
      double ss = 0;
      for (double x : v) ss += (x - m) * (x - m);
      return std::pair{m, v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0};
    };
    std::tie(s.mean_micros, s.std_micros) = stats(ts);
    std::tie(s.mean_retries, s.std_retries) = stats(rs);
    out.push_back(s);
  }
  return out;
}

/// CSV with one row per record, then "mean" and "std" rows per (algo, n).
inline void write_csv(std::ostream& os, const std::vector<BenchRecord>& recs, std::uint64_t seed) {
  os << "algo,p_bits,n,t,rep,seed,elapsed_micros,retries,ok\n";
  for (const auto& r : recs) {
    os << algo_name(r.algo) << ',' << r.p_bits << ',' << r.n << ',' << r.t << ',' << r.rep << ',' << r.seed << ','
       << static_cast<std::uint64_t>(std::llround(r.elapsed_micros)) << ',' << r.retries << ','
       << (r.ok ? "true" : "false") << '\n';
  }
  auto num = [](double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(3);
    s << v;
    return s.str();
  };
  for (const auto& s : summarize(recs)) {
    const std::string head = std::string(algo_name(s.algo)) + ',' + std::to_string(s.p_bits) + ',' +
                             std::to_string(s.n) + ',' + std::to_string(s.t) + ',';
    const char* ok = s.ok ? "true" : "false";
    os << head << "mean," << seed << ',' << num(s.mean_micros) << ',' << num(s.mean_retries) << ',' << ok << '\n';
    os << head << "std," << seed << ',' << num(s.std_micros) << ',' << num(s.std_retries) << ',' << ok << '\n';
  }
}

}  // namespace fqroot
