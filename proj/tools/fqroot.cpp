// fqroot: root extraction in F_{p^n} from the command line.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fqroot/fqroot.hpp"

namespace {

using namespace fqroot;

enum Exit : int { kOk = 0, kNotAPower = 1, kUsage = 2, kVerify = 3 };

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string p = "2305843009213693951";  // 2^61 - 1
  std::uint64_t n = 0;
  std::string field;
  std::string element;
  std::string t;
  std::string m;
  std::string algo = "auto";
  std::uint64_t seed = 1;
  std::string n_list = "16,32,64";
  std::size_t reps = 10;
  std::string out;
};

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw usage_error("cannot open " + path + " for writing");
  f << text;
}

FieldSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open field file " + path);
  return read_field_spec(in);
}

int cmd_gen_field(const Options& o) {
  const Natural p = Natural::parse(o.p);
  if (!is_probable_prime(p)) throw usage_error("p is not prime");
  if (o.n == 0) throw usage_error("n must be >= 1");
  Rng rng(o.seed);
  return with_prime_field(p, [&](const auto& fld) {
    using F = std::decay_t<decltype(fld)>;
    auto ctx = FieldCtx<F>::random(fld, o.n, rng);
    write_out(o.out, format_field(*ctx));
    return kOk;
  });
}

template <PrimeField F>
std::optional<FqElement<F>> prime_root(const FqElement<F>& a, const Natural& t, const std::string& algo, Rng& rng) {
  const auto& ctx = *a.ctx();
  const bool sqrt_algo = algo == "cipolla" || algo == "tonelli" || algo == "special";
  if (sqrt_algo && t != Natural(2u)) throw usage_error(algo + " computes square roots only (t = 2)");
  if (algo == "auto") {
    if (t == Natural(2u) && ctx.p().is_odd() && sqrt_special_applicable(ctx)) return sqrt_special(a);
    auto r = tth_root(a, t, rng);
    return r ? std::optional(r->root) : std::nullopt;
  }
  if (algo == "new") {
    auto r = tth_root(a, t, rng);
    return r ? std::optional(r->root) : std::nullopt;
  }
  if (algo == "cipolla") return cipolla_sqrt(a, rng);
  if (algo == "tonelli") return tonelli_shanks_fq(a, rng);
  if (algo == "special") return sqrt_special(a);
  if (algo == "ks") return ks_edf_root(a, t, rng);
  throw usage_error("unknown algorithm " + algo);
}

// The effective exponent and whether it can go to the prime-index algorithms.
Natural exponent_of(const Options& o, bool& prime_index, const Natural& q) {
  if (o.t.empty() == o.m.empty()) throw usage_error("exactly one of --t and --m is required");
  const Natural e = Natural::parse(o.t.empty() ? o.m : o.t);
  if (e < Natural(2u)) throw usage_error("root index must be >= 2");
  prime_index = !o.t.empty() && is_probable_prime(e) && ((q - Natural(1u)) % e).is_zero();
  if (!o.t.empty() && !prime_index && o.algo != "auto") {
    throw usage_error("--algo " + o.algo + " needs a prime t dividing q - 1");
  }
  if (!o.m.empty() && o.algo != "auto" && o.algo != "new") throw usage_error("--m supports --algo auto or new");
  return e;
}

int cmd_root(const Options& o, bool test_only) {
  const FieldSpec spec = load_spec(o.field);
  return with_prime_field(spec.p, [&](const auto& fld) {
    using F = std::decay_t<decltype(fld)>;
    auto ctx = field_from_spec(fld, spec);
    const FqElement<F> a = parse_element<F>(ctx, o.element);
    bool prime_index = false;
    const Natural e = exponent_of(o, prime_index, ctx->order());
    if (test_only) {
      const bool yes = a.is_zero() || (prime_index ? is_tth_power(a, e) : is_mth_power(a, e));
      std::cout << (yes ? "true" : "false") << "\n";
      return yes ? kOk : kNotAPower;
    }
    Rng rng(o.seed);
    std::optional<FqElement<F>> r = prime_index ? prime_root(a, e, o.algo, rng) : mth_root(a, e, rng);
    if (!r) {
      std::cout << "NOT_A_POWER\n";
      return kNotAPower;
    }
    if (r->pow(e) != a) {
      std::cerr << "error: computed root failed verification\n";
      return kVerify;
    }
    std::cout << format_element(*r) << "\n";
    return kOk;
  });
}

std::vector<std::size_t> parse_n_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const Natural v = Natural::parse(tok);
    if (v.is_zero() || !v.fits_u64()) throw usage_error("bad degree in --n-list: " + tok);
    out.push_back(v.to_u64());
  }
  if (out.empty()) throw usage_error("--n-list is empty");
  return out;
}

int cmd_bench(const Options& o) {
  BenchParams bp;
  bp.p = Natural::parse(o.p);
  if (!is_probable_prime(bp.p)) throw usage_error("p is not prime");
  bp.n_list = parse_n_list(o.n_list);
  const Natural t = Natural::parse(o.t.empty() ? "2" : o.t);
  if (!t.fits_u64() || !is_probable_prime(t)) throw usage_error("--t must be prime");
  bp.t = t.to_u64();
  bp.reps = o.reps;
  bp.seed = o.seed;
  if (o.algo != "auto" && o.algo != "all") {
    std::stringstream in(o.algo);
    std::string tok;
    while (std::getline(in, tok, ',')) bp.algos.push_back(parse_algo(tok));
  }
  const auto recs = run_bench(bp);
  std::ostringstream csv;
  write_csv(csv, recs, bp.seed);
  write_out(o.out, csv.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Root extraction in finite fields F_{p^n}"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen-field", "write a random field F_p[X]/<f>");
  gen->add_option("--p", o.p, "characteristic")->required();
  gen->add_option("--n", o.n, "extension degree")->required();
  gen->add_option("--seed", o.seed, "RNG seed");
  gen->add_option("--out", o.out, "output path (default stdout)");

  auto add_root_opts = [&](CLI::App* c) {
    c->add_option("--field", o.field, "field file")->required();
    c->add_option("element", o.element, "coefficients, low to high")->required();
    c->add_option("--t", o.t, "prime root index");
    c->add_option("--m", o.m, "arbitrary root index");
    c->add_option("--seed", o.seed, "RNG seed");
  };
  auto* root = app.add_subcommand("root", "print a root of the element");
  add_root_opts(root);
  root->add_option("--algo", o.algo, "auto, new, cipolla, tonelli, ks or special")
      ->check(CLI::IsMember({"auto", "new", "cipolla", "tonelli", "ks", "special"}));
  auto* isp = app.add_subcommand("is-power", "test whether the element is a power");
  add_root_opts(isp);

  auto* bench = app.add_subcommand("bench", "time root algorithms, CSV output");
  bench->add_option("--p", o.p, "characteristic (default 2^61 - 1)");
  bench->add_option("--n-list", o.n_list, "comma separated degrees");
  bench->add_option("--t", o.t, "prime root index (default 2)");
  bench->add_option("--reps", o.reps, "inputs per degree");
  bench->add_option("--algo", o.algo, "all, or a comma separated subset of new,cipolla,tonelli,ks,special");
  bench->add_option("--seed", o.seed, "RNG seed");
  bench->add_option("--out", o.out, "output path (default stdout)");

  auto* self = app.add_subcommand("selftest", "exhaustive checks over small fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen_field(o);
    if (*root) return cmd_root(o, false);
    if (*isp) return cmd_root(o, true);
    if (*bench) return cmd_bench(o);
    if (*self) return run_selftest(std::cout) ? kOk : kVerify;
  } catch (const fqroot::verification_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerify;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const fqroot::unsupported_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerify;
  }
  return kUsage;
}
