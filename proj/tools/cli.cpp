#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cohen/arith.hpp"
#include "cohen/asymptotics.hpp"
#include "cohen/cohen_sums.hpp"
#include "cohen/expansions.hpp"
#include "cohen/report_io.hpp"

namespace cohen::cli {

namespace {

enum class Output { kJson, kCsv, kPlain };

struct Common {
  Output output = Output::kPlain;
  unsigned threads = 1;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
};

struct Params {
  std::uint64_t r = 1, n = 1, m = 1, h = 1, limit = 1'000'000, cutoff = 10'000;
  std::uint64_t prime_cutoff = 100'000;
  unsigned s = 1, k = 1, a = 3, b = 3, zeta_arg = 0;
  double tolerance = 0.02;
  std::string evaluator = "fast";
  std::string kind = "jordan";
  std::string plot_path, cache_out, cache_in;
  std::vector<std::uint64_t> primes, checkpoints;
};

std::string precise(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void emit(std::ostream& out, Output mode, const nlohmann::json& json,
          const std::string& csv, const std::string& plain) {
  switch (mode) {
    case Output::kJson:
      out << json.dump(2) << '\n';
      break;
    case Output::kCsv:
      out << csv;
      break;
    case Output::kPlain:
      out << plain;
      break;
  }
}

// Scalar results: CSV is a header plus one row of the same fields.
void emit_scalar(std::ostream& out, Output mode, nlohmann::json json,
                 const std::string& plain) {
  json["schema"] = kReportSchema;
  std::string header, row;
  for (auto it = json.begin(); it != json.end(); ++it) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += it.key();
    row += it->is_string() ? it->get<std::string>() : it->dump();
  }
  emit(out, mode, json, header + "\n" + row + "\n", plain + "\n");
}

int cmd_sum(const Params& p, const Common& c, std::ostream& out) {
  const CohenSumQuery q{p.r, p.s, p.n};
  i128 value;
  std::string evaluator = p.evaluator;
  if (p.evaluator == "direct") {
    value = crs_direct(q).value;
  } else if (p.evaluator == "divisor-sum") {
    value = crs_divisor_sum(q).value;
  } else if (p.evaluator == "shift") {
    value = crs_of_shift(p.r, p.s, p.n).value;
  } else if (p.evaluator == "kvector") {
    if (p.n > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      throw InvalidArgument("sum: n too large for the k-vector evaluator");
    }
    value = kvector_sum(p.s, static_cast<std::int64_t>(p.n), p.r);
  } else {
    value = crs_fast(q).value;
  }
  emit_scalar(out, c.output,
              {{"r", p.r}, {"s", p.s}, {"n", p.n}, {"evaluator", evaluator},
               {"value", to_string(value)}},
              to_string(value));
  return 0;
}

int cmd_jordan(const Params& p, const Common& c, std::ostream& out) {
  const FactoredInteger fn = factorize(p.n);
  const u128 j = jordan(p.k, fn);
  nlohmann::json json = {{"n", p.n},
                         {"k", p.k},
                         {"s", p.s},
                         {"factorization", fn.to_string()},
                         {"mobius", mobius(fn)},
                         {"jordan", to_string(j)},
                         {"tau_s", tau_s(p.s, fn)},
                         {"sigma", to_string(divisor_sigma(fn))}};
  if (p.zeta_arg != 0) json["zeta"] = zeta(p.zeta_arg, kZetaPrecision);
  emit_scalar(out, c.output, json, to_string(j));
  return 0;
}

int cmd_gcd(const Params& p, const Common& c, std::ostream& out) {
  const std::uint64_t g = generalized_gcd(p.m, p.n, p.s);
  emit_scalar(out, c.output, {{"m", p.m}, {"n", p.n}, {"s", p.s}, {"gcd", g}},
              std::to_string(g));
  return 0;
}

int cmd_expansion(const Params& p, const Common& c, std::ostream& out) {
  std::vector<std::uint64_t> marks = p.checkpoints;
  if (marks.empty()) marks.assign(std::begin(kDefaultCheckpoints), std::end(kDefaultCheckpoints));
  const ExpansionReport report =
      expansion_partial_sum({p.s, p.k, p.n, p.cutoff}, marks, c.threads);
  std::ostringstream plain;
  plain << "target " << precise(report.target) << '\n';
  for (const auto& cp : report.checkpoints) {
    plain << "Q=" << cp.cutoff << " S=" << precise(cp.partial_sum)
          << " err=" << precise(cp.abs_error) << '\n';
  }
  plain << (report.converged ? "converged" : "not converged")
        << " (tolerance " << precise(report.tolerance) << ")\n";
  emit(out, c.output, to_json(report), to_csv(report), plain.str());
  return 0;
}

int cmd_local(const Params& p, const Common& c, std::ostream& out) {
  const LocalFactorPair pair = local_factor_exact(p.s, p.k, p.n, p.primes);
  nlohmann::json factors = nlohmann::json::array();
  std::ostringstream plain, csv;
  csv << "p,cases,generic,equal\n";
  bool cases_agree = true;
  for (std::uint64_t prime : p.primes) {
    const BigRational closed = local_factor_cases(p.s, p.k, prime, p.n);
    const BigRational generic = local_factor_generic(p.s, p.k, prime, p.n);
    cases_agree = cases_agree && closed == generic;
    factors.push_back({{"p", prime},
                       {"cases", closed.to_string()},
                       {"generic", generic.to_string()},
                       {"equal", closed == generic}});
    csv << prime << ',' << closed.to_string() << ',' << generic.to_string() << ','
        << (closed == generic) << '\n';
    plain << "p=" << prime << " factor " << closed.to_string()
          << (closed == generic ? "" : " MISMATCH " + generic.to_string()) << '\n';
  }
  const bool equal = pair.lhs == pair.rhs;
  plain << "lhs " << pair.lhs.to_string() << "\nrhs " << pair.rhs.to_string() << '\n'
        << (equal && cases_agree ? "equal" : "NOT EQUAL") << '\n';
  nlohmann::json json = {{"schema", kReportSchema},
                         {"kind", "local-check"},
                         {"s", p.s},
                         {"k", p.k},
                         {"n", p.n},
                         {"primes", p.primes},
                         {"lhs", pair.lhs.to_string()},
                         {"rhs", pair.rhs.to_string()},
                         {"equal", equal},
                         {"local_factors", factors}};
  emit(out, c.output, json, csv.str(), plain.str());
  return 0;
}

int cmd_sivaramakrishnan(const Params& p, const Common& c, std::ostream& out) {
  const ExpansionReport report = sivaramakrishnan_check(p.s, p.k, p.n, p.cutoff);
  std::ostringstream plain;
  plain << "target " << precise(report.target) << '\n';
  for (const auto& cp : report.checkpoints) {
    plain << "R=" << cp.cutoff << " S=" << precise(cp.partial_sum)
          << " err=" << precise(cp.abs_error) << '\n';
  }
  emit(out, c.output, to_json(report), to_csv(report), plain.str());
  return 0;
}

std::string describe(const AsymptoticReport& report) {
  std::ostringstream plain;
  plain << "h = " << report.m << "^" << report.s << " * " << report.k << '\n'
        << "rhs " << precise(report.rhs.value) << " (tail bound "
        << precise(report.rhs.tail_bound) << ")\n";
  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    plain << "N=" << report.ratios[i].limit
          << " lhs=" << precise(report.lhs_checkpoints[i].sum)
          << " ratio=" << precise(report.ratios[i].ratio) << '\n';
  }
  plain << (report.converged ? "converged" : "not converged") << " (tolerance "
        << precise(report.tolerance) << ")\n";
  return plain.str();
}

int cmd_asymptotic(const Params& p, const Common& c, std::ostream& out) {
  const AsymptoticQuery q(p.s, p.a, p.b, p.h, p.limit, p.prime_cutoff);
  std::vector<std::uint64_t> marks = p.checkpoints;
  if (marks.empty()) marks.assign(std::begin(kDecadeCheckpoints), std::end(kDecadeCheckpoints));
  const AsymptoticReport report =
      asymptotic_verify(q, p.tolerance, marks, c.threads, c.memory_budget);
  if (!p.plot_path.empty()) {
    std::ofstream plot(p.plot_path);
    if (!plot) throw InvalidArgument("cannot write plot data to " + p.plot_path);
    plot << plot_data(report);
  }
  emit(out, c.output, to_json(report), to_csv(report), describe(report));
  return 0;
}

int cmd_main_term(const Params& p, const Common& c, std::ostream& out) {
  const AsymptoticQuery q(p.s, p.a, p.b, p.h, 1, p.prime_cutoff);
  const double series = general_main_term(jordan_coefficient(p.s, p.a),
                                          jordan_coefficient(p.s, p.b), p.s, p.h, p.cutoff);
  const RhsProduct product = rhs_product(q);
  const double diff = std::abs(series - product.value);
  std::ostringstream plain;
  plain << "series " << precise(series) << "\nproduct " << precise(product.value)
        << "\ndifference " << precise(diff);
  emit_scalar(out, c.output,
              {{"s", p.s}, {"a", p.a}, {"b", p.b}, {"h", p.h}, {"R", p.cutoff},
               {"P", p.prime_cutoff}, {"series", series}, {"product", product.value},
               {"difference", diff}, {"product_tail_bound", product.tail_bound}},
              plain.str());
  return 0;
}

SieveKind parse_kind(const std::string& kind) {
  if (kind == "mobius") return SieveKind::kMobius;
  if (kind == "spf") return SieveKind::kSmallestPrimeFactor;
  return SieveKind::kJordan;
}

int cmd_sieve_cache(const Params& p, const Common& c, std::ostream& out) {
  if (p.cache_out.empty() == p.cache_in.empty()) {
    throw InvalidArgument("sieve-cache: give exactly one of --out or --verify");
  }
  const SieveKind kind = parse_kind(p.kind);
  if (!p.cache_out.empty()) {
    const SieveTable table = sieve(kind, p.limit, p.k, c.memory_budget);
    save_sieve_cache(table, p.cache_out);
    emit_scalar(out, c.output,
                {{"kind", to_string(kind)}, {"k", table.order()}, {"N", table.limit()},
                 {"path", p.cache_out}},
                "wrote " + std::to_string(table.limit()) + " entries to " + p.cache_out);
    return 0;
  }
  // Rebuild from scratch and compare; the cache is never trusted on its own.
  const SieveTable cached = load_sieve_cache(p.cache_in);
  const SieveTable fresh = sieve(cached.kind(), cached.limit(),
                                 cached.order(), c.memory_budget);
  const bool ok = std::equal(cached.values().begin(), cached.values().end(),
                             fresh.values().begin());
  emit_scalar(out, c.output,
              {{"kind", to_string(cached.kind())}, {"k", cached.order()},
               {"N", cached.limit()}, {"path", p.cache_in}, {"valid", ok}},
              ok ? "cache valid" : "cache MISMATCH");
  return ok ? 0 : 1;
}

int cmd_repro_all(const Params& p, const Common& c, std::ostream& out) {
  const std::vector<std::uint64_t> small_primes = {2, 3, 5, 7, 11, 13};
  std::uint64_t cases = 0, equal = 0;
  for (unsigned mask = 0; mask < (1u << small_primes.size()); ++mask) {
    std::vector<std::uint64_t> subset;
    for (std::size_t i = 0; i < small_primes.size(); ++i) {
      if (mask >> i & 1) subset.push_back(small_primes[i]);
    }
    for (unsigned s = 1; s <= 3; ++s) {
      for (unsigned k = 1; k <= 3; ++k) {
        for (std::uint64_t n = 1; n <= 30; ++n) {
          const LocalFactorPair pair = local_factor_exact(s, k, n, subset);
          ++cases;
          if (pair.lhs == pair.rhs) ++equal;
        }
      }
    }
  }
  const bool exact_ok = cases == equal;

  const AsymptoticQuery q(2, 3, 3, 12, p.limit, p.prime_cutoff);
  const AsymptoticReport report = asymptotic_verify(
      q, p.tolerance, kDecadeCheckpoints, c.threads, c.memory_budget);

  const nlohmann::json json = {
      {"schema", kReportSchema},
      {"kind", "repro-all"},
      {"exact_local_factor_grid", {{"cases", cases}, {"equal", equal}, {"passed", exact_ok}}},
      {"asymptotic", to_json(report)},
      {"all_passed", exact_ok && report.converged}};
  std::ostringstream plain, csv;
  plain << (exact_ok ? "PASS" : "FAIL") << " exact local factor grid: " << equal << "/"
        << cases << " equal\n"
        << (report.converged ? "PASS" : "FAIL")
        << " shifted convolution (s=2, a=3, b=3, h=12), final ratio "
        << precise(report.ratios.back().ratio) << ", tolerance "
        << precise(report.tolerance) << '\n'
        << (exact_ok && report.converged ? "all checks passed" : "some checks failed") << '\n';
  csv << "check,passed,detail\n"
      << "exact_local_factor_grid," << exact_ok << ',' << equal << '/' << cases << '\n'
      << "asymptotic," << report.converged << ',' << precise(report.ratios.back().ratio) << '\n';
  emit(out, c.output, json, csv.str(), plain.str());
  return 0;
}

template <class T>
void env_number(const char* name, std::uint64_t lo, std::uint64_t hi, T& target) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  std::uint64_t v = 0;
  const char* end = raw + std::strlen(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, v);
  if (ec != std::errc() || ptr != end || v < lo || v > hi) {
    throw InvalidArgument(std::string(name) + ": expected an integer in [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "], got '" + raw + "'");
  }
  target = static_cast<T>(v);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohen-Ramanujan sums, Jordan totients and their expansions", "cohen"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Common common;
  Params p;
  const std::map<std::string, Output> outputs = {
      {"json", Output::kJson}, {"csv", Output::kCsv}, {"plain", Output::kPlain}};
  app.add_option("--output,-o", common.output, "Report format")
      ->transform(CLI::CheckedTransformer(outputs, CLI::ignore_case))
      ->default_str("plain");
  auto* threads = app.add_option("--threads", common.threads, "Worker threads (env COHEN_THREADS)")
                      ->check(CLI::Range(1u, 1024u))
                      ->capture_default_str();
  auto* budget = app.add_option("--memory-budget", common.memory_budget,
                                "Sieve memory budget in bytes (env COHEN_MEMORY_BUDGET)")
                     ->check(CLI::PositiveNumber)
                     ->capture_default_str();

  const auto positive = CLI::Range(std::uint64_t{1}, (std::uint64_t{1} << 63) - 1);
  const auto order = CLI::Range(1u, 64u);

  auto* sum = app.add_subcommand("sum", "Cohen-Ramanujan sum c_r^s(n)");
  sum->add_option("--r", p.r, "Modulus index r >= 1")->required()->check(positive);
  sum->add_option("--s", p.s, "Power parameter s >= 1 (vector length for kvector)")
      ->required()->check(order);
  sum->add_option("--n", p.n, "Argument n >= 0")->required();
  sum->add_option("--evaluator", p.evaluator,
                  "fast | direct | divisor-sum | shift (c_r^s via m^s) | kvector (c^s(n, r))")
      ->check(CLI::IsMember({"fast", "direct", "divisor-sum", "shift", "kvector"}))
      ->capture_default_str();

  auto* jordan_cmd = app.add_subcommand(
      "jordan", "J_k(n), with factorization, mobius, tau_s and sigma in structured output");
  jordan_cmd->add_option("--k", p.k, "Order k >= 1")->required()->check(order);
  jordan_cmd->add_option("--n", p.n, "n in [1, 2^63)")->required()->check(positive);
  jordan_cmd->add_option("--s", p.s, "Power for tau_s")->check(order)->capture_default_str();
  jordan_cmd->add_option("--zeta", p.zeta_arg, "Also report zeta(z), z >= 2")
      ->check(CLI::Range(2u, 1000u));

  auto* gcd_cmd = app.add_subcommand("gcd-s", "Generalized gcd (m, n)_s");
  gcd_cmd->add_option("--m", p.m, "m >= 1")->required()->check(positive);
  gcd_cmd->add_option("--n", p.n, "n >= 1")->required()->check(positive);
  gcd_cmd->add_option("--s", p.s, "s >= 1")->required()->check(order);

  auto* expansion = app.add_subcommand(
      "expansion", "Partial sums of sum_q mu(q) c_q^s(n^s) / J_{s+k}(q) vs zeta(s+k) J_k(n)/n^k");
  expansion->add_option("--s", p.s, "s >= 1")->required()->check(order);
  expansion->add_option("--k", p.k, "k >= 1")->required()->check(order);
  expansion->add_option("--n", p.n, "n >= 1, n^s < 2^63")->required()->check(positive);
  expansion->add_option("--Q", p.cutoff, "Series cutoff")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100'000'000}))->capture_default_str();
  expansion->add_option("--checkpoints", p.checkpoints, "Extra checkpoint cutoffs (default 10 100 1000)");

  auto* local = app.add_subcommand(
      "local-check", "Exact Euler factorization over a finite prime set, plus closed-form local factors");
  local->add_option("--s", p.s, "s >= 1")->required()->check(order);
  local->add_option("--k", p.k, "k >= 1")->required()->check(order);
  local->add_option("--n", p.n, "n >= 1")->required()->check(positive);
  local->add_option("--primes", p.primes, "Distinct primes, e.g. 2,3,5")->delimiter(',');

  auto* siva = app.add_subcommand(
      "sivaramakrishnan", "Partial sums with Cohen's k-vector sum c^s(n, r); small R only");
  siva->add_option("--s", p.s, "s >= 1")->required()->check(order);
  siva->add_option("--k", p.k, "k >= 1")->required()->check(order);
  siva->add_option("--n", p.n, "n >= 1")->required()->check(positive);
  siva->add_option("--R", p.cutoff, "Cutoff, R^s <= 10^7")->required()->check(positive);

  auto* asym = app.add_subcommand(
      "asymptotic", "Sieved sum_{n<=N} J_a(n)/n^a J_b(n+h)/(n+h)^b against N times the Euler product");
  asym->add_option("--s", p.s, "s > 1")->required()->check(order);
  asym->add_option("--a", p.a, "a > 1 + s/2")->required()->check(order);
  asym->add_option("--b", p.b, "b > 1 + s/2")->required()->check(order);
  asym->add_option("--h", p.h, "Shift h >= 1")->required()->check(positive);
  asym->add_option("--N", p.limit, "Summation limit")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{4'000'000'000}))->capture_default_str();
  asym->add_option("--P", p.prime_cutoff, "Euler product prime cutoff")->capture_default_str();
  asym->add_option("--tolerance", p.tolerance, "Bound on |ratio - 1| at N")->check(CLI::PositiveNumber)->capture_default_str();
  asym->add_option("--checkpoints", p.checkpoints, "Checkpoints below N (default 10^4 10^5 10^6)");
  asym->add_option("--emit-plot-data", p.plot_path, "Write 'N ratio' rows to this file");

  auto* main_term = app.add_subcommand(
      "main-term", "Series sum_r fhat(r) ghat(r) c_r^s(h) with Jordan coefficients vs the Euler product");
  main_term->add_option("--s", p.s, "s > 1")->required()->check(order);
  main_term->add_option("--a", p.a, "a > 1 + s/2")->required()->check(order);
  main_term->add_option("--b", p.b, "b > 1 + s/2")->required()->check(order);
  main_term->add_option("--h", p.h, "Shift h >= 1")->required()->check(positive);
  main_term->add_option("--R", p.cutoff, "Series cutoff")->check(positive)->capture_default_str();
  main_term->add_option("--P", p.prime_cutoff, "Euler product prime cutoff")->capture_default_str();

  auto* cache = app.add_subcommand("sieve-cache", "Write or verify a binary sieve cache file");
  cache->add_option("--kind", p.kind, "jordan | mobius | spf")
      ->check(CLI::IsMember({"jordan", "mobius", "spf"}))->capture_default_str();
  cache->add_option("--k", p.k, "Jordan order")->check(order)->capture_default_str();
  cache->add_option("--N", p.limit, "Table limit")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{4'000'000'000}));
  cache->add_option("--out", p.cache_out, "Write the table to this file");
  cache->add_option("--verify", p.cache_in, "Load this file and check it against a fresh sieve");

  auto* repro = app.add_subcommand(
      "repro-all", "Exact local-factor grid plus the default shifted-convolution verification");
  repro->add_option("--N", p.limit, "Summation limit")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{4'000'000'000}))->capture_default_str();
  repro->add_option("--P", p.prime_cutoff, "Euler product prime cutoff")->capture_default_str();
  repro->add_option("--tolerance", p.tolerance, "Bound on |ratio - 1| at N")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    // CLI11 drops environment values that fail validation; these must not be ignored.
    if (threads->count() == 0) env_number("COHEN_THREADS", 1, 1024, common.threads);
    if (budget->count() == 0) {
      env_number("COHEN_MEMORY_BUDGET", 1, std::numeric_limits<std::uint64_t>::max(),
                 common.memory_budget);
    }
    if (*sum) return cmd_sum(p, common, out);
    if (*jordan_cmd) return cmd_jordan(p, common, out);
    if (*gcd_cmd) return cmd_gcd(p, common, out);
    if (*expansion) return cmd_expansion(p, common, out);
    if (*local) return cmd_local(p, common, out);
    if (*siva) return cmd_sivaramakrishnan(p, common, out);
    if (*asym) return cmd_asymptotic(p, common, out);
    if (*main_term) return cmd_main_term(p, common, out);
    if (*cache) return cmd_sieve_cache(p, common, out);
    if (*repro) return cmd_repro_all(p, common, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace cohen::cli
