#include <CLI11.hpp>

#include <iostream>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "kurihara/analytic.hpp"
#include "kurihara/error.hpp"
#include "kurihara/kurihara.hpp"
#include "kurihara/pipeline.hpp"

using namespace kurihara;

namespace {

const std::map<std::string, std::string> kHelp = {
    {"curve", "bundled curve label, or a label inside --curve-file"},
    {"curve-file", "JSON file with {label, a_invariants, conductor}"},
    {"ainvs", "a-invariants a1,a2,a3,a4,a6"},
    {"p", "prime p >= 5"},
    {"k-work", "p-adic precision for n = 1 (default 5)"},
    {"cyclotomic", "c with K inside Q(mu_c) (default 1)"},
    {"subgroup", "generators of H in (Z/c)^x, K = Q(mu_c)^H"},
    {"budget", "Kolyvagin primes per ladder level (default 4)"},
    {"levels", "highest ladder level (default 3)"},
    {"prime-k", "search primes l = 1 mod p^k (default 1)"},
    {"scan-bound", "largest l tried by the prime search"},
    {"max-terms", "skip delta sums with more terms than this"},
    {"digits", "decimal digits for periods and L-values (default 30)"},
    {"root-number", "1 or -1; computed when absent"},
    {"cache-dir", "modular-symbol cache; KURIHARA_CACHE_DIR overrides"},
    {"output-dir", "write report.json and summary.txt here"},
    {"emit-deltas", "JSON-lines file for every delta, - for stdout"},
    {"threads", "worker threads for the delta sums (default 1)"},
};

// Flags shared by the subcommands; values are applied as config keys on top
// of an optional config file.
struct Settings {
  std::string config;
  std::map<std::string, std::string> values;
  std::vector<std::string> chars;

  void add(CLI::App* app, const std::vector<std::string>& keys) {
    app->add_option("--config", config, "JSON or key = value configuration file");
    for (const auto& k : keys) {
      if (k == "chars") {
        app->add_option("--chars", chars, "character selector: all, trivial, quadratic, order=N[,at=a,residue=r]");
      } else {
        app->add_option("--" + k, values[k], kHelp.at(k));
      }
    }
  }

  AnalysisConfig build() const {
    AnalysisConfig cfg = config.empty() ? AnalysisConfig{} : load_config(config);
    for (const auto& [k, v] : values) {
      if (!v.empty()) apply_setting(cfg, k, v);
    }
    if (!chars.empty()) {
      std::string joined;
      for (const auto& c : chars) joined += (joined.empty() ? "" : ";") + c;
      apply_setting(cfg, "chars", joined);
    }
    return cfg;
  }
};

const std::vector<std::string> kAnalyzeKeys = {
    "curve",     "curve-file", "ainvs",     "p",         "k-work",    "cyclotomic", "subgroup",
    "chars",     "budget",     "levels",    "prime-k",   "scan-bound", "max-terms", "digits",
    "root-number", "cache-dir", "output-dir", "emit-deltas", "threads"};

int root_number_of(const AnalysisConfig& cfg, const CurveModel& E) {
  return cfg.root_number != 0 ? cfg.root_number : analytic::root_number(E, cfg.digits);
}

bool report_failure(const AnalysisOutcome& out, const CLI::App& app) {
  if (out.exit_code != 1) return false;
  std::cerr << "error: " << out.error << "\n";
  if (out.error.rfind("config:", 0) == 0) std::cerr << app.help();
  return true;
}

int cmd_analyze(const Settings& s, bool print_json, const CLI::App& app) {
  const AnalysisConfig cfg = s.build();
  const AnalysisOutcome out = run_analyze(cfg, &std::cerr);
  if (report_failure(out, app)) return 1;
  std::cout << (print_json ? out.report_json : out.summary);
  return out.exit_code;
}

int cmd_imc(const Settings& s, const CLI::App& app) {
  const AnalysisConfig cfg = s.build();
  const AnalysisOutcome out = run_analyze(cfg, &std::cerr);
  if (report_failure(out, app)) return 1;
  const auto doc = nlohmann::json::parse(out.report_json);
  bool all = true;
  for (const auto& c : doc["characters"]) {
    std::cout << c["chi"].get<std::string>() << ": " << c["imc"].get<std::string>() << "\n";
    all = all && c["imc"] == "verified";
  }
  std::cout << "main conjecture " << (all ? "verified" : "open") << " for the selected characters\n";
  return out.exit_code;
}

int cmd_primes(const Settings& s, std::size_t count, std::uint64_t start) {
  AnalysisConfig cfg = s.build();
  if (cfg.p == 0) throw Error(ErrorKind::Config, "--p is required");
  const CurveModel E = load_curve(cfg);
  FieldSpec spec = field_of(cfg);
  if (!s.chars.empty()) {
    const auto chars = select_characters(spec, cfg.characters, cfg.p);
    if (chars.size() != 1) throw Error(ErrorKind::Config, "--chars must select one character here");
    spec = chars[0].primitive().kernel_field();
  }
  const auto recs = find_kolyvagin_primes(E, spec, cfg.p, cfg.prime_k, count, cfg.scan_bound, start);
  for (const auto& r : recs) {
    std::cout << r.l << " k_l=" << r.k_l << " eta=" << r.eta << " a_l=" << r.a_l << " sylow=(" << r.sylow.s << ","
              << r.sylow.e << ")\n";
  }
  return 0;
}

int cmd_delta(const Settings& s, const std::vector<std::uint64_t>& n) {
  AnalysisConfig cfg = s.build();
  cfg.validate();
  const CurveModel E = load_curve(cfg);
  const FieldSpec spec = field_of(cfg);
  const auto chars = select_characters(spec, cfg.characters, cfg.p);
  if (chars.size() != 1) throw Error(ErrorKind::Config, "--chars must select exactly one character");
  const DirichletCharacter chi = chars[0].primitive();
  std::vector<KolyvaginPrimeRecord> recs;
  for (auto l : n) {
    auto cert = certify_kolyvagin_prime(E, chi.kernel_field(), cfg.p, cfg.prime_k, l);
    if (!cert.record) throw Error(ErrorKind::InvalidArgument, std::to_string(l) + " rejected: " + cert.rejection);
    recs.push_back(*cert.record);
  }
  const int eps = root_number_of(cfg, E);
  const auto built = cached_evaluator(E, eps, cfg.p, cfg.digits, cfg.cache_dir);
  const PadicQuotient ring = PadicQuotient::build(cfg.p, cfg.k_work, chi.order());
  SumOptions opts;
  opts.threads = cfg.threads;
  opts.max_terms = cfg.max_terms;
  const KuriharaValue v = kurihara_number(chi, recs, built.evaluator, ring, cfg.k_work, opts);
  std::cout << delta_json_line(E.label, v) << "\n";
  return 0;
}

int cmd_symbols(const Settings& s) {
  AnalysisConfig cfg = s.build();
  if (cfg.p == 0) throw Error(ErrorKind::Config, "--p is required");
  const CurveModel E = load_curve(cfg);
  const int eps = root_number_of(cfg, E);
  const auto built = cached_evaluator(E, eps, cfg.p, cfg.digits, cfg.cache_dir);
  std::cout << "curve " << E.label << " N=" << E.conductor << " root_number=" << eps << "\n"
            << "cache " << (built.cache_file.empty() ? "off" : built.cache_file) << (built.cache_hit ? " (hit)" : "")
            << "\n"
            << "scale+ " << built.evaluator.scale(1).get_str() << " scale- " << built.evaluator.scale(-1).get_str()
            << "\n"
            << "[0/1]+ = " << built.evaluator.evaluate(0, 1, 1).get_str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted Kurihara numbers, Selmer structure and main-conjecture checks"};
  app.require_subcommand(1);

  Settings analyze_s, imc_s, primes_s, delta_s, symbols_s;
  bool print_json = false;
  auto* analyze = app.add_subcommand("analyze", "full pipeline: ladders, Selmer structure, integral Fitting ideals");
  analyze_s.add(analyze, kAnalyzeKeys);
  analyze->add_flag("--json", print_json, "print report.json instead of the summary");

  auto* imc = app.add_subcommand("imc-check", "main-conjecture verdict per character");
  imc_s.add(imc, kAnalyzeKeys);

  std::size_t count = 4;
  std::uint64_t start = 2;
  auto* primes = app.add_subcommand("primes", "list Kolyvagin primes");
  primes_s.add(primes, {"curve", "curve-file", "ainvs", "p", "cyclotomic", "subgroup", "chars", "prime-k", "scan-bound"});
  primes->add_option("--count", count, "number of primes");
  primes->add_option("--start", start, "first candidate");

  std::vector<std::uint64_t> n;
  auto* delta = app.add_subcommand("delta", "a single twisted Kurihara number");
  delta_s.add(delta, {"curve", "curve-file", "ainvs", "p", "cyclotomic", "subgroup", "chars", "k-work", "prime-k",
                      "digits", "root-number", "cache-dir", "threads", "max-terms"});
  delta->add_option("--n", n, "Kolyvagin primes dividing n")->delimiter(',');

  auto* symbols = app.add_subcommand("symbols", "build or inspect the modular-symbol cache");
  symbols_s.add(symbols, {"curve", "curve-file", "ainvs", "p", "digits", "root-number", "cache-dir"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*analyze) return cmd_analyze(analyze_s, print_json, *analyze);
    if (*imc) return cmd_imc(imc_s, *imc);
    if (*primes) return cmd_primes(primes_s, count, start);
    if (*delta) return cmd_delta(delta_s, n);
    if (*symbols) return cmd_symbols(symbols_s);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::Config) std::cerr << app.help();
    return 1;
  }
  return 1;
}
