#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kurihara/characters.hpp"
#include "kurihara/curve.hpp"
#include "kurihara/modsym.hpp"

namespace kurihara {

inline constexpr const char* kEngineVersion = "kurihara-engine/1";

/// "all", "trivial", "quadratic", "order=N", or "order=N" followed by pins
/// "at=a,residue=r" / "at=a,root=c0:c1:..." with an optional ",mod=j".
struct CharacterSelector {
  std::string kind = "all";  // all | trivial | quadratic | order
  std::uint64_t order = 0;
  std::vector<CharacterPin> pins;
};

CharacterSelector parse_selector(const std::string& text);

struct AnalysisConfig {
  std::string curve;       // bundled label, or label inside curve_file
  std::string curve_file;  // optional JSON curve file
  std::optional<std::array<long, 5>> ainvs;
  std::uint64_t p = 0;
  int k_work = 5;
  std::uint64_t cyclotomic = 1;
  std::vector<std::uint64_t> subgroup;  // generators of H; empty means Q(mu_c)
  std::vector<CharacterSelector> characters{CharacterSelector{}};
  std::size_t budget = 4;  // Kolyvagin primes per level
  int levels = 3;
  int prime_k = 1;
  std::uint64_t scan_bound = 100000000ULL;
  std::uint64_t max_terms = 400000000ULL;
  unsigned digits = 30;
  int root_number = 0;  // 0: compute
  std::string cache_dir;
  std::string output_dir;  // empty: no files written
  std::string emit_deltas;  // JSON-lines path, "-" for stdout
  unsigned threads = 1;

  /// Throws Config.
  void validate() const;
};

/// JSON object, or "key = value" lines with '#' comments. Keys follow the
/// command-line flag names (p, curve, cyclotomic, chars, budget, ...).
AnalysisConfig parse_config(const std::string& text);
/// Sets one key as parse_config would. Throws Config.
void apply_setting(AnalysisConfig& cfg, const std::string& key, const std::string& value);
AnalysisConfig load_config(const std::string& path);

CurveModel load_curve(const AnalysisConfig& cfg);
FieldSpec field_of(const AnalysisConfig& cfg);

/// Characters of K picked by the selectors, deduplicated, in enumeration
/// order. Throws AmbiguousCharacter, Config.
std::vector<DirichletCharacter> select_characters(const FieldSpec& spec, const std::vector<CharacterSelector>& sel,
                                                  std::uint64_t p);

/// Cache directory: $KURIHARA_CACHE_DIR, else the configured one.
std::string cache_directory(const std::string& configured);

struct EvaluatorBuild {
  SymbolEvaluator evaluator;
  bool cache_hit = false;
  std::string cache_file;  // empty when caching is off
};

/// Normalized symbols for (E, eps) policing p, read from or written to the
/// cache. A corrupt or stale cache entry is rebuilt.
EvaluatorBuild cached_evaluator(const CurveModel& E, int eps, std::uint64_t p, unsigned digits,
                                const std::string& cache_dir);

/// Reads a cache file written by cached_evaluator. Throws CacheCorrupt on a
/// checksum or format failure; returns nullopt when the fingerprint differs.
std::optional<SymbolEvaluator> read_symbol_cache(const std::string& path, const CurveModel& E, int eps,
                                                 std::uint64_t p);

struct AnalysisOutcome {
  int exit_code = 0;  // 0 ok, 1 engine error, 2 hypothesis failure
  std::string report_json;
  std::string summary;
  std::string error;  // "stage: message" on exit code 1
};

/// Full analysis; writes report.json and summary.txt into output_dir when set.
AnalysisOutcome run_analyze(const AnalysisConfig& cfg, std::ostream* log = nullptr);

}  // namespace kurihara
