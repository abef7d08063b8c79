#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kurihara/characters.hpp"
#include "kurihara/curve.hpp"

namespace kurihara {

enum class CheckStatus { pass, fail, warn, assumed };

std::string to_string(CheckStatus s);

struct HypothesisCheck {
  std::string id;
  CheckStatus status = CheckStatus::assumed;
  std::string detail;
  bool heuristic = false;  // pass backed by sampling, not a proof
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;

  bool any_failed() const;
  const HypothesisCheck* find(const std::string& id) const;
  /// Marks the main-conjecture entry as passed once every character has a
  /// witnessed unit.
  void upgrade_main_conjecture(const std::string& detail);
};

/// Computable hypotheses for (E, K, p):
///   surjective        mod-p image contains SL_2 (sampled criterion, heuristic)
///   manin_constant    assumed
///   unramified        gcd(c, N p) = 1
///   degree            p does not divide [K:Q]
///   local_torsion     no p-torsion over the completions of K above p
///   tamagawa          p divides no Tamagawa number over K
///   rational_torsion  E(Q)[p] = 0
///   main_conjecture   assumed unless upgraded
HypothesisReport hypothesis_report(const CurveModel& E, const FieldSpec& spec, std::uint64_t p,
                                   std::uint64_t sample_bound = 3000);

}  // namespace kurihara
