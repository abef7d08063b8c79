#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kurihara/characters.hpp"
#include "kurihara/curve.hpp"
#include "kurihara/exponent.hpp"
#include "kurihara/modsym.hpp"
#include "kurihara/padic.hpp"

namespace kurihara {

/// log_eta(a): the unique x mod p^k with eta^(-x) a of order prime to p in
/// (Z/l)^x, by Pohlig-Hellman in the p-Sylow subgroup. Requires k <= v_p(l-1).
std::uint64_t plog(const KolyvaginPrimeRecord& rec, std::int64_t a, std::uint64_t p, int k);

/// plog for every residue mod l at once (entry 0 unused).
class PlogTable {
 public:
  PlogTable(const KolyvaginPrimeRecord& rec, std::uint64_t p, int k);
  std::uint64_t l() const { return l_; }
  std::uint64_t modulus() const { return pk_; }
  std::uint64_t operator[](std::uint64_t r) const { return table_[r]; }

 private:
  std::uint64_t l_, pk_;
  std::vector<std::uint64_t> table_;
};

/// k_n = min k_l over l | n, k_work for n = 1.
int kn_exponent(const std::vector<KolyvaginPrimeRecord>& n, int k_work);

struct KuriharaValue {
  std::vector<std::uint64_t> n;  // sorted; empty for n = 1
  std::string chi;
  int k_n = 0;
  CyclotomicInteger value;
  Exponent ord;
  int nu = 0;
};

struct SumOptions {
  unsigned threads = 1;
  std::uint64_t max_terms = 4000000000ULL;
};

/// delta_{n,chi} = sum over a in (Z/cn)^x of chibar(a) [a/cn]^{chi(-1)}
/// prod_l log_l(a), in O_d / p^{k_n}. `ring` fixes p, d (a multiple of the
/// order of chi) and the precision k_work used for n = 1. For c = n = 1 the
/// sum is the single term [0/1]^+. Throws PrecisionCollapse when a symbol
/// scale has p in its denominator, ConductorTooLarge past max_terms.
KuriharaValue kurihara_number(const DirichletCharacter& chi, const std::vector<KolyvaginPrimeRecord>& n,
                              const SymbolEvaluator& ev, const PadicQuotient& ring, int k_work,
                              const SumOptions& opts = {});

struct LadderEntry {
  Exponent exponent = Exponent::infinity();
  std::vector<std::uint64_t> witness;
  bool exact = false;
  bool parity_forced = false;  // forced to infinity by the functional equation
  bool computed = false;       // false: level not reached or nothing sampled
  std::size_t samples = 0;
  std::size_t skipped = 0;  // products over the term budget
};

struct ThetaLadder {
  std::string chi;
  bool self_dual = false;
  std::vector<LadderEntry> entries;
  std::vector<KuriharaValue> values;

  /// Least i with a finite exponent, if any.
  std::optional<int> r() const;
  /// Least i with exponent 0, if any.
  std::optional<int> s() const;
  bool unit_witnessed() const { return s().has_value(); }
};

struct LadderStrategy {
  std::size_t primes_per_level = 4;
  int max_level = 3;
  int k = 1;  // Kolyvagin primes are searched with l = 1 mod p^k
  std::uint64_t scan_bound = 100000000ULL;
  SumOptions sum;
  /// Primes to use instead of a search (already certified).
  std::vector<KolyvaginPrimeRecord> primes;
};

/// Sign that delta_{n,chi} must satisfy for self-dual chi: nonzero values
/// need (-1)^nu eps chi(-N) = 1.
bool parity_allows(int nu, int eps, const DirichletCharacter& chi, std::uint64_t N);

/// Level 0 is delta_{1,chi}; level i samples products of i distinct primes
/// from the first primes_per_level certified primes in colexicographic
/// order. Levels forced to vanish by the functional equation are filled as
/// exact infinity without computing. Stops at the first unit.
ThetaLadder theta_ladder(const CurveModel& E, const DirichletCharacter& chi, const SymbolEvaluator& ev,
                         const PadicQuotient& ring, int eps, int k_work, const LadderStrategy& strategy,
                         const std::function<void(const KuriharaValue&)>& sink = {});

struct FunctionalEquationReport {
  bool skipped = false;  // chi is not self-dual
  std::size_t checked = 0;
  std::vector<std::vector<std::uint64_t>> violations;
};

FunctionalEquationReport functional_equation_check(const CurveModel& E, int eps, const DirichletCharacter& chi,
                                                   const std::vector<KuriharaValue>& values);

/// One JSON line {curve, p, chi, n, k_n, ord, value_coeffs}.
std::string delta_json_line(const std::string& curve, const KuriharaValue& v);

}  // namespace kurihara
