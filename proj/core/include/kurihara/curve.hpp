#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kurihara/characters.hpp"

namespace kurihara {

/// Local reduction data at one prime from Tate's algorithm.
struct LocalData {
  std::uint64_t prime = 0;
  int disc_valuation = 0;
  int conductor_exponent = 0;
  int tamagawa = 1;
  std::string kodaira;  // "I0", "I5", "II", "I1*", "IV*", ...
  /// +1 split multiplicative, -1 non-split, 0 additive or good.
  int split = 0;
  /// a_l at a bad prime: 1, -1 or 0.
  int ap() const { return conductor_exponent == 1 ? split : 0; }
};

struct CurveModel {
  std::string label;
  std::array<mpz_class, 5> a;  // a1, a2, a3, a4, a6
  mpz_class b2, b4, b6, b8, c4, c6, disc;
  std::uint64_t conductor = 0;
  std::vector<LocalData> bad_primes;
  /// Root number when known (0 = not yet determined).
  int root_number = 0;

  /// Computes invariants and runs Tate's algorithm at every prime dividing
  /// the discriminant. Throws SingularModel, NonMinimalModel, and
  /// ConductorTooLarge when the discriminant cannot be factored.
  static CurveModel from_ainvs(const std::array<long, 5>& ainvs, std::string label = {});

  bool has_good_reduction(std::uint64_t l) const;
  const LocalData* local(std::uint64_t l) const;
  std::array<long, 5> ainvs_long() const;
};

/// Tate's algorithm at p on a model with integral coefficients. `minimal`
/// reports whether the given model was already minimal at p.
LocalData tate_local_data(const std::array<mpz_class, 5>& a, std::uint64_t p, bool* minimal = nullptr);

/// a_l for any prime l. Exhaustive count below 10^4, baby-step giant-step
/// above; bad primes from the reduction type.
long trace_of_frobenius(const CurveModel& E, std::uint64_t l);

/// #E(F_l) by exhaustive enumeration (l odd or 2; any l below 2^31).
std::uint64_t count_points_exhaustive(const CurveModel& E, std::uint64_t l);
/// #E(F_l) by baby-step giant-step on the short model, l >= 5, good l.
std::uint64_t count_points_bsgs(const CurveModel& E, std::uint64_t l);

/// a_l for primes up to a bound and the multiplicative extension to a_n.
class ApTable {
 public:
  ApTable(const CurveModel& E, std::uint64_t bound);

  std::uint64_t bound() const { return bound_; }
  long ap(std::uint64_t l) const;
  /// a_n for 1 <= n <= bound.
  long an(std::uint64_t n) const { return an_[n]; }
  const std::vector<long>& an_vector() const { return an_; }

 private:
  std::uint64_t bound_;
  std::vector<long> an_;
  std::vector<bool> is_bad_;
};

/// Sylow p-subgroup of E(F_l): order p^s and exponent p^e.
struct SylowStructure {
  int s = 0;
  int e = 0;
};

SylowStructure sylow_p_structure(const CurveModel& E, std::uint64_t l, std::uint64_t p);

struct KolyvaginPrimeRecord {
  std::uint64_t l = 0;
  int k_l = 0;
  std::uint64_t eta = 0;  // least primitive root mod l
  std::uint64_t u = 0;    // prime-to-p part of l - 1
  SylowStructure sylow;
  long a_l = 0;
};

/// Either an accepted record or the first failed condition.
struct KolyvaginCertificate {
  std::optional<KolyvaginPrimeRecord> record;
  std::string rejection;  // "bad_prime: ...", "congruence: ...", "sylow: ...", "splitting: ..."
};

KolyvaginCertificate certify_kolyvagin_prime(const CurveModel& E, const FieldSpec& spec,
                                             std::uint64_t p, int k, std::uint64_t l);

/// First `budget` accepted primes in increasing order. Throws
/// SearchExhausted when scan_bound is reached first.
std::vector<KolyvaginPrimeRecord> find_kolyvagin_primes(const CurveModel& E, const FieldSpec& spec,
                                                        std::uint64_t p, int k, std::size_t budget,
                                                        std::uint64_t scan_bound = 100000000ULL,
                                                        std::uint64_t start = 2);

int tamagawa_number(const CurveModel& E, std::uint64_t l);

/// k'_chi = v_p((1 - a_p chi(p) + 1_N(p) chi(p)^2) / p). Returns nullopt
/// when the Euler factor vanishes in O_d / p^k (valuation >= k - 1).
std::optional<int> euler_factor_valuation(const CurveModel& E, const DirichletCharacter& chi,
                                          std::uint64_t p, const PadicQuotient& ring);

/// Bundled curves by label (11a1, 27a1, 35a1, ...).
CurveModel curve_from_label(const std::string& label);
/// Curves from a JSON file in the bundled format.
CurveModel curve_from_file(const std::string& path, const std::string& label);
/// Directory holding curves.json (env KURIHARA_DATA_DIR overrides).
std::string data_directory();

}  // namespace kurihara
