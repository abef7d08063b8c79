#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kurihara/exponent.hpp"
#include "kurihara/group_ring.hpp"
#include "kurihara/kurihara.hpp"

namespace kurihara {

enum class Certification { proved_under_hypotheses, empirical };
enum class ImcStatus { verified, open };

std::string to_string(Certification c);
std::string to_string(ImcStatus s);

/// Exponent list n_0..n_s of a ladder that reaches a unit. Throws NotReached.
std::vector<Exponent> ladder_exponents(const ThetaLadder& ladder);

struct FittingExponents {
  std::vector<Exponent> m;  // m_0..m_s, zero beyond
  std::vector<bool> exact;  // m_i read only exact ladder entries
};

/// Fitt_i = m^{min(n_i, (n_{i-1} + n_{i+1}) / 2)} for i = 0..s (and 0 beyond).
/// Throws NotReached, InconsistentLadder (half-integer exponent or
/// differences m_i - m_{i+1} not nonincreasing).
FittingExponents fitting_from_ladder(const ThetaLadder& ladder);

struct SelmerReport {
  std::string chi;
  bool self_dual = false;
  int rank = 0;
  /// Exponents a of the torsion factors O/p^a, largest first; in the
  /// self-dual case each a appears twice.
  std::vector<std::int64_t> torsion;
  std::vector<Exponent> fitting;
  Certification certification = Certification::empirical;
  ImcStatus imc = ImcStatus::open;
  std::vector<Exponent> ladder;
};

/// Throws ParityViolation, InconsistentLadder, NotReached.
SelmerReport selmer_structure(const ThetaLadder& ladder);

/// Rank bracket when no unit is witnessed: lower from exact vanishing at
/// the first levels, upper from the first level with a nonzero value.
std::pair<int, std::optional<int>> rank_bounds(const ThetaLadder& ladder);

ImcStatus imc_verdict(const ThetaLadder& ladder);

/// A character of a finite abelian group: chi(g_i) = zeta_{o_i}^{x_i}.
using GroupCharacter = std::vector<std::uint64_t>;

struct RingComponent {
  std::vector<GroupCharacter> orbit;  // Frobenius orbit, first member least
  int degree = 1;
  GroupRingElement idempotent;
  /// Coefficients over Q when the orbit is stable under all of Gal(Q(mu_e)/Q).
  std::optional<std::vector<mpq_class>> rational_idempotent;
};

struct GroupRingDecomposition {
  GroupDescriptor group;
  std::uint64_t p = 0;
  PadicQuotient ring;  // O_e / p^k, e the exponent of G
  std::vector<RingComponent> components;

  /// Component holding the given character.
  std::size_t component_of(const GroupCharacter& chi) const;
};

/// Z_p[G] = sum of unramified components, one per Frobenius orbit of
/// characters. Throws OrderDivisibleByP.
GroupRingDecomposition decompose_group_ring(const GroupDescriptor& G, std::uint64_t p, int k);

/// Module data on one component: rank copies of O plus torsion O/p^a.
struct ComponentModule {
  int rank = 0;
  std::vector<std::int64_t> torsion;
  bool operator==(const ComponentModule&) const = default;
};

struct IntegralIdeal {
  std::vector<Exponent> exponents;  // per component
  GroupRingElement generator;       // sum_j p^{e_j} e_j, with p^inf = 0
  std::optional<std::vector<mpq_class>> rational_generator;
};

struct IntegralFitting {
  std::vector<ComponentModule> modules;  // per component
  std::vector<IntegralIdeal> fitting;    // Fitt^0, Fitt^1, ...
  std::vector<IntegralIdeal> presentation;  // I_1, I_2, ... with I_{i-1} inside I_i
};

/// Per-character module data keyed by character; every character of an
/// orbit must carry the same data (OrbitInconsistency otherwise); orbits
/// without data count as zero modules.
IntegralFitting assemble_integral_fitting(const GroupRingDecomposition& decomp,
                                          const std::map<GroupCharacter, ComponentModule>& per_character);

/// Character of unit_group_descriptor(c) given by a Dirichlet character mod c.
GroupCharacter group_character(const DirichletCharacter& chi);

}  // namespace kurihara
