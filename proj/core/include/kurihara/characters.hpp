#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kurihara/padic.hpp"

namespace kurihara {

/// An abelian field K inside Q(mu_c), given as the fixed field of a subgroup
/// H of (Z/c)^x. d = [K:Q] = [(Z/c)^x : H].
struct FieldSpec {
  std::uint64_t c = 1;
  std::vector<std::uint64_t> h_generators;
  std::uint64_t d = 1;
  std::string label;

  /// K = Q(mu_c).
  static FieldSpec cyclotomic(std::uint64_t c);
  /// K = Q.
  static FieldSpec rationals();
  /// Fixed field of the subgroup generated by `gens`; d is computed.
  static FieldSpec from_subgroup(std::uint64_t c, std::vector<std::uint64_t> gens,
                                 std::string label = {});

  /// Elements of H in increasing order. Throws BadSubgroup for generators
  /// that are not units mod c.
  std::vector<std::uint64_t> subgroup_elements() const;
};

/// Decomposition of (Z/m)^x as a product of cyclic groups, one (or two, for
/// 2-power moduli) per prime power of m, with a discrete-log table.
class UnitGroup {
 public:
  explicit UnitGroup(std::uint64_t m);

  std::uint64_t modulus() const { return m_; }
  const std::vector<std::uint64_t>& generators() const { return gens_; }
  const std::vector<std::uint64_t>& orders() const { return orders_; }
  std::uint64_t order() const { return phi_; }
  /// Exponent of the group (lcm of orders).
  std::uint64_t exponent() const { return exponent_; }
  /// Exponents of a on the generators; nullopt if gcd(a, m) > 1.
  std::optional<std::vector<std::uint64_t>> dlog(std::uint64_t a) const;

 private:
  std::uint64_t m_;
  std::uint64_t phi_ = 1;
  std::uint64_t exponent_ = 1;
  std::vector<std::uint64_t> gens_;
  std::vector<std::uint64_t> orders_;
  // dlog_[a * r + i] is the exponent of generator i in a.
  std::vector<std::uint32_t> dlog_;
  std::vector<bool> unit_;
};

/// A Dirichlet character mod `modulus` with values in mu_order. Stored as a
/// table a -> t with chi(a) = exp(2 pi i t / order); non-units map to -1.
class DirichletCharacter {
 public:
  DirichletCharacter(std::uint64_t modulus, std::uint64_t order, std::vector<std::int64_t> table);

  /// Character of (Z/m)^x with chi(g_i) = exp(2 pi i x_i / n_i) on the
  /// generators of `group`.
  static DirichletCharacter from_generator_exponents(const UnitGroup& group,
                                                     const std::vector<std::uint64_t>& x);
  static DirichletCharacter trivial(std::uint64_t modulus = 1);

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t order() const { return order_; }
  std::uint64_t conductor() const { return conductor_; }
  /// chi(-1) in {+1, -1}.
  int parity() const { return parity_; }
  bool is_trivial() const { return order_ == 1; }
  bool is_primitive() const { return conductor_ == modulus_; }
  /// chi = chi-bar, i.e. order at most 2.
  bool is_self_dual() const { return order_ <= 2; }

  /// t with chi(a) = zeta_order^t, or nullopt if gcd(a, modulus) > 1.
  std::optional<std::uint64_t> exponent_at(std::int64_t a) const;
  /// Value in a ring whose d is divisible by the order; nullopt for non-units.
  std::optional<CyclotomicInteger> evaluate(std::int64_t a, const PadicQuotient& ring) const;

  DirichletCharacter conj() const;
  DirichletCharacter pow(std::int64_t j) const;
  /// The primitive character inducing this one.
  DirichletCharacter primitive() const;
  /// chi restricted to the kernel field: the FieldSpec cut out by ker chi.
  FieldSpec kernel_field() const;

  /// Label "chi<modulus>_<order>[x_1,...]" with the exponents on the generators.
  std::string label() const;
  /// Table of exponents, -1 for non-units.
  const std::vector<std::int64_t>& table() const { return table_; }

  bool operator==(const DirichletCharacter& o) const {
    return modulus_ == o.modulus_ && order_ == o.order_ && table_ == o.table_;
  }

 private:
  std::uint64_t modulus_;
  std::uint64_t order_;
  std::uint64_t conductor_ = 1;
  int parity_ = 1;
  std::vector<std::int64_t> table_;
};

/// All d characters of (Z/c)^x trivial on H, trivial character first, then by
/// increasing order and lexicographic generator exponents.
std::vector<DirichletCharacter> enumerate_characters(const FieldSpec& spec);

/// True iff l mod c lies in H. Throws RamifiedPrime when l divides c.
bool splits_completely(const FieldSpec& spec, std::uint64_t l);

/// One residue condition used to pin a character among candidates:
/// either chi(at) = residue mod p^j, or chi(at) is a root mod p of the
/// polynomial root_of (coefficients from the constant term up).
struct CharacterPin {
  std::int64_t at = 0;
  std::optional<std::int64_t> residue;
  std::vector<std::int64_t> root_of;
  int mod_exponent = 1;  // j in p^j
};

/// Characters with the given modulus and order satisfying every pin. The
/// candidates are reported unchanged; callers decide about ambiguity.
std::vector<DirichletCharacter> pinned_candidates(std::uint64_t modulus, std::uint64_t order,
                                                  const std::vector<CharacterPin>& pins,
                                                  std::uint64_t p);

/// Selects a unique character; a single orbit {chi, chi^p, chi^(p^2), ...}
/// counts as unique (its members share every valuation) and the member with
/// the least label is returned. Otherwise throws AmbiguousCharacter listing
/// the candidates.
DirichletCharacter select_pinned(std::uint64_t modulus, std::uint64_t order,
                                 const std::vector<CharacterPin>& pins, std::uint64_t p);

}  // namespace kurihara
