#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kurihara/padic.hpp"

namespace kurihara {

class SymbolEvaluator;
struct KolyvaginPrimeRecord;

/// One cyclic factor of a finite abelian group. `tag` names the Kolyvagin
/// prime l when the factor is G_l (generated by tau_l), 0 otherwise.
struct CyclicFactor {
  std::uint64_t order = 1;
  std::uint64_t tag = 0;
  bool operator==(const CyclicFactor&) const = default;
};

/// Finite abelian group as a product of cyclic factors; elements are
/// exponent vectors, stored by mixed-radix index (first factor fastest).
class GroupDescriptor {
 public:
  GroupDescriptor() = default;
  explicit GroupDescriptor(std::vector<CyclicFactor> factors);

  const std::vector<CyclicFactor>& factors() const { return factors_; }
  std::size_t order() const { return order_; }
  std::size_t index(const std::vector<std::uint64_t>& exps) const;
  std::vector<std::uint64_t> exponents(std::size_t index) const;
  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;
  /// Position of the factor tagged l; throws GroupMismatch.
  std::size_t factor_of(std::uint64_t l) const;

  bool operator==(const GroupDescriptor& o) const { return factors_ == o.factors_; }
  std::string describe() const;

 private:
  std::vector<CyclicFactor> factors_;
  std::size_t order_ = 1;
};

/// Element of (O_d / p^k)[G] with dense coefficients.
class GroupRingElement {
 public:
  GroupRingElement(GroupDescriptor group, PadicQuotient ring);

  static GroupRingElement basis(const GroupDescriptor& group, const PadicQuotient& ring, std::size_t index);
  /// N = sum of all elements of the factor tagged l.
  static GroupRingElement norm(const GroupDescriptor& group, const PadicQuotient& ring, std::uint64_t l);
  /// D_l = sum_i i tau_l^i over the factor tagged l.
  static GroupRingElement derivative(const GroupDescriptor& group, const PadicQuotient& ring, std::uint64_t l);

  const GroupDescriptor& group() const { return group_; }
  const PadicQuotient& ring() const { return ring_; }
  const CyclotomicInteger& operator[](std::size_t i) const { return coeffs_[i]; }
  CyclotomicInteger& operator[](std::size_t i) { return coeffs_[i]; }

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement scale(const CyclotomicInteger& c) const;
  /// The involution sigma -> sigma^{-1}.
  GroupRingElement involution() const;
  /// Multiplication by the group element with the given index.
  GroupRingElement shift(std::size_t index) const;
  GroupRingElement reduce_to(const PadicQuotient& lower) const;

  bool is_zero() const;
  bool operator==(const GroupRingElement& o) const;

 private:
  void check_same(const GroupRingElement& o) const;
  GroupDescriptor group_;
  PadicQuotient ring_;
  std::vector<CyclotomicInteger> coeffs_;
};

/// (Z/n)^x as a group descriptor, factors following UnitGroup(n).
GroupDescriptor unit_group_descriptor(std::uint64_t n);
/// Index of sigma_a in unit_group_descriptor(n).
std::size_t unit_index(std::uint64_t n, std::int64_t a);

/// theta_n = sum_a ([a/n]^+ + [a/n]^-) sigma_a over (Z/n)^x.
GroupRingElement mazur_tate_element(const SymbolEvaluator& ev, std::uint64_t n, const PadicQuotient& ring);

/// D_n x = prod_l D_l x for the primes of n; each needs a factor tagged l
/// of p-power order. Throws GroupMismatch.
GroupRingElement kolyvagin_derivative(const GroupRingElement& x, const std::vector<std::uint64_t>& primes);

}  // namespace kurihara
