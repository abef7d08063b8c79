#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kurihara/linalg.hpp"

namespace kurihara {

class ApTable;

/// P^1(Z/N) with Sage-style normalized representatives (u : v), u | N.
class P1List {
 public:
  explicit P1List(std::uint64_t N);

  std::uint64_t level() const { return N_; }
  std::size_t size() const { return reps_.size(); }
  const std::pair<std::uint64_t, std::uint64_t>& operator[](std::size_t i) const { return reps_[i]; }

  /// Normalized representative of (c : d), or nullopt when gcd(c, d, N) > 1.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> normalize(std::int64_t c, std::int64_t d) const;
  std::optional<std::size_t> index(std::int64_t c, std::int64_t d) const;

  /// FNV-1a hash of the representative list.
  std::uint64_t fingerprint() const;

 private:
  std::uint64_t N_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> reps_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Integer 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  std::int64_t a, b, c, d;
};

/// Merel's set of determinant-q matrices [[a,b],[c,d]] with a > b >= 0 and
/// d > c >= 0.
std::vector<Mat2> heilbronn_merel(std::uint64_t q);

/// Manin symbols for Gamma_0(N) modulo the 2-term and 3-term relations.
/// Elements of the quotient are row vectors; an operator is the matrix whose
/// i-th row holds the image of the i-th basis element.
class ManinSymbolSpace {
 public:
  static ManinSymbolSpace build(std::uint64_t N);

  std::uint64_t level() const { return p1_->level(); }
  const P1List& p1() const { return *p1_; }
  std::shared_ptr<const P1List> p1_shared() const { return p1_; }
  std::size_t dimension() const { return basis_reps_.size(); }
  std::size_t cuspidal_dimension() const { return cuspidal_dim_; }
  std::size_t cusp_count() const { return cusp_count_; }

  /// Coordinates of the Manin symbol with P^1 index i.
  const std::vector<mpq_class>& coordinates(std::size_t i) const { return coords_[i]; }
  /// Coordinates of the symbol (c : d) (zero vector for invalid pairs).
  std::vector<mpq_class> coordinates_of(std::int64_t c, std::int64_t d) const;
  /// P^1 index of the symbol chosen for each basis element.
  const std::vector<std::size_t>& basis_representatives() const { return basis_reps_; }

  linalg::QMatrix star() const;
  /// T_q for a prime q not dividing N. Throws BadLevelPrime otherwise.
  linalg::QMatrix hecke(std::uint64_t q) const;
  /// Boundary map to the space of cusp classes (rows: basis elements).
  const linalg::QMatrix& boundary() const { return boundary_; }

 private:
  std::shared_ptr<const P1List> p1_;
  std::vector<std::vector<mpq_class>> coords_;
  std::vector<std::size_t> basis_reps_;
  linalg::QMatrix boundary_;
  std::size_t cusp_count_ = 0;
  std::size_t cuspidal_dim_ = 0;
};

/// Rational functionals on the quotient (column vectors) for the two star
/// eigenspaces, each cut down to dimension one by Hecke eigenvalues.
struct EigenDuals {
  std::vector<mpq_class> plus;
  std::vector<mpq_class> minus;
  std::vector<std::uint64_t> primes_used;
};

/// Intersects the kernels of T_q - a_q on each star eigenspace for good q in
/// increasing order until both are one-dimensional. Throws
/// EigenspaceNotOneDimensional with the list of q tried.
EigenDuals cut_eigenspace(const ManinSymbolSpace& space, const ApTable& aps,
                          std::uint64_t max_q = 200);

/// Edges of the path {oo, a/m} as Manin symbols (c : d), by the continued
/// fraction convergents p_j/q_j: the j-th edge is ((-1)^(j-1) q_j : q_(j-1)).
std::vector<std::pair<std::int64_t, std::int64_t>> manin_path(std::int64_t a, std::uint64_t m);

/// Fast evaluation of normalized modular symbols [a/m]^{+-}.
class SymbolEvaluator {
 public:
  /// phi_{+-}[i] is the integral functional at P^1 index i; scale_{+-}
  /// converts raw pairings to normalized symbols. p = 0 disables policing.
  SymbolEvaluator(std::shared_ptr<const P1List> p1, std::vector<std::int64_t> phi_plus,
                  std::vector<std::int64_t> phi_minus, mpq_class scale_plus, mpq_class scale_minus,
                  std::uint64_t p = 0);

  std::uint64_t level() const { return p1_->level(); }
  const P1List& p1() const { return *p1_; }
  std::uint64_t p() const { return p_; }
  const mpq_class& scale(int sign) const { return sign > 0 ? scale_plus_ : scale_minus_; }
  const std::vector<std::int64_t>& phi(int sign) const { return sign > 0 ? phi_plus_ : phi_minus_; }

  /// Integer pairing of the path {oo, a/m} with the integral functional.
  std::int64_t raw(std::int64_t a, std::uint64_t m, int sign) const;
  /// [a/m]^sign = scale * raw. Throws DenominatorNotPrimeToP when p divides
  /// the denominator.
  mpq_class evaluate(std::int64_t a, std::uint64_t m, int sign) const;

  /// Copy that polices a different prime.
  SymbolEvaluator with_prime(std::uint64_t p) const;

 private:
  std::int64_t lookup(std::int64_t c, std::int64_t d, const std::vector<std::int64_t>& phi,
                      const std::vector<std::int64_t>& dense) const;

  std::shared_ptr<const P1List> p1_;
  std::vector<std::int64_t> phi_plus_, phi_minus_;
  // phi at (c mod N, d mod N), filled when N^2 is small.
  std::vector<std::int64_t> dense_plus_, dense_minus_;
  mpq_class scale_plus_, scale_minus_;
  std::uint64_t p_ = 0;
};

/// Integral functional on P^1 indices from a rational dual vector: phi(x) =
/// coords(x) . w, cleared to content one.
std::vector<std::int64_t> integral_functional(const ManinSymbolSpace& space,
                                              const std::vector<mpq_class>& w);

}  // namespace kurihara
