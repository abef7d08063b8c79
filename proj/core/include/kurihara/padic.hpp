#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kurihara/exponent.hpp"
#include "kurihara/poly.hpp"

namespace kurihara {

class CyclotomicInteger;

/// O_d / p^k where O_d = Z_p[mu_d], realized as (Z/p^k)[x]/(g) with g a Hensel
/// lift of an irreducible factor of Phi_d mod p. The class of x is zeta_d.
///
/// Factor selection: among the monic irreducible factors of Phi_d mod p, the
/// one whose coefficients (x^(f-1) down to x^0, as integers in [0, p)) are
/// lexicographically least.
class PadicQuotient {
 public:
  static PadicQuotient build(std::uint64_t p, int k, std::uint64_t d);

  std::uint64_t p() const;
  int k() const;
  std::uint64_t d() const;
  int f() const;
  /// p^k
  const mpz_class& pk() const;
  /// Monic modulus of degree f, coefficients in [0, p^k).
  const poly::ZPoly& modulus_poly() const;

  CyclotomicInteger zero() const;
  CyclotomicInteger one() const;
  CyclotomicInteger zeta() const;
  /// zeta_d^e for any integer e.
  CyclotomicInteger zeta_power(std::int64_t e) const;
  CyclotomicInteger from_int(const mpz_class& a) const;
  CyclotomicInteger from_int(std::int64_t a) const;
  /// Throws DenominatorNotPrimeToP when p divides the denominator.
  CyclotomicInteger from_rational(const mpq_class& q) const;
  CyclotomicInteger from_coeffs(std::vector<mpz_class> coeffs) const;

  /// Same (p, d) with a different precision. The modulus is the Hensel lift
  /// of the same residual factor, so reduction maps are compatible.
  PadicQuotient with_precision(int k) const;

  bool operator==(const PadicQuotient& o) const;
  bool operator!=(const PadicQuotient& o) const { return !(*this == o); }

  std::string describe() const;

 private:
  struct Data;
  explicit PadicQuotient(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
  friend class CyclotomicInteger;
};

class CyclotomicInteger {
 public:
  CyclotomicInteger(PadicQuotient ring, std::vector<mpz_class> coeffs);

  const PadicQuotient& ring() const { return ring_; }
  /// Exactly f residues in [0, p^k).
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  CyclotomicInteger operator+(const CyclotomicInteger& o) const;
  CyclotomicInteger operator-(const CyclotomicInteger& o) const;
  CyclotomicInteger operator*(const CyclotomicInteger& o) const;
  CyclotomicInteger operator-() const;
  CyclotomicInteger& operator+=(const CyclotomicInteger& o);
  CyclotomicInteger& operator*=(const CyclotomicInteger& o);
  CyclotomicInteger scale(const mpz_class& c) const;
  CyclotomicInteger pow(const mpz_class& e) const;
  CyclotomicInteger pow(std::uint64_t e) const;
  /// Inverse of a unit; throws InvalidArgument if not a unit.
  CyclotomicInteger inverse() const;

  bool is_zero() const;
  bool is_unit() const;
  /// Largest j < k with p^j dividing every coefficient, or infinity for 0.
  Exponent valuation() const;
  /// Image in the same ring at lower precision.
  CyclotomicInteger reduce_to(const PadicQuotient& lower) const;

  bool operator==(const CyclotomicInteger& o) const;
  bool operator!=(const CyclotomicInteger& o) const { return !(*this == o); }

  /// "[c0, c1, ...]"
  std::string to_string() const;

 private:
  void check_same(const CyclotomicInteger& o) const;
  PadicQuotient ring_;
  std::vector<mpz_class> coeffs_;
};

inline Exponent valuation(const CyclotomicInteger& x) { return x.valuation(); }

}  // namespace kurihara
