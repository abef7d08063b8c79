#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace kurihara::poly {

/// Dense polynomial, coefficient i multiplies x^i. Trailing zeros trimmed.
using ZPoly = std::vector<mpz_class>;
/// Polynomial over F_p with p < 2^62.
using FpPoly = std::vector<std::uint64_t>;

void trim(ZPoly& f);
void trim(FpPoly& f);

/// The d-th cyclotomic polynomial over Z.
ZPoly cyclotomic(std::uint64_t d);

ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly reduce_coeffs(const ZPoly& a, const mpz_class& m);

FpPoly to_fp(const ZPoly& a, std::uint64_t p);
ZPoly to_z(const FpPoly& a);

FpPoly fp_add(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
/// Quotient and remainder; divisor must be nonzero.
void fp_divmod(const FpPoly& a, const FpPoly& b, std::uint64_t p, FpPoly& q, FpPoly& r);
FpPoly fp_mod(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p);
FpPoly fp_monic(const FpPoly& a, std::uint64_t p);
/// base^exp mod modulus.
FpPoly fp_powmod(const FpPoly& base, const mpz_class& exp, const FpPoly& modulus, std::uint64_t p);
/// Extended gcd: s*a + t*b = g (monic).
void fp_xgcd(const FpPoly& a, const FpPoly& b, std::uint64_t p, FpPoly& g, FpPoly& s, FpPoly& t);

/// All monic irreducible factors of a squarefree f whose factors all have
/// degree `degree` (equal-degree factorization, odd p). Sorted by
/// coefficient sequence read from x^(degree-1) down to x^0.
std::vector<FpPoly> equal_degree_factors(const FpPoly& f, int degree, std::uint64_t p);

/// Distinct-degree + equal-degree factorization of a squarefree monic f.
std::vector<FpPoly> factor_squarefree(const FpPoly& f, std::uint64_t p);

/// Lexicographic order used for deterministic factor selection: compare the
/// non-leading coefficients starting at x^(deg-1).
bool factor_less(const FpPoly& a, const FpPoly& b);

/// Lift the monic factor g of f (mod p) to the unique monic factor of f
/// modulo p^k congruent to g. f must be monic and squarefree mod p.
ZPoly hensel_lift_factor(const ZPoly& f, const FpPoly& g, std::uint64_t p, int k);

}  // namespace kurihara::poly
