#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>
#include <optional>
#include <string>
#include <vector>

#include "kurihara/characters.hpp"
#include "kurihara/curve.hpp"
#include "kurihara/modsym.hpp"

namespace kurihara::analytic {

using Real = boost::multiprecision::mpfr_float;

struct Complex {
  Real re, im;

  Complex() : re(0), im(0) {}
  Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  Complex operator*(const Real& s) const { return {re * s, im * s}; }
  Complex operator/(const Complex& o) const;
  Complex conj() const { return {re, -im}; }
  Real abs() const;
  static Complex expi(const Real& theta);
};

/// Sets the working precision (decimal digits) for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

Real pi();

/// A value with an absolute error bound.
struct Approx {
  Complex value;
  Real error;
};

struct PeriodData {
  Real omega_plus;   // generator of the real periods
  Real omega_minus;  // generator of the imaginary periods (as a positive real)
  Complex omega1, omega2;  // lattice basis
  bool rectangular = false;  // discriminant > 0
  unsigned digits = 0;
  Real error;
};

/// Periods of the lattice of the given model by the arithmetic-geometric
/// mean.
PeriodData periods(const CurveModel& E, unsigned digits);

/// Gauss sum sum_a chi(a) exp(2 pi i a / c) of a primitive character.
Complex gauss_sum(const DirichletCharacter& chi, unsigned digits);

/// L(E, chi, 1) for a primitive chi with conductor prime to N, from the
/// smoothed series with cutoff parameter t; root number eps of E. The value
/// is recomputed at a second t and the two must agree.
Approx twisted_l_value(const CurveModel& E, const DirichletCharacter& chi, int eps, unsigned digits);

/// Root number of E: the sign for which the smoothed series for L(E, 1) does
/// not depend on the cutoff parameter.
int root_number(const CurveModel& E, unsigned digits = 30);

/// lambda(a/c) = 2 pi i int_{i oo}^{a/c} f(z) dz for N | c, gcd(a, c) = 1.
Approx period_integral(const CurveModel& E, std::int64_t a, std::uint64_t c, unsigned digits);

/// Continued-fraction reconstruction of x as p/q with q <= bound and
/// |x - p/q| < tol; nullopt otherwise.
std::optional<mpq_class> reconstruct_rational(const Real& x, const Real& tol, std::uint64_t bound);

struct NormalizationReport {
  mpq_class scale_plus, scale_minus;
  std::size_t points_plus = 0, points_minus = 0;
  Real max_residual;
};

/// Fixes the rational scales of the two integral functionals so that they
/// compute (lambda(r) +- lambda(-r)) / (2 Omega^{+-}); Omega^- is taken as
/// i * omega_minus. Throws NormalizationMismatch.
NormalizationReport normalization_scales(const ManinSymbolSpace& space, const EigenDuals& duals,
                                         const CurveModel& E, int eps, unsigned digits,
                                         std::uint64_t denominator_bound = 1000000);

/// Builds, cuts, and normalizes the evaluator for E in one go.
SymbolEvaluator build_evaluator(const CurveModel& E, int eps, std::uint64_t p, unsigned digits = 30);

struct BirchResult {
  /// Exact value sum_a chibar(a) [a/c]^{chi(-1)} as coefficients of
  /// zeta_order^t, t = 0..order-1.
  std::vector<mpq_class> exact;
  Complex exact_embedded;
  Complex l_value;
  Complex gauss_conj;  // tau(chibar)
  /// tau(chibar) L(E, chi, 1) / Omega^{chi(-1)}.
  Complex analytic;
  Real residual;
  /// L(E, chi, 1) / (tau(chibar) Omega^{chi(-1)}).
  Complex analytic_inverse_gauss;
  Real residual_inverse_gauss;
  bool pass = false;
};

BirchResult birch_consistency(const CurveModel& E, const DirichletCharacter& chi, const SymbolEvaluator& ev,
                              int eps, unsigned digits);

}  // namespace kurihara::analytic
