#include "kurihara/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"

namespace kurihara::analytic {

using nt::i64;
using nt::u64;

Complex Complex::operator/(const Complex& o) const {
  const Real den = o.re * o.re + o.im * o.im;
  return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
}

Real Complex::abs() const { return sqrt(re * re + im * im); }

Complex Complex::expi(const Real& theta) { return {cos(theta), sin(theta)}; }

PrecisionGuard::PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

Real pi() { return acos(Real(-1)); }

namespace {

Real to_real(const mpz_class& z) { return Real(z.get_str()); }

Real pow10(int e) { return pow(Real(10), e); }

unsigned working_digits(unsigned digits, std::uint64_t terms) {
  return digits + 12 + static_cast<unsigned>(std::log10(static_cast<double>(terms) + 10.0));
}


// Roots of 4x^3 + b2 x^2 + 2 b4 x + b6 by Durand-Kerner.
std::vector<Complex> cubic_roots(const Real& b2, const Real& b4, const Real& b6, const Real& tol) {
  const Real c2 = b2 / 4, c1 = b4 / 2, c0 = b6 / 4;
  auto f = [&](const Complex& x) { return ((x + Complex(c2)) * x + Complex(c1)) * x + Complex(c0); };
  Real scale = 1 + abs(c2) + abs(c1) + abs(c0);
  std::vector<Complex> z = {Complex(Real("0.4"), Real("0.9")) * scale, Complex(Real("-0.7"), Real("0.3")) * scale,
                            Complex(Real("0.2"), Real("-0.8")) * scale};
  for (int iter = 0; iter < 2000; ++iter) {
    Real change = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      Complex den(1);
      for (std::size_t j = 0; j < 3; ++j) {
        if (j != i) den = den * (z[i] - z[j]);
      }
      const Complex step = f(z[i]) / den;
      z[i] = z[i] - step;
      change = std::max(change, step.abs());
    }
    if (change < tol * scale) break;
  }
  return z;
}

Real agm(Real a, Real b, const Real& tol) {
  for (int i = 0; i < 10000 && abs(a - b) > tol * abs(a); ++i) {
    Real an = (a + b) / 2;
    b = sqrt(a * b);
    a = an;
  }
  return a;
}

}  // namespace

PeriodData periods(const CurveModel& E, unsigned digits) {
  PrecisionGuard guard(digits + 20);
  const Real tol = pow10(-static_cast<int>(digits) - 15);
  const Real b2 = to_real(E.b2), b4 = to_real(E.b4), b6 = to_real(E.b6);
  auto roots = cubic_roots(b2, b4, b6, tol);
  const Real PI = pi();
  PeriodData pd;
  pd.digits = digits;
  pd.rectangular = E.disc > 0;
  if (pd.rectangular) {
    std::vector<Real> e;
    for (const auto& r : roots) e.push_back(r.re);
    std::sort(e.begin(), e.end(), [](const Real& x, const Real& y) { return x > y; });
    const Real w1 = PI / agm(sqrt(e[0] - e[2]), sqrt(e[0] - e[1]), tol);
    const Real w2 = PI / agm(sqrt(e[0] - e[2]), sqrt(e[1] - e[2]), tol);
    pd.omega1 = Complex(w1);
    pd.omega2 = Complex(Real(0), w2);
    pd.omega_plus = w1;
    pd.omega_minus = w2;
  } else {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (abs(roots[i].im) < abs(roots[k].im)) k = i;
    }
    const Real e1 = roots[k].re;
    const Real a = 3 * e1 + b2 / 4;
    const Real b = sqrt(3 * e1 * e1 + b2 * e1 / 2 + b4 / 2);
    const Real w1 = 2 * PI / agm(2 * sqrt(b), sqrt(2 * b + a), tol);
    const Real y = PI / agm(2 * sqrt(b), sqrt(2 * b - a), tol);
    pd.omega1 = Complex(w1);
    pd.omega2 = Complex(-w1 / 2, y);
    pd.omega_plus = w1;
    pd.omega_minus = 2 * y;
  }
  pd.error = pow10(-static_cast<int>(digits) - 10);
  if (!(pd.omega_plus > 0) || !(pd.omega_minus > 0)) {
    throw Error(ErrorKind::PrecisionUnreachable, "period computation did not converge");
  }
  return pd;
}

Complex gauss_sum(const DirichletCharacter& chi, unsigned digits) {
  PrecisionGuard guard(digits + 10);
  const Real PI = pi();
  const u64 c = chi.modulus();
  Complex s;
  for (u64 a = 1; a <= c; ++a) {
    auto t = chi.exponent_at(static_cast<i64>(a));
    if (!t) continue;
    const Real theta = 2 * PI * (Real(*t) / chi.order() + Real(a) / c);
    s = s + Complex::expi(theta);
  }
  return s;
}

namespace {

struct Series {
  Complex value;
  Real tail;
};

// sum_{n <= M} coef_n / n * exp(-2 pi n x) with coef_n = zeta^{t(n)} a_n.
Series smoothed_sum(const std::vector<long>& an, const std::vector<Complex>& chi_n, const Real& x,
                    std::size_t M) {
  const Real r = exp(-2 * pi() * x);
  Real rn = 1;
  Complex s;
  for (std::size_t n = 1; n <= M; ++n) {
    rn *= r;
    if (an[n] == 0) continue;
    s = s + chi_n[n] * (rn * an[n] / n);
  }
  Series out;
  out.value = s;
  const Real rm = pow(r, static_cast<long>(M + 1));
  out.tail = rm / (1 - r);
  return out;
}

std::size_t terms_for(const Real& x, unsigned digits) {
  // exp(-2 pi x M) < 10^-(digits + 5)
  const double xd = x.convert_to<double>();
  return static_cast<std::size_t>(std::ceil((digits + 5) * std::log(10.0) / (2 * M_PI * xd))) + 10;
}

}  // namespace

Approx twisted_l_value(const CurveModel& E, const DirichletCharacter& chi_in, int eps, unsigned digits) {
  if (eps != 1 && eps != -1) throw Error(ErrorKind::InvalidArgument, "root number must be +-1");
  const DirichletCharacter chi = chi_in.primitive();
  const u64 c = chi.modulus();
  if (nt::gcd(c, E.conductor) != 1) {
    throw Error(ErrorKind::NotCoprime, "character conductor shares a factor with N");
  }
  const double sqrtQ = std::sqrt(static_cast<double>(E.conductor)) * static_cast<double>(c);
  const double t2 = 1.15;
  const std::size_t M = terms_for(Real(1.0 / (t2 * sqrtQ)), digits);
  if (M > 50000000) throw Error(ErrorKind::ConductorTooLarge, "L-series needs " + std::to_string(M) + " terms");
  PrecisionGuard guard(working_digits(digits, M));
  const Real PI = pi();
  ApTable aps(E, M);
  std::vector<Complex> zeta(chi.order());
  for (u64 j = 0; j < chi.order(); ++j) zeta[j] = Complex::expi(2 * PI * Real(j) / chi.order());
  std::vector<Complex> chi_n(M + 1), chibar_n(M + 1);
  for (std::size_t n = 1; n <= M; ++n) {
    auto t = chi.exponent_at(static_cast<i64>(n % c));
    if (!t) continue;
    chi_n[n] = zeta[*t];
    chibar_n[n] = zeta[(chi.order() - *t) % chi.order()];
  }
  // w = eps chi(N) tau(chi)^2 / c
  const Complex tau = gauss_sum(chi, digits + 10);
  auto tN = chi.exponent_at(static_cast<i64>(E.conductor % c));
  const Complex w = zeta[*tN] * (tau * tau) * (Real(eps) / Real(c));
  const Real sq = sqrt(Real(E.conductor)) * c;
  auto eval = [&](const Real& t) {
    Series a = smoothed_sum(aps.an_vector(), chi_n, t / sq, M);
    Series b = smoothed_sum(aps.an_vector(), chibar_n, 1 / (t * sq), M);
    Approx r;
    r.value = a.value + w * b.value;
    r.error = a.tail + b.tail;
    return r;
  };
  Approx v1 = eval(Real(1));
  Approx v2 = eval(Real(t2));
  const Real diff = (v1.value - v2.value).abs();
  const Real tol = pow10(-static_cast<int>(digits));
  if (diff > tol) {
    throw Error(ErrorKind::PrecisionUnreachable,
                "L-series depends on the cutoff (difference " + diff.str(6, std::ios_base::scientific) +
                    "); wrong root number?");
  }
  v1.error = std::max(v1.error, diff) + tol / 100;
  return v1;
}

int root_number(const CurveModel& E, unsigned digits) {
  const double sqrtN = std::sqrt(static_cast<double>(E.conductor));
  const std::size_t M = terms_for(Real(1.0 / (1.3 * sqrtN)), digits);
  PrecisionGuard guard(working_digits(digits, M));
  ApTable aps(E, M);
  std::vector<Complex> one(M + 1, Complex(Real(1)));
  const Real sq = sqrt(Real(E.conductor));
  auto S = [&](const Real& t, int w) {
    return smoothed_sum(aps.an_vector(), one, t / sq, M).value.re +
           w * smoothed_sum(aps.an_vector(), one, 1 / (t * sq), M).value.re;
  };
  const Real tol = pow10(-static_cast<int>(digits) / 2);
  std::vector<int> ok;
  for (int w : {1, -1}) {
    if (abs(S(Real("1.1"), w) - S(Real("1.3"), w)) < tol) ok.push_back(w);
  }
  if (ok.size() != 1) throw Error(ErrorKind::PrecisionUnreachable, "root number not determined");
  return ok[0];
}

Approx period_integral(const CurveModel& E, i64 a, u64 c, unsigned digits) {
  if (c == 0 || c % E.conductor != 0) throw Error(ErrorKind::InvalidArgument, "N must divide c");
  const u64 ar = nt::reduce(a, c);
  auto dinv = nt::inverse_mod(ar, c);
  if (!dinv && c > 1) throw Error(ErrorKind::NotCoprime, "gcd(a, c) must be 1");
  const u64 d = c == 1 ? 0 : *dinv;
  const std::size_t M = terms_for(Real(1.0 / static_cast<double>(c)), digits);
  PrecisionGuard guard(working_digits(digits, M));
  const Real PI = pi();
  ApTable aps(E, M);
  const Real r = exp(-2 * PI / Real(c));
  Real rn = 1;
  Complex s;
  for (std::size_t n = 1; n <= M; ++n) {
    rn *= r;
    const long an = aps.an(n);
    if (an == 0) continue;
    const u64 k1 = nt::mulmod(n % c, ar, c), k2 = nt::mulmod(n % c, (c - d) % c, c);
    const Complex z = Complex::expi(2 * PI * Real(k1) / c) - Complex::expi(2 * PI * Real(k2) / c);
    s = s + z * (rn * an / n);
  }
  Approx out;
  out.value = s;
  out.error = 2 * pow(r, static_cast<long>(M + 1)) / (1 - r);
  return out;
}

std::optional<mpq_class> reconstruct_rational(const Real& x, const Real& tol, std::uint64_t bound) {
  // Convergents h/k of x.
  mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
  Real y = x;
  for (int iter = 0; iter < 200; ++iter) {
    const Real fl = floor(y);
    mpz_class a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDN);
    const mpz_class hn = a * h_prev + h, kn = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = hn;
    k_prev = kn;
    if (k_prev > bound) return std::nullopt;
    const mpq_class cand(h_prev, k_prev);
    const Real approx = to_real(h_prev) / to_real(k_prev);
    if (abs(approx - x) < tol) {
      mpq_class q = cand;
      q.canonicalize();
      return q;
    }
    const Real frac = y - fl;
    if (frac == 0) return std::nullopt;
    y = 1 / frac;
  }
  return std::nullopt;
}

NormalizationReport normalization_scales(const ManinSymbolSpace& space, const EigenDuals& duals,
                                         const CurveModel& E, int eps, unsigned digits,
                                         std::uint64_t denominator_bound) {
  const auto phi_plus = integral_functional(space, duals.plus);
  const auto phi_minus = integral_functional(space, duals.minus);
  SymbolEvaluator raw(space.p1_shared(), phi_plus, phi_minus, 1, 1);
  const PeriodData pd = periods(E, digits);
  PrecisionGuard guard(digits + 10);
  const u64 N = E.conductor;
  // (raw pairing, numerical value) pairs per sign.
  std::vector<std::pair<std::int64_t, Real>> plus, minus;
  {
    const std::int64_t r0 = raw.raw(0, 1, 1);
    if (r0 != 0) {
      DirichletCharacter triv = DirichletCharacter::trivial(1);
      Approx L = twisted_l_value(E, triv, eps, digits);
      plus.push_back({r0, L.value.re / pd.omega_plus});
    }
  }
  for (u64 k = 1; k <= 6 && (plus.size() < 4 || minus.size() < 4); ++k) {
    const u64 c = k * N;
    for (u64 a = 1; a < c; ++a) {
      if (nt::gcd(a, c) != 1) continue;
      const std::int64_t rp = raw.raw(static_cast<i64>(a), c, 1);
      const std::int64_t rm = raw.raw(static_cast<i64>(a), c, -1);
      if (rp == 0 && rm == 0) continue;
      Approx lam = period_integral(E, static_cast<i64>(a), c, digits);
      if (rp != 0) plus.push_back({rp, lam.value.re / pd.omega_plus});
      if (rm != 0) minus.push_back({rm, lam.value.im / pd.omega_minus});
    }
  }
  const Real tol = pow10(-static_cast<int>(digits) / 2);
  NormalizationReport rep;
  rep.max_residual = 0;
  auto solve = [&](const std::vector<std::pair<std::int64_t, Real>>& pts, const char* name) {
    if (pts.empty()) {
      throw Error(ErrorKind::NormalizationMismatch, std::string("no nonzero test symbol for sign ") + name);
    }
    auto fit = [&](std::size_t parity) -> std::optional<mpq_class> {
      std::size_t best = pts.size();
      for (std::size_t i = parity; i < pts.size(); i += 2) {
        if (best == pts.size() || std::llabs(pts[i].first) > std::llabs(pts[best].first)) best = i;
      }
      if (best == pts.size()) return std::nullopt;
      return reconstruct_rational(pts[best].second / pts[best].first, tol, denominator_bound);
    };
    auto s0 = fit(0);
    if (!s0) throw Error(ErrorKind::NormalizationMismatch, std::string("no small-height scale for sign ") + name);
    if (pts.size() > 1) {
      auto s1 = fit(1);
      if (!s1 || *s1 != *s0) {
        throw Error(ErrorKind::NormalizationMismatch,
                    std::string("disjoint test sets disagree for sign ") + name);
      }
    }
    const Real sc = to_real(s0->get_num()) / to_real(s0->get_den());
    for (const auto& [r, v] : pts) {
      const Real res = abs(sc * r - v);
      if (res > tol) {
        throw Error(ErrorKind::NormalizationMismatch,
                    std::string("test symbol off by ") + res.str(6, std::ios_base::scientific) + " for sign " + name);
      }
      rep.max_residual = std::max(rep.max_residual, res);
    }
    return *s0;
  };
  rep.scale_plus = solve(plus, "+");
  rep.scale_minus = solve(minus, "-");
  rep.points_plus = plus.size();
  rep.points_minus = minus.size();
  return rep;
}

SymbolEvaluator build_evaluator(const CurveModel& E, int eps, std::uint64_t p, unsigned digits) {
  auto space = ManinSymbolSpace::build(E.conductor);
  ApTable aps(E, 1000);
  auto duals = cut_eigenspace(space, aps);
  auto rep = normalization_scales(space, duals, E, eps, digits);
  return SymbolEvaluator(space.p1_shared(), integral_functional(space, duals.plus),
                         integral_functional(space, duals.minus), rep.scale_plus, rep.scale_minus, p);
}

BirchResult birch_consistency(const CurveModel& E, const DirichletCharacter& chi_in, const SymbolEvaluator& ev,
                              int eps, unsigned digits) {
  const DirichletCharacter chi = chi_in.primitive();
  const u64 c = chi.modulus();
  const u64 order = chi.order();
  const int s = chi.parity();
  BirchResult br;
  br.exact.assign(order, mpq_class(0));
  if (c == 1) {
    br.exact[0] = ev.evaluate(0, 1, 1);
  } else {
    for (u64 a = 1; a < c; ++a) {
      auto t = chi.exponent_at(static_cast<i64>(a));
      if (!t) continue;
      br.exact[(order - *t) % order] += ev.evaluate(static_cast<i64>(a), c, s);
    }
  }
  const PeriodData pd = periods(E, digits);
  Approx L = twisted_l_value(E, chi, eps, digits);
  PrecisionGuard guard(digits + 10);
  const Real PI = pi();
  for (u64 j = 0; j < order; ++j) {
    if (br.exact[j] == 0) continue;
    const Real q = to_real(br.exact[j].get_num()) / to_real(br.exact[j].get_den());
    br.exact_embedded = br.exact_embedded + Complex::expi(2 * PI * Real(j) / order) * q;
  }
  br.l_value = L.value;
  br.gauss_conj = gauss_sum(chi.conj(), digits);
  const Complex omega = s > 0 ? Complex(pd.omega_plus) : Complex(Real(0), pd.omega_minus);
  br.analytic = br.gauss_conj * L.value / omega;
  br.analytic_inverse_gauss = L.value / (br.gauss_conj * omega);
  br.residual = (br.exact_embedded - br.analytic).abs();
  br.residual_inverse_gauss = (br.exact_embedded - br.analytic_inverse_gauss).abs();
  br.pass = br.residual < pow10(-static_cast<int>(digits) / 2);
  return br;
}

}  // namespace kurihara::analytic
