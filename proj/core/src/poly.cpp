#include "kurihara/poly.hpp"

#include <algorithm>
#include <random>

#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"

namespace kurihara::poly {

using nt::u64;

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

ZPoly reduce_coeffs(const ZPoly& a, const mpz_class& m) {
  ZPoly c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r(c[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  }
  trim(c);
  return c;
}

namespace {

// Exact division of a by a monic b over Z.
ZPoly exact_div_monic(ZPoly a, const ZPoly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {};
  ZPoly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    mpz_class c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  trim(q);
  return q;
}

}  // namespace

ZPoly cyclotomic(u64 d) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "cyclotomic(0)");
  ZPoly f(d + 1, 0);
  f[0] = -1;
  f[d] = 1;
  for (u64 e : nt::divisors(d)) {
    if (e == d) continue;
    f = exact_div_monic(f, cyclotomic(e));
  }
  return f;
}

FpPoly to_fp(const ZPoly& a, u64 p) {
  FpPoly r(a.size());
  mpz_class pp(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class c;
    mpz_fdiv_r(c.get_mpz_t(), a[i].get_mpz_t(), pp.get_mpz_t());
    r[i] = c.get_ui();
  }
  trim(r);
  return r;
}

ZPoly to_z(const FpPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0;
    u64 y = i < b.size() ? b[i] : 0;
    c[i] = nt::addmod(x, y, p);
  }
  trim(c);
  return c;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0;
    u64 y = i < b.size() ? b[i] : 0;
    c[i] = nt::submod(x, y, p);
  }
  trim(c);
  return c;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = nt::addmod(c[i + j], nt::mulmod(a[i], b[j], p), p);
    }
  }
  trim(c);
  return c;
}

void fp_divmod(const FpPoly& a, const FpPoly& b, u64 p, FpPoly& q, FpPoly& r) {
  if (b.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  r = a;
  trim(r);
  const std::size_t db = b.size() - 1;
  const u64 lead_inv = *nt::inverse_mod(b.back(), p);
  if (r.size() < b.size()) {
    q.clear();
    return;
  }
  q.assign(r.size() - db, 0);
  for (std::size_t i = r.size(); i-- > db;) {
    u64 c = nt::mulmod(r[i], lead_inv, p);
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      r[i - db + j] = nt::submod(r[i - db + j], nt::mulmod(c, b[j], p), p);
    }
  }
  trim(q);
  trim(r);
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly q, r;
  fp_divmod(a, b, p, q, r);
  return r;
}

FpPoly fp_monic(const FpPoly& a, u64 p) {
  if (a.empty()) return a;
  const u64 inv = *nt::inverse_mod(a.back(), p);
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = nt::mulmod(a[i], inv, p);
  return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

FpPoly fp_powmod(const FpPoly& base, const mpz_class& exp, const FpPoly& modulus, u64 p) {
  FpPoly result{1};
  result = fp_mod(result, modulus, p);
  FpPoly b = fp_mod(base, modulus, p);
  const std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = fp_mod(fp_mul(result, result, p), modulus, p);
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = fp_mod(fp_mul(result, b, p), modulus, p);
  }
  return result;
}

void fp_xgcd(const FpPoly& a, const FpPoly& b, u64 p, FpPoly& g, FpPoly& s, FpPoly& t) {
  FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    FpPoly q, r;
    fp_divmod(r0, r1, p, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const u64 inv = *nt::inverse_mod(r0.back(), p);
  auto scale = [&](FpPoly v) {
    for (auto& c : v) c = nt::mulmod(c, inv, p);
    trim(v);
    return v;
  };
  g = scale(r0);
  s = scale(s0);
  t = scale(t0);
}

bool factor_less(const FpPoly& a, const FpPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

namespace {

void edf_split(const FpPoly& f, int degree, u64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n == degree) {
    out.push_back(f);
    return;
  }
  mpz_class pf;
  mpz_ui_pow_ui(pf.get_mpz_t(), p, static_cast<unsigned long>(degree));
  const mpz_class exponent = (pf - 1) / 2;
  std::uniform_int_distribution<u64> coeff(0, p - 1);
  for (;;) {
    FpPoly a(n);
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (a.size() < 2) continue;
    FpPoly b = fp_powmod(a, exponent, f, p);
    b = fp_sub(b, FpPoly{1}, p);
    FpPoly g = fp_gcd(f, b, p);
    const int dg = static_cast<int>(g.size()) - 1;
    if (dg > 0 && dg < n) {
      FpPoly q, r;
      fp_divmod(f, g, p, q, r);
      edf_split(g, degree, p, rng, out);
      edf_split(fp_monic(q, p), degree, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FpPoly> equal_degree_factors(const FpPoly& f, int degree, u64 p) {
  if (p == 2) throw Error(ErrorKind::InvalidArgument, "equal-degree factorization needs odd p");
  std::vector<FpPoly> out;
  if (f.size() <= 1) return out;
  std::mt19937_64 rng(0x5eed0000ULL + p * 31 + static_cast<u64>(degree));
  edf_split(fp_monic(f, p), degree, p, rng, out);
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

std::vector<FpPoly> factor_squarefree(const FpPoly& f_in, u64 p) {
  std::vector<FpPoly> factors;
  FpPoly f = fp_monic(f_in, p);
  FpPoly x{0, 1};
  FpPoly h = x;
  mpz_class pp(static_cast<unsigned long>(p));
  for (int deg = 1; 2 * deg <= static_cast<int>(f.size()) - 1; ++deg) {
    h = fp_powmod(h, pp, f, p);
    FpPoly g = fp_gcd(f, fp_sub(h, x, p), p);
    if (g.size() > 1) {
      auto part = equal_degree_factors(g, deg, p);
      factors.insert(factors.end(), part.begin(), part.end());
      FpPoly q, r;
      fp_divmod(f, g, p, q, r);
      f = fp_monic(q, p);
      h = fp_mod(h, f, p);
    }
  }
  if (f.size() > 1) factors.push_back(f);
  std::sort(factors.begin(), factors.end(), factor_less);
  return factors;
}

ZPoly hensel_lift_factor(const ZPoly& f, const FpPoly& g_mod_p, u64 p, int k) {
  const FpPoly f_p = to_fp(f, p);
  FpPoly h_p, rem;
  fp_divmod(f_p, g_mod_p, p, h_p, rem);
  if (!rem.empty()) throw Error(ErrorKind::InvalidArgument, "hensel: g does not divide f mod p");
  FpPoly gg, s, t;
  fp_xgcd(g_mod_p, h_p, p, gg, s, t);
  if (gg.size() != 1) throw Error(ErrorKind::InvalidArgument, "hensel: factors not coprime");

  ZPoly G = to_z(g_mod_p);
  ZPoly H = to_z(h_p);
  mpz_class pj(static_cast<unsigned long>(p));
  const mpz_class pp(static_cast<unsigned long>(p));
  for (int j = 1; j < k; ++j) {
    const mpz_class next = pj * pp;
    ZPoly diff = sub(f, mul(G, H));
    diff = reduce_coeffs(diff, next);
    ZPoly e_z(diff.size());
    for (std::size_t i = 0; i < diff.size(); ++i) e_z[i] = diff[i] / pj;
    FpPoly e = to_fp(e_z, p);
    FpPoly te = fp_mul(t, e, p);
    FpPoly q, r;
    fp_divmod(te, g_mod_p, p, q, r);
    FpPoly b = fp_add(fp_mul(s, e, p), fp_mul(q, h_p, p), p);
    ZPoly a_z = to_z(r), b_z = to_z(b);
    for (auto& c : a_z) c *= pj;
    for (auto& c : b_z) c *= pj;
    ZPoly G2(std::max(G.size(), a_z.size()), 0), H2(std::max(H.size(), b_z.size()), 0);
    for (std::size_t i = 0; i < G.size(); ++i) G2[i] += G[i];
    for (std::size_t i = 0; i < a_z.size(); ++i) G2[i] += a_z[i];
    for (std::size_t i = 0; i < H.size(); ++i) H2[i] += H[i];
    for (std::size_t i = 0; i < b_z.size(); ++i) H2[i] += b_z[i];
    G = reduce_coeffs(G2, next);
    H = reduce_coeffs(H2, next);
    pj = next;
  }
  G.resize(g_mod_p.size(), 0);
  G.back() = 1;
  return G;
}

}  // namespace kurihara::poly
