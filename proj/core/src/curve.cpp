#include "kurihara/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include <json.hpp>

#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"
#include "kurihara/poly.hpp"

namespace kurihara {

using nt::i64;
using nt::u64;

namespace {

struct Invariants {
  mpz_class b2, b4, b6, b8, c4, c6, disc;
};

Invariants invariants(const std::array<mpz_class, 5>& a) {
  const mpz_class &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  Invariants v;
  v.b2 = a1 * a1 + 4 * a2;
  v.b4 = a1 * a3 + 2 * a4;
  v.b6 = a3 * a3 + 4 * a6;
  v.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  v.c4 = v.b2 * v.b2 - 24 * v.b4;
  v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
  v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 + 9 * v.b2 * v.b4 * v.b6;
  return v;
}

constexpr int kInfVal = 1 << 20;

int val(const mpz_class& x, u64 p) { return x == 0 ? kInfVal : nt::valuation(x, p); }

bool divides(u64 p, const mpz_class& x) { return mpz_divisible_ui_p(x.get_mpz_t(), p) != 0; }

mpz_class modp(const mpz_class& x, u64 p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return r;
}

mpz_class inv_mod(const mpz_class& x, u64 p) {
  mpz_class r, m(static_cast<unsigned long>(p)), xr = modp(x, p);
  if (mpz_invert(r.get_mpz_t(), xr.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorKind::InvalidArgument, "tate: non-invertible residue");
  }
  return r;
}

void transform(std::array<mpz_class, 5>& a, const mpz_class& r, const mpz_class& s,
               const mpz_class& t) {
  const mpz_class a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
  a[0] = a1 + 2 * s;
  a[1] = a2 - s * a1 + 3 * r - s * s;
  a[2] = a3 + r * a1 + 2 * t;
  a[3] = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
  a[4] = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
}

// Number of distinct roots mod p of the polynomial with the given
// coefficients (constant term first).
int count_roots(std::vector<mpz_class> coeffs, u64 p) {
  poly::ZPoly z(coeffs.begin(), coeffs.end());
  poly::FpPoly f = poly::to_fp(z, p);
  if (f.empty()) return static_cast<int>(std::min<u64>(p, 1u << 30));
  if (f.size() == 1) return 0;
  if (p < 2000) {
    int n = 0;
    for (u64 x = 0; x < p; ++x) {
      u64 v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = nt::addmod(nt::mulmod(v, x, p), f[i], p);
      if (v == 0) ++n;
    }
    return n;
  }
  f = poly::fp_monic(f, p);
  poly::FpPoly xp = poly::fp_powmod(poly::FpPoly{0, 1}, mpz_class(static_cast<unsigned long>(p)), f, p);
  poly::FpPoly g = poly::fp_gcd(f, poly::fp_sub(xp, poly::FpPoly{0, 1}, p), p);
  return static_cast<int>(g.size()) - 1;
}

bool has_root(std::vector<mpz_class> coeffs, u64 p) { return count_roots(std::move(coeffs), p) > 0; }

}  // namespace

LocalData tate_local_data(const std::array<mpz_class, 5>& a_in, u64 p, bool* minimal) {
  std::array<mpz_class, 5> a = a_in;
  if (minimal) *minimal = true;
  const mpz_class P(static_cast<unsigned long>(p));
  const mpz_class half = p == 2 ? mpz_class(0) : mpz_class(static_cast<unsigned long>((p + 1) / 2));
  for (;;) {
    Invariants v = invariants(a);
    if (v.disc == 0) throw Error(ErrorKind::SingularModel, "discriminant is zero");
    LocalData ld;
    ld.prime = p;
    const int n = val(v.disc, p);
    ld.disc_valuation = n;
    if (n == 0) {
      ld.kodaira = "I0";
      return ld;
    }
    // Move the singular point to (0, 0).
    mpz_class r, t;
    if (p == 2) {
      if (divides(2, v.b2)) {
        r = modp(a[3], 2);
        t = modp(r * (1 + a[1] + a[3]) + a[4], 2);
      } else {
        r = modp(a[2], 2);
        t = modp(r + a[3], 2);
      }
    } else if (p == 3) {
      r = divides(3, v.b2) ? modp(-v.b6, 3) : modp(-v.b2 * v.b4, 3);
      t = modp(a[0] * r + a[2], 3);
    } else {
      if (divides(p, v.c4)) {
        r = modp(-inv_mod(12, p) * v.b2, p);
      } else {
        r = modp(-inv_mod(12 * v.c4, p) * (v.c6 + v.b2 * v.c4), p);
      }
      t = modp(-half * (a[0] * r + a[2]), p);
    }
    transform(a, r, 0, t);
    v = invariants(a);

    if (!divides(p, v.c4)) {
      const bool split = has_root({-a[1], a[0], 1}, p);
      ld.conductor_exponent = 1;
      ld.split = split ? 1 : -1;
      ld.tamagawa = split ? n : (n % 2 == 0 ? 2 : 1);
      ld.kodaira = "I" + std::to_string(n);
      return ld;
    }
    if (val(a[4], p) < 2) {
      ld.conductor_exponent = n;
      ld.kodaira = "II";
      return ld;
    }
    if (val(v.b8, p) < 3) {
      ld.conductor_exponent = n - 1;
      ld.tamagawa = 2;
      ld.kodaira = "III";
      return ld;
    }
    if (val(v.b6, p) < 3) {
      ld.conductor_exponent = n - 2;
      ld.tamagawa = has_root({-(a[4] / (P * P)), a[2] / P, 1}, p) ? 3 : 1;
      ld.kodaira = "IV";
      return ld;
    }
    // Now p | a1, a2; p^2 | a3, a4; p^3 | a6.
    mpz_class s;
    if (p == 2) {
      s = modp(a[1], 2);
      t = 2 * modp(a[4] / 4, 2);
    } else {
      s = -a[0] * half;
      t = -a[2] * half;
    }
    transform(a, 0, s, t);
    const mpz_class b = a[1] / P, c = a[3] / (P * P), d = a[4] / (P * P * P);
    const mpz_class w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    const mpz_class x = 3 * c - b * b;
    if (!divides(p, w)) {
      ld.conductor_exponent = n - 4;
      ld.tamagawa = 1 + count_roots({d, c, b, 1}, p);
      ld.kodaira = "I0*";
      return ld;
    }
    if (!divides(p, x)) {
      // Double root: move it to 0.
      if (p == 2) {
        r = c;
      } else if (p == 3) {
        r = b * c;
      } else {
        r = (b * c - 9 * d) * inv_mod(2 * x, p);
      }
      r = P * modp(r, p);
      transform(a, r, 0, 0);
      int m = 1;
      mpz_class mx = P * P, my = P * P;
      int cp = 0;
      while (cp == 0) {
        mpz_class xa2 = a[1] / P, xa3 = a[2] / my, xa4 = a[3] / (P * mx), xa6 = a[4] / (mx * my);
        if (!divides(p, xa3 * xa3 + 4 * xa6)) {
          cp = has_root({-xa6, xa3, 1}, p) ? 4 : 2;
          break;
        }
        t = p == 2 ? mpz_class(my * xa6) : mpz_class(my * modp(-xa3 * half, p));
        transform(a, 0, 0, t);
        my *= P;
        ++m;
        xa2 = a[1] / P;
        xa3 = a[2] / my;
        xa4 = a[3] / (P * mx);
        xa6 = a[4] / (mx * my);
        if (!divides(p, xa4 * xa4 - 4 * xa2 * xa6)) {
          cp = has_root({xa6, xa4, xa2}, p) ? 4 : 2;
          break;
        }
        r = p == 2 ? mpz_class(mx * modp(xa6 * xa2, 2))
                   : mpz_class(mx * modp(-xa4 * inv_mod(2 * xa2, p), p));
        transform(a, r, 0, 0);
        mx *= P;
        ++m;
      }
      ld.conductor_exponent = n - m - 4;
      ld.tamagawa = cp;
      ld.kodaira = "I" + std::to_string(m) + "*";
      return ld;
    }
    // Triple root: move it to 0.
    const mpz_class rp = p == 3 ? mpz_class(-d) : mpz_class(-b * inv_mod(3, p));
    r = P * modp(rp, p);
    transform(a, r, 0, 0);
    const mpz_class x3 = a[2] / (P * P), x6 = a[4] / (P * P * P * P);
    if (!divides(p, x3 * x3 + 4 * x6)) {
      ld.conductor_exponent = n - 6;
      ld.tamagawa = has_root({-x6, x3, 1}, p) ? 3 : 1;
      ld.kodaira = "IV*";
      return ld;
    }
    t = p == 2 ? mpz_class(x6) : mpz_class(x3 * half);
    t = -P * P * t;
    transform(a, 0, 0, t);
    if (val(a[3], p) < 4) {
      ld.conductor_exponent = n - 7;
      ld.tamagawa = 2;
      ld.kodaira = "III*";
      return ld;
    }
    if (val(a[4], p) < 6) {
      ld.conductor_exponent = n - 8;
      ld.kodaira = "II*";
      return ld;
    }
    // Non-minimal at p: scale down and start over.
    if (minimal) *minimal = false;
    mpz_class pi = P;
    for (int i : {0, 1, 2, 3, 4}) {
      const int w_i = i == 4 ? 6 : i + 1;
      mpz_class pw;
      mpz_pow_ui(pw.get_mpz_t(), P.get_mpz_t(), static_cast<unsigned long>(w_i));
      a[i] /= pw;
    }
  }
}

namespace {

std::vector<u64> prime_divisors(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  std::vector<u64> out;
  for (u64 q : nt::primes_up_to(100000)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      out.push_back(q);
      while (mpz_divisible_ui_p(n.get_mpz_t(), q)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
    }
  }
  if (n == 1) return out;
  if (!mpz_fits_ulong_p(n.get_mpz_t())) {
    throw Error(ErrorKind::ConductorTooLarge,
                "discriminant cofactor " + n.get_str() + " too large to factor");
  }
  for (auto [q, e] : nt::factor(n.get_ui())) out.push_back(q);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CurveModel CurveModel::from_ainvs(const std::array<long, 5>& ainvs, std::string label) {
  CurveModel E;
  E.label = std::move(label);
  for (int i = 0; i < 5; ++i) E.a[i] = ainvs[i];
  Invariants v = invariants(E.a);
  if (v.disc == 0) throw Error(ErrorKind::SingularModel, "discriminant is zero");
  E.b2 = v.b2;
  E.b4 = v.b4;
  E.b6 = v.b6;
  E.b8 = v.b8;
  E.c4 = v.c4;
  E.c6 = v.c6;
  E.disc = v.disc;
  E.conductor = 1;
  for (u64 q : prime_divisors(v.disc)) {
    bool minimal = true;
    LocalData ld = tate_local_data(E.a, q, &minimal);
    if (!minimal) {
      throw Error(ErrorKind::NonMinimalModel, "model is not minimal at " + std::to_string(q));
    }
    for (int i = 0; i < ld.conductor_exponent; ++i) E.conductor *= q;
    E.bad_primes.push_back(ld);
  }
  return E;
}

bool CurveModel::has_good_reduction(u64 l) const {
  const LocalData* ld = local(l);
  return ld == nullptr || ld->conductor_exponent == 0;
}

const LocalData* CurveModel::local(u64 l) const {
  for (const auto& ld : bad_primes) {
    if (ld.prime == l) return &ld;
  }
  return nullptr;
}

std::array<long, 5> CurveModel::ainvs_long() const {
  std::array<long, 5> out{};
  for (int i = 0; i < 5; ++i) out[i] = a[i].get_si();
  return out;
}

// ---------------------------------------------------------------------------
// Point counting.

std::uint64_t count_points_exhaustive(const CurveModel& E, u64 l) {
  std::array<u64, 5> a{};
  for (int i = 0; i < 5; ++i) a[i] = modp(E.a[i], l).get_ui();
  if (l == 2) {
    u64 n = 1;
    for (u64 x = 0; x < 2; ++x) {
      for (u64 y = 0; y < 2; ++y) {
        u64 lhs = (y * y + a[0] * x * y + a[2] * y) % 2;
        u64 rhs = (x * x * x + a[1] * x * x + a[3] * x + a[4]) % 2;
        if (lhs == rhs) ++n;
      }
    }
    return n;
  }
  std::vector<signed char> chi(l, -1);
  chi[0] = 0;
  for (u64 y = 1; y < l; ++y) chi[y * y % l] = 1;
  u64 n = 1;
  for (u64 x = 0; x < l; ++x) {
    const u64 h = (a[0] * x + a[2]) % l;
    const u64 f = (((x + a[1]) % l * x % l + a[3]) % l * x % l + a[4]) % l;
    const u64 D = (h * h + 4 * f) % l;
    n += static_cast<u64>(1 + chi[D]);
  }
  return n;
}

namespace {

struct Pt {
  u64 x = 0, y = 0;
  bool inf = true;
  bool operator==(const Pt& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
  bool operator<(const Pt& o) const {
    if (inf != o.inf) return inf;
    return x != o.x ? x < o.x : y < o.y;
  }
};

struct ShortCurve {
  u64 l, A, B;

  Pt neg(const Pt& P) const { return P.inf ? P : Pt{P.x, P.y == 0 ? 0 : l - P.y, false}; }

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lam;
    if (P.x == Q.x) {
      if (nt::addmod(P.y, Q.y, l) == 0) return Pt{};
      const u64 num = nt::addmod(nt::mulmod(3, nt::mulmod(P.x, P.x, l), l), A, l);
      lam = nt::mulmod(num, *nt::inverse_mod(nt::mulmod(2, P.y, l), l), l);
    } else {
      lam = nt::mulmod(nt::submod(Q.y, P.y, l), *nt::inverse_mod(nt::submod(Q.x, P.x, l), l), l);
    }
    const u64 x3 = nt::submod(nt::submod(nt::mulmod(lam, lam, l), P.x, l), Q.x, l);
    const u64 y3 = nt::submod(nt::mulmod(lam, nt::submod(P.x, x3, l), l), P.y, l);
    return Pt{x3, y3, false};
  }

  Pt mul(u64 k, Pt P) const {
    Pt R;
    while (k) {
      if (k & 1) R = add(R, P);
      P = add(P, P);
      k >>= 1;
    }
    return R;
  }

  u64 rhs(u64 x) const {
    return nt::addmod(nt::addmod(nt::mulmod(nt::mulmod(x, x, l), x, l), nt::mulmod(A, x, l), l), B, l);
  }
};

std::optional<u64> sqrt_mod(u64 a, u64 p) {
  if (a == 0) return 0;
  if (nt::powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return nt::powmod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (nt::powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = static_cast<u64>(s), c = nt::powmod(z, q, p), t = nt::powmod(a, q, p),
      r = nt::powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = nt::mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = nt::mulmod(b, b, p);
    m = i;
    c = nt::mulmod(b, b, p);
    t = nt::mulmod(t, c, p);
    r = nt::mulmod(r, b, p);
  }
  return r;
}

Pt random_point(const ShortCurve& C, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, C.l - 1);
  for (;;) {
    const u64 x = dist(rng);
    auto y = sqrt_mod(C.rhs(x), C.l);
    if (!y) continue;
    u64 yy = *y;
    if (rng() & 1) yy = yy == 0 ? 0 : C.l - yy;
    return Pt{x, yy, false};
  }
}

// Some M in [lo, hi] with M*P = O, by baby-step giant-step.
std::optional<u64> find_annihilator(const ShortCurve& C, const Pt& P, u64 lo, u64 hi) {
  const u64 width = hi - lo + 1;
  const u64 s = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(width))));
  std::map<Pt, u64> baby;
  Pt jP;
  for (u64 j = 0; j < s; ++j) {
    baby.emplace(C.neg(jP), j);
    jP = C.add(jP, P);
  }
  const Pt step = C.mul(s, P);
  Pt R = C.mul(lo, P);
  for (u64 i = 0; i <= s; ++i) {
    auto it = baby.find(R);
    if (it != baby.end()) {
      const u64 M = lo + i * s + it->second;
      if (M <= hi) return M;
    }
    R = C.add(R, step);
  }
  return std::nullopt;
}

u64 exact_order(const ShortCurve& C, const Pt& P, u64 M) {
  u64 order = M;
  for (auto [q, e] : nt::factor(M)) {
    for (int i = 0; i < e; ++i) {
      if (C.mul(order / q, P).inf) {
        order /= q;
      } else {
        break;
      }
    }
  }
  return order;
}

ShortCurve short_model(const CurveModel& E, u64 l) {
  const mpz_class A = -27 * E.c4, B = -54 * E.c6;
  return ShortCurve{l, modp(A, l).get_ui(), modp(B, l).get_ui()};
}

}  // namespace

std::uint64_t count_points_bsgs(const CurveModel& E, u64 l) {
  if (l < 5) throw Error(ErrorKind::InvalidArgument, "bsgs needs l >= 5");
  if (divides(l, E.disc)) throw Error(ErrorKind::BadReduction, "bad reduction at " + std::to_string(l));
  const ShortCurve C = short_model(E, l);
  u64 g = 2;
  while (nt::legendre(static_cast<i64>(g), l) != -1) ++g;
  const u64 g2 = nt::mulmod(g, g, l);
  const ShortCurve T{l, nt::mulmod(C.A, g2, l), nt::mulmod(C.B, nt::mulmod(g2, g, l), l)};
  const u64 r = static_cast<u64>(std::floor(2.0 * std::sqrt(static_cast<double>(l))));
  const u64 lo = l + 1 - r, hi = l + 1 + r;
  std::mt19937_64 rng(l * 0x9e3779b97f4a7c15ULL + 17);
  u64 L = 1, Lt = 1;
  for (int iter = 0; iter < 400; ++iter) {
    const bool twist = iter % 2 == 1;
    const ShortCurve& K = twist ? T : C;
    const Pt P = random_point(K, rng);
    const u64 klo = twist ? 2 * l + 2 - hi : lo, khi = twist ? 2 * l + 2 - lo : hi;
    auto M = find_annihilator(K, P, klo, khi);
    if (!M) continue;
    const u64 ord = exact_order(K, P, *M);
    if (twist) {
      Lt = std::lcm(Lt, ord);
    } else {
      L = std::lcm(L, ord);
    }
    u64 found = 0, count = 0;
    for (u64 cand = lo + (L - lo % L) % L; cand <= hi; cand += L) {
      if ((2 * l + 2 - cand) % Lt == 0) {
        found = cand;
        ++count;
      }
    }
    if (count == 1) return found;
  }
  throw Error(ErrorKind::InvalidArgument, "point count did not converge at " + std::to_string(l));
}

long trace_of_frobenius(const CurveModel& E, u64 l) {
  const LocalData* ld = E.local(l);
  if (ld && ld->conductor_exponent > 0) return ld->ap();
  const u64 n = l < 10000 ? count_points_exhaustive(E, l) : count_points_bsgs(E, l);
  return static_cast<long>(l + 1) - static_cast<long>(n);
}

ApTable::ApTable(const CurveModel& E, u64 bound) : bound_(bound) {
  an_.assign(bound + 1, 0);
  is_bad_.assign(bound + 1, false);
  if (bound >= 1) an_[1] = 1;
  std::vector<u64> spf(bound + 1, 0);
  for (u64 i = 2; i <= bound; ++i) {
    if (spf[i]) continue;
    for (u64 j = i; j <= bound; j += i) {
      if (!spf[j]) spf[j] = i;
    }
  }
  for (u64 q = 2; q <= bound; ++q) {
    if (spf[q] != q) continue;
    const long aq = trace_of_frobenius(E, q);
    const bool bad = !E.has_good_reduction(q);
    is_bad_[q] = bad;
    // prime powers
    long prev = 1, cur = aq;
    for (u64 qk = q;;) {
      an_[qk] = cur;
      if (qk > bound / q) break;
      qk *= q;
      const long next = aq * cur - (bad ? 0 : static_cast<long>(q)) * prev;
      prev = cur;
      cur = next;
    }
  }
  for (u64 n = 2; n <= bound; ++n) {
    const u64 q = spf[n];
    u64 m = n, qk = 1;
    while (m % q == 0) {
      m /= q;
      qk *= q;
    }
    if (m != 1) an_[n] = an_[qk] * an_[m];
  }
}

long ApTable::ap(u64 l) const {
  if (l > bound_) throw Error(ErrorKind::InvalidArgument, "prime beyond a_p table bound");
  return an_[l];
}

SylowStructure sylow_p_structure(const CurveModel& E, u64 l, u64 p) {
  if (!E.has_good_reduction(l) || divides(l, E.disc)) {
    throw Error(ErrorKind::BadReduction, "bad reduction at " + std::to_string(l));
  }
  if (l == p) throw Error(ErrorKind::InvalidArgument, "l must differ from p");
  const u64 n = static_cast<u64>(static_cast<long>(l + 1) - trace_of_frobenius(E, l));
  SylowStructure st;
  u64 h = n;
  while (h % p == 0) {
    h /= p;
    ++st.s;
  }
  if (st.s == 0) return st;
  // Full p-torsion needs mu_p in F_l; otherwise the Sylow subgroup is cyclic.
  if ((l - 1) % p != 0 || l < 5) {
    st.e = st.s;
    return st;
  }
  const ShortCurve C = short_model(E, l);
  std::mt19937_64 rng(l * 1000003ULL + p);
  const int samples = static_cast<int>(std::ceil(64.0 / std::log2(static_cast<double>(p))));
  for (int i = 0; i < samples && st.e < st.s; ++i) {
    Pt R = C.mul(h, random_point(C, rng));
    int t = 0;
    while (!R.inf) {
      R = C.mul(p, R);
      ++t;
    }
    st.e = std::max(st.e, t);
  }
  return st;
}

KolyvaginCertificate certify_kolyvagin_prime(const CurveModel& E, const FieldSpec& spec, u64 p,
                                             int k, u64 l) {
  KolyvaginCertificate cert;
  if (!nt::is_prime(l)) {
    cert.rejection = "not prime";
    return cert;
  }
  if (l == p || (spec.c % l == 0 && spec.c > 1) || E.conductor % l == 0) {
    cert.rejection = "bad_prime: l divides c*N*p";
    return cert;
  }
  u64 pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  if ((l - 1) % pk != 0) {
    cert.rejection = "congruence: l != 1 mod p^k";
    return cert;
  }
  if (!splits_completely(spec, l)) {
    cert.rejection = "splitting: l does not split completely in K";
    return cert;
  }
  const SylowStructure st = sylow_p_structure(E, l, p);
  if (st.s != st.e || st.e < k) {
    cert.rejection = "sylow: p-Sylow (s=" + std::to_string(st.s) + ", e=" + std::to_string(st.e) +
                     ") is not cyclic of exponent >= p^k";
    return cert;
  }
  KolyvaginPrimeRecord rec;
  rec.l = l;
  rec.sylow = st;
  const int v = nt::valuation(l - 1, p);
  rec.k_l = std::min(v, st.e);
  rec.eta = nt::primitive_root(l);
  rec.u = l - 1;
  while (rec.u % p == 0) rec.u /= p;
  rec.a_l = trace_of_frobenius(E, l);
  u64 pkl = 1;
  for (int i = 0; i < rec.k_l; ++i) pkl *= p;
  if (nt::reduce(rec.a_l - 2, pkl) != 0) {
    throw Error(ErrorKind::InvalidArgument, "a_l != 2 mod p^k_l at accepted l=" + std::to_string(l));
  }
  cert.record = rec;
  return cert;
}

std::vector<KolyvaginPrimeRecord> find_kolyvagin_primes(const CurveModel& E, const FieldSpec& spec,
                                                        u64 p, int k, std::size_t budget,
                                                        u64 scan_bound, u64 start) {
  if (budget == 0) throw Error(ErrorKind::InvalidArgument, "budget must be positive");
  u64 pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  std::vector<bool> in_h;
  if (spec.c > 1) {
    in_h.assign(spec.c, false);
    for (u64 h : spec.subgroup_elements()) in_h[h] = true;
  }
  std::vector<KolyvaginPrimeRecord> out;
  // l = 1 + j * 2 p^k runs over odd candidates congruent to 1 mod p^k.
  u64 l = 1 + 2 * pk;
  if (start > l) l += (start - l + 2 * pk - 1) / (2 * pk) * (2 * pk);
  for (; l <= scan_bound; l += 2 * pk) {
    if (spec.c > 1 && (spec.c % l == 0 || !in_h[l % spec.c])) continue;
    if (!nt::is_prime(l)) continue;
    auto cert = certify_kolyvagin_prime(E, spec, p, k, l);
    if (cert.record) {
      out.push_back(*cert.record);
      if (out.size() == budget) return out;
    }
  }
  throw Error(ErrorKind::SearchExhausted, "found " + std::to_string(out.size()) + " of " +
                                              std::to_string(budget) + " primes below " +
                                              std::to_string(scan_bound));
}

int tamagawa_number(const CurveModel& E, u64 l) {
  const LocalData* ld = E.local(l);
  return ld ? ld->tamagawa : 1;
}

std::optional<int> euler_factor_valuation(const CurveModel& E, const DirichletCharacter& chi, u64 p,
                                          const PadicQuotient& ring) {
  if (chi.conductor() % p == 0) throw Error(ErrorKind::InvalidArgument, "p divides the conductor of chi");
  const auto prim = chi.primitive();
  auto cp = prim.evaluate(static_cast<i64>(p % prim.modulus()), ring);
  const long ap = trace_of_frobenius(E, p);
  const bool good = E.has_good_reduction(p);
  CyclotomicInteger x = *cp;
  CyclotomicInteger value = ring.one() - x.scale(mpz_class(ap));
  if (good) value += x * x;
  const Exponent v = value.valuation();
  if (v.is_infinite()) return std::nullopt;
  return static_cast<int>(v.value()) - 1;
}

// ---------------------------------------------------------------------------
// Bundled data.

std::string data_directory() {
  if (const char* env = std::getenv("KURIHARA_DATA_DIR")) return env;
#ifdef KURIHARA_BUILD_DATA_DIR
  if (std::filesystem::exists(std::string(KURIHARA_BUILD_DATA_DIR) + "/curves.json")) {
    return KURIHARA_BUILD_DATA_DIR;
  }
#endif
#ifdef KURIHARA_INSTALL_DATA_DIR
  return KURIHARA_INSTALL_DATA_DIR;
#else
  return ".";
#endif
}

CurveModel curve_from_file(const std::string& path, const std::string& label) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open curve file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, path + ": " + e.what());
  }
  const nlohmann::json& list = doc.is_object() && doc.contains("curves") ? doc["curves"] : doc;
  for (const auto& entry : list) {
    if (entry.value("label", std::string()) != label) continue;
    const auto& ai = entry.at("a_invariants");
    std::array<long, 5> a{};
    for (int i = 0; i < 5; ++i) a[i] = ai.at(i).get<long>();
    CurveModel E = CurveModel::from_ainvs(a, label);
    if (entry.contains("conductor") && entry["conductor"].get<u64>() != E.conductor) {
      throw Error(ErrorKind::Config, "conductor mismatch for " + label + ": file says " +
                                         std::to_string(entry["conductor"].get<u64>()) +
                                         ", Tate's algorithm gives " + std::to_string(E.conductor));
    }
    return E;
  }
  throw Error(ErrorKind::Config, "curve " + label + " not found in " + path);
}

CurveModel curve_from_label(const std::string& label) {
  return curve_from_file(data_directory() + "/curves.json", label);
}

}  // namespace kurihara
