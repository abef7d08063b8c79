#include "kurihara/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kurihara/error.hpp"

namespace kurihara::nt {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

i64 gcd_signed(i64 a, i64 b) { return std::gcd(a, b); }

Xgcd xgcd(i64 a, i64 b) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

std::optional<u64> inverse_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    i128 ts = old_s - static_cast<i128>(q) * s;
    old_s = s;
    s = ts;
  }
  if (old_r != 1) return std::nullopt;
  i128 res = old_s % static_cast<i128>(m);
  if (res < 0) res += m;
  return static_cast<u64>(res);
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, g = 1, q = 1, x = 0, ys = 0;
    u64 r = 1;
    const u64 m = 128;
    auto f = [&](u64 v) { return addmod(mulmod(v, v, n), c, n); };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 aa = a % n;
    if (aa == 0) continue;
    if (miller_rabin_witness(n, aa, d, s)) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factor(u64 n) {
  std::vector<std::pair<u64, int>> result;
  if (n <= 1) return result;
  std::vector<u64> primes;
  for (u64 p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!result.empty() && result.back().first == p) {
      ++result.back().second;
    } else {
      result.emplace_back(p, 1);
    }
  }
  return result;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> divs{1};
  for (auto [p, e] : factor(n)) {
    const std::size_t count = divs.size();
    u64 pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

u64 euler_phi(u64 n) {
  u64 result = n;
  for (auto [p, e] : factor(n)) result = result / p * (p - 1);
  return result;
}

int valuation(u64 n, u64 p) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(const mpz_class& n, u64 p) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  mpz_class q = n;
  int v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), p)) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), p);
    ++v;
  }
  return v;
}

u64 primitive_root(u64 prime) {
  if (prime == 2) return 1;
  const auto fac = factor(prime - 1);
  for (u64 g = 2; g < prime; ++g) {
    bool ok = true;
    for (auto [q, e] : fac) {
      if (powmod(g, (prime - 1) / q, prime) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw Error(ErrorKind::NotPrime, "no primitive root modulo " + std::to_string(prime));
}

u64 multiplicative_order(u64 a, u64 m) {
  if (m == 1) return 1;
  if (gcd(a % m, m) != 1) throw Error(ErrorKind::NotCoprime, "order of non-unit");
  u64 order = euler_phi(m);
  for (auto [q, e] : factor(order)) {
    for (int i = 0; i < e; ++i) {
      if (powmod(a, order / q, m) == 1) {
        order /= q;
      } else {
        break;
      }
    }
  }
  return order;
}

int legendre(i64 a, u64 p) {
  u64 r = reduce(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::vector<u64> primes_up_to(u64 bound) {
  std::vector<u64> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (u64 i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

u64 next_prime(u64 n) {
  u64 c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

mpz_class crt(const std::vector<mpz_class>& residues, const std::vector<mpz_class>& moduli) {
  mpz_class x = 0, m = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    mpz_class inv;
    mpz_class mod_i = moduli[i];
    mpz_class m_red = m % mod_i;
    if (mpz_invert(inv.get_mpz_t(), m_red.get_mpz_t(), mod_i.get_mpz_t()) == 0) {
      throw Error(ErrorKind::InvalidArgument, "crt moduli not coprime");
    }
    mpz_class t = ((residues[i] - x) % mod_i) * inv % mod_i;
    if (t < 0) t += mod_i;
    x += m * t;
    m *= mod_i;
  }
  return x;
}

std::optional<mpq_class> rational_reconstruct(const mpz_class& x, const mpz_class& m,
                                              const mpz_class& num_bound,
                                              const mpz_class& den_bound) {
  mpz_class r0 = m, r1 = x % m;
  if (r1 < 0) r1 += m;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > num_bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    mpz_class t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  mpz_class num = r1, den = t1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > den_bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace kurihara::nt
