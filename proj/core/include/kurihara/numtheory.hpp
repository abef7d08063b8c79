#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace kurihara::nt {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 powmod(u64 base, u64 exp, u64 m);

/// Least nonnegative residue of a mod m (m > 0).
inline u64 reduce(i64 a, u64 m) {
  i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

u64 gcd(u64 a, u64 b);
i64 gcd_signed(i64 a, i64 b);

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b).
struct Xgcd {
  i64 g, s, t;
};
Xgcd xgcd(i64 a, i64 b);

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<u64> inverse_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

/// Prime factorization as (prime, exponent) pairs sorted by prime.
std::vector<std::pair<u64, int>> factor(u64 n);

std::vector<u64> divisors(u64 n);

u64 euler_phi(u64 n);

/// v_p(n) for n != 0.
int valuation(u64 n, u64 p);
int valuation(const mpz_class& n, u64 p);

/// Least primitive root modulo a prime.
u64 primitive_root(u64 prime);

/// Multiplicative order of a modulo m (gcd(a, m) = 1 required).
u64 multiplicative_order(u64 a, u64 m);

/// Kronecker-style Legendre symbol (a | p) for odd prime p.
int legendre(i64 a, u64 p);

/// Primes up to and including bound.
std::vector<u64> primes_up_to(u64 bound);

u64 next_prime(u64 n);

/// Integer square root (floor).
u64 isqrt(u64 n);

/// Chinese remainder for pairwise coprime moduli.
mpz_class crt(const std::vector<mpz_class>& residues, const std::vector<mpz_class>& moduli);

/// Rational reconstruction of x mod m: returns n/d with |n| <= num_bound,
/// 0 < d <= den_bound and n = d*x (mod m), or nullopt.
std::optional<mpq_class> rational_reconstruct(const mpz_class& x, const mpz_class& m,
                                              const mpz_class& num_bound,
                                              const mpz_class& den_bound);

}  // namespace kurihara::nt
