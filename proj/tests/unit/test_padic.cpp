#include <doctest.h>

#include <random>

#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"
#include "kurihara/padic.hpp"

using namespace kurihara;
using nt::u64;

namespace {

u64 brute_order(u64 a, u64 m) {
  if (m == 1) return 1;
  u64 x = a % m, k = 1;
  while (x != 1) {
    x = x * a % m;
    ++k;
  }
  return k;
}

// Remainder of Phi_d (computed as a product over divisors) by the ring modulus.
bool modulus_divides_cyclotomic(const PadicQuotient& R) {
  // Phi_d(zeta) = 0 iff prod_{e | d, e < d} (zeta^e - 1) * Phi_d(zeta) = zeta^d - 1 = 0 and
  // zeta has exact order d; check exact order through the table-free pow.
  const auto z = R.zeta();
  if (z.pow(R.d()) != R.one()) return false;
  for (auto [q, e] : nt::factor(R.d())) {
    auto w = z.pow(R.d() / q) - R.one();
    if (w.valuation() != Exponent(0)) return false;
  }
  return true;
}

CyclotomicInteger random_element(const PadicQuotient& R, std::mt19937_64& rng) {
  std::vector<mpz_class> c(R.f());
  gmp_randclass gr(gmp_randinit_default);
  gr.seed(static_cast<unsigned long>(rng()));
  for (auto& x : c) x = gr.get_z_range(R.pk());
  return R.from_coeffs(c);
}

}  // namespace

TEST_CASE("build_ring residue degree") {
  CHECK(PadicQuotient::build(5, 2, 6).f() == 2);
  CHECK(PadicQuotient::build(101, 1, 20).f() == 1);
  CHECK(PadicQuotient::build(7, 3, 1).f() == 1);
  for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL}) {
    for (u64 d = 1; d < 40; ++d) {
      if (d % p == 0) continue;
      auto R = PadicQuotient::build(p, 2, d);
      CHECK(static_cast<u64>(R.f()) == brute_order(p, d));
      CHECK(modulus_divides_cyclotomic(R));
    }
  }
}

TEST_CASE("build_ring errors") {
  CHECK_THROWS_AS(PadicQuotient::build(9, 1, 4), Error);
  try {
    PadicQuotient::build(5, 1, 10);
    FAIL("expected RamifiedExtension");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RamifiedExtension);
  }
}

TEST_CASE("order-20 root in Z_101 sits over 60 when raised appropriately") {
  // The residue of zeta_20 mod 101 is a primitive 20th root; 60 is one of them.
  auto R = PadicQuotient::build(101, 1, 20);
  bool found = false;
  for (int e = 1; e < 20; ++e) {
    if (std::gcd(e, 20) != 1) continue;
    if (R.zeta_power(e).coeffs()[0] == 60) found = true;
  }
  CHECK(found);
  CHECK(brute_order(60, 101) == 20);
}

TEST_CASE("valuation") {
  auto R = PadicQuotient::build(5, 2, 6);
  CHECK(R.one().valuation() == Exponent(0));
  CHECK(R.zero().valuation().is_infinite());
  auto R3 = PadicQuotient::build(7, 3, 1);
  CHECK(R3.from_int(std::int64_t{7 * 3}).valuation() == Exponent(1));
  CHECK(R3.from_int(std::int64_t{343}).valuation().is_infinite());
}

TEST_CASE("ring identities") {
  auto R = PadicQuotient::build(5, 2, 6);
  CHECK(R.zeta() * R.zeta_power(5) == R.one());
  CHECK(R.zeta().pow(u64{3}) == -R.one());
  auto R3 = PadicQuotient::build(5, 3, 1);
  auto a = R3.from_int(std::int64_t{6}), b = R3.from_int(std::int64_t{-4});
  CHECK(a * b == R3.from_int(std::int64_t{1 - 25}));
  CHECK_THROWS_AS(R.one() + R3.one(), Error);
}

TEST_CASE("valuation is additive below precision") {
  std::mt19937_64 rng(11);
  for (auto [p, k, d] : {std::tuple<u64, int, u64>{5, 4, 6}, {7, 3, 8}, {11, 3, 5}}) {
    auto R = PadicQuotient::build(p, k, d);
    for (int i = 0; i < 100; ++i) {
      auto x = random_element(R, rng), y = random_element(R, rng);
      mpz_class s1 = static_cast<unsigned long>(nt::powmod(p, rng() % 2, 1ULL << 62));
      x = x.scale(s1);
      auto vx = x.valuation(), vy = y.valuation(), vxy = (x * y).valuation();
      auto sum = vx + vy;
      if (sum < Exponent(k)) {
        CHECK(vxy == sum);
      } else {
        CHECK(vxy.is_infinite());
      }
    }
  }
}

TEST_CASE("Frobenius on the residue field") {
  std::mt19937_64 rng(3);
  for (auto [p, d] : {std::pair<u64, u64>{5, 6}, {7, 8}, {5, 13}, {11, 7}}) {
    auto R = PadicQuotient::build(p, 2, d);
    auto R1 = R.with_precision(1);
    const int f = R.f();
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, f);
    for (int i = 0; i < 10; ++i) {
      auto x = random_element(R, rng);
      CHECK(x.pow(q).reduce_to(R1) == x.reduce_to(R1));
      // x^p equals sum c_i zeta^(i p) mod p
      auto frob = R1.zero();
      auto xr = x.reduce_to(R1);
      for (int j = 0; j < f; ++j) {
        frob += R1.zeta_power(static_cast<std::int64_t>(j * p)).scale(xr.coeffs()[j]);
      }
      CHECK(x.pow(p).reduce_to(R1) == frob);
    }
  }
}

TEST_CASE("inverse and rationals") {
  std::mt19937_64 rng(5);
  auto R = PadicQuotient::build(7, 4, 8);
  for (int i = 0; i < 20; ++i) {
    auto x = random_element(R, rng);
    if (!x.is_unit()) continue;
    CHECK(x * x.inverse() == R.one());
  }
  auto third = R.from_rational(mpq_class(1, 3));
  CHECK(third.scale(3) == R.one());
  CHECK_THROWS_AS(R.from_rational(mpq_class(1, 14)), Error);
}

TEST_CASE("large prime uses multiword residues") {
  auto R = PadicQuotient::build(472558791937ULL, 2, 88);
  CHECK(R.f() == 1);
  CHECK(R.zeta().pow(u64{88}) == R.one());
  CHECK(R.zeta().pow(u64{44}) == -R.one());
}
