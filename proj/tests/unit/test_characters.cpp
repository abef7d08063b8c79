#include <doctest.h>

#include <complex>
#include <map>
#include <numeric>
#include <set>
#include <random>

#include "kurihara/characters.hpp"
#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"

using namespace kurihara;
using nt::u64;

namespace {

// Order of a character computed from its values as complex numbers.
u64 brute_order(const DirichletCharacter& chi) {
  const double two_pi = 6.283185307179586;
  for (u64 k = 1;; ++k) {
    bool all_one = true;
    for (u64 a = 0; a < chi.modulus(); ++a) {
      auto t = chi.exponent_at(static_cast<std::int64_t>(a));
      if (!t) continue;
      std::complex<double> v = std::polar(1.0, two_pi * static_cast<double>(*t) / chi.order());
      if (std::abs(std::pow(v, static_cast<double>(k)) - 1.0) > 1e-9) all_one = false;
    }
    if (all_one) return k;
  }
}

}  // namespace

TEST_CASE("characters of Q(mu_7)") {
  auto chars = enumerate_characters(FieldSpec::cyclotomic(7));
  REQUIRE(chars.size() == 6);
  std::multiset<u64> orders;
  for (const auto& c : chars) {
    orders.insert(c.order());
    CHECK(brute_order(c) == c.order());
  }
  CHECK(orders == std::multiset<u64>{1, 2, 3, 3, 6, 6});
  CHECK(chars.front().is_trivial());
  // the quadratic character is the Legendre symbol
  for (const auto& c : chars) {
    if (c.order() != 2) continue;
    auto R = PadicQuotient::build(5, 2, 2);
    for (int a = 1; a < 7; ++a) {
      auto v = c.evaluate(a, R);
      REQUIRE(v.has_value());
      CHECK(*v == R.from_int(std::int64_t{nt::legendre(a, 7)}));
    }
    CHECK(*c.evaluate(3, R) == -R.one());
  }
}

TEST_CASE("characters of Q(mu_61)") {
  auto chars = enumerate_characters(FieldSpec::cyclotomic(61));
  REQUIRE(chars.size() == 60);
  int quadratic = 0;
  for (const auto& c : chars) {
    if (c.order() == 2) {
      ++quadratic;
      CHECK(*c.exponent_at(-11) == 1);  // (-11|61) = -1
      CHECK(nt::legendre(-11, 61) == -1);
    }
    CHECK(c.is_primitive() == !c.is_trivial());
  }
  CHECK(quadratic == 1);
}

TEST_CASE("full subgroup gives only the trivial character") {
  auto spec = FieldSpec::from_subgroup(15, {2, 7, 11});
  auto chars = enumerate_characters(spec);
  REQUIRE(chars.size() == spec.d);
  CHECK(spec.d == 1);
  CHECK(chars.front().is_trivial());
  CHECK(chars.front().primitive().conductor() == 1);
}

TEST_CASE("multiplicativity and orthogonality in O_d/p^k") {
  std::mt19937_64 rng(1);
  for (u64 c : {7ULL, 15ULL, 16ULL, 51ULL, 61ULL, 89ULL}) {
    auto spec = FieldSpec::cyclotomic(c);
    auto chars = enumerate_characters(spec);
    u64 e = 1;
    for (const auto& ch : chars) e = std::lcm(e, ch.order());
    u64 p = 5;
    while (e % p == 0 || c % p == 0) p = nt::next_prime(p);
    auto R = PadicQuotient::build(p, 3, e);
    for (int i = 0; i < 50; ++i) {
      std::int64_t a = static_cast<std::int64_t>(rng() % c), b = static_cast<std::int64_t>(rng() % c);
      if (nt::gcd(a, c) != 1 || nt::gcd(b, c) != 1) continue;
      for (const auto& ch : chars) {
        CHECK(*ch.evaluate(a, R) * *ch.evaluate(b, R) == *ch.evaluate(a * b % c, R));
      }
    }
    for (u64 a = 1; a < c; ++a) {
      if (nt::gcd(a, c) != 1) continue;
      auto sum = R.zero();
      for (const auto& ch : chars) sum += *ch.evaluate(static_cast<std::int64_t>(a), R);
      CHECK(sum == R.from_int(std::int64_t(a == 1 ? chars.size() : 0)));
    }
  }
}

TEST_CASE("conductor is minimal") {
  auto chars = enumerate_characters(FieldSpec::cyclotomic(51));
  for (const auto& ch : chars) {
    // trivial on units = 1 mod conductor, and on no proper divisor
    const u64 f = ch.conductor();
    for (u64 a = 1; a < 51; a += f) {
      if (nt::gcd(a, 51) == 1) CHECK(*ch.exponent_at(static_cast<std::int64_t>(a)) == 0);
    }
    for (u64 g : nt::divisors(f)) {
      if (g == f) continue;
      bool trivial = true;
      for (u64 a = 1; a < 51; a += g) {
        if (nt::gcd(a, 51) == 1 && *ch.exponent_at(static_cast<std::int64_t>(a)) != 0) trivial = false;
      }
      CHECK_FALSE(trivial);
    }
    auto prim = ch.primitive();
    CHECK(prim.modulus() == f);
    CHECK(prim.order() == ch.order());
    for (u64 a = 1; a < 51; ++a) {
      if (nt::gcd(a, 51) != 1) continue;
      CHECK(*prim.exponent_at(static_cast<std::int64_t>(a % f)) == *ch.exponent_at(static_cast<std::int64_t>(a)));
    }
  }
}

TEST_CASE("parity") {
  for (const auto& ch : enumerate_characters(FieldSpec::cyclotomic(61))) {
    auto t = *ch.exponent_at(-1);
    CHECK(ch.parity() == (t == 0 ? 1 : -1));
  }
}

TEST_CASE("splits completely") {
  auto Q7 = FieldSpec::cyclotomic(7);
  CHECK(splits_completely(Q7, 29));
  CHECK_FALSE(splits_completely(Q7, 11));
  auto K2 = FieldSpec::from_subgroup(7, {2});  // squares mod 7, index 2
  CHECK(K2.d == 2);
  CHECK(splits_completely(K2, 11));
  // 64237 = 4 mod 61: split in the quadratic subfield only
  CHECK_FALSE(splits_completely(FieldSpec::cyclotomic(61), 64237));
  for (const auto& ch : enumerate_characters(FieldSpec::cyclotomic(61))) {
    if (ch.order() == 2) CHECK(splits_completely(ch.kernel_field(), 64237));
    if (ch.order() == 6) CHECK(splits_completely(ch.kernel_field(), 2528233));
  }
  CHECK_THROWS_AS(splits_completely(Q7, 7), Error);
}

TEST_CASE("pinned order-20 character mod 61 at p=101") {
  CharacterPin pin;
  pin.at = 2;
  pin.residue = 60;
  auto cands = pinned_candidates(61, 20, {pin}, 101);
  REQUIRE(cands.size() == 1);
  auto R = PadicQuotient::build(101, 1, 20);
  CHECK(cands[0].evaluate(2, R)->coeffs()[0] == 60);
}

TEST_CASE("pinned order-8 character mod 51 at p=7 is one Frobenius orbit") {
  CharacterPin sign;
  sign.at = 35;
  sign.residue = -1;
  CharacterPin root;
  root.at = 37;
  root.root_of = {1, 3, 1};
  auto cands = pinned_candidates(51, 8, {sign, root}, 7);
  CHECK(cands.size() == 2);
  auto chi = select_pinned(51, 8, {sign, root}, 7);
  CHECK(chi.order() == 8);
  CHECK(chi.conductor() == 51);
  CHECK((cands[0].pow(7) == cands[1]));
  CharacterPin only_sign = sign;
  CHECK_THROWS_AS(select_pinned(51, 8, {only_sign}, 7), Error);
}
