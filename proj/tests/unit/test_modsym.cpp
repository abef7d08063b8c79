#include <doctest.h>

#include <random>
#include <set>

#include "kurihara/curve.hpp"
#include "kurihara/error.hpp"
#include "kurihara/modsym.hpp"
#include "kurihara/numtheory.hpp"

using namespace kurihara;
using nt::i64;
using nt::u64;

namespace {

int kronecker_small(i64 a, u64 p) {
  if (p == 2) {
    const i64 r = ((a % 8) + 8) % 8;
    if (r % 2 == 0) return 0;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  return nt::legendre(a, p);
}

// Genus of X_0(N) from the classical formula.
i64 genus_x0(u64 N) {
  i64 mu = static_cast<i64>(N), nu2 = 1, nu3 = 1;
  for (auto [p, e] : nt::factor(N)) {
    mu = mu / static_cast<i64>(p) * static_cast<i64>(p + 1);
    nu2 *= 1 + (p == 2 ? 0 : nt::legendre(-1, p));
    nu3 *= 1 + (p == 3 ? 0 : kronecker_small(-3, p));
  }
  if (N % 4 == 0) nu2 = 0;
  if (N % 9 == 0) nu3 = 0;
  i64 cusps = 0;
  for (u64 d : nt::divisors(N)) cusps += static_cast<i64>(nt::euler_phi(nt::gcd(d, N / d)));
  // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 cusps
  return (12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps) / 12;
}

i64 cusp_count(u64 N) {
  i64 c = 0;
  for (u64 d : nt::divisors(N)) c += static_cast<i64>(nt::euler_phi(nt::gcd(d, N / d)));
  return c;
}

// P^1(Z/N) by brute force: orbits of primitive pairs under scalar units.
std::size_t brute_p1_size(u64 N) {
  std::set<std::pair<u64, u64>> seen;
  std::size_t count = 0;
  for (u64 c = 0; c < N; ++c) {
    for (u64 d = 0; d < N; ++d) {
      if (nt::gcd(nt::gcd(c, d), N) != 1 || seen.count({c, d})) continue;
      ++count;
      for (u64 u = 1; u < N; ++u) {
        if (nt::gcd(u, N) == 1) seen.insert({u * c % N, u * d % N});
      }
    }
  }
  return N == 1 ? 1 : count;
}

}  // namespace

TEST_CASE("P1 size and normalization") {
  for (u64 N : {1ULL, 2ULL, 11ULL, 12ULL, 27ULL, 35ULL, 36ULL, 64ULL, 90ULL}) {
    P1List p1(N);
    CAPTURE(N);
    CHECK(p1.size() == brute_p1_size(N));
    u64 psi = N;
    for (auto [p, e] : nt::factor(N)) psi = psi / p * (p + 1);
    CHECK(p1.size() == psi);
    // Scalar multiples share an index.
    for (u64 c = 0; c < N; ++c) {
      for (u64 d = 0; d < N; ++d) {
        auto i = p1.index(static_cast<i64>(c), static_cast<i64>(d));
        if (nt::gcd(nt::gcd(c, d), N) != 1) {
          if (N > 1) CHECK_FALSE(i);
          continue;
        }
        REQUIRE(i);
        for (u64 u = 2; u < N; ++u) {
          if (nt::gcd(u, N) != 1) continue;
          CHECK(p1.index(static_cast<i64>(u * c), static_cast<i64>(u * d)) == i);
        }
      }
    }
  }
}

TEST_CASE("dimensions match the genus formula") {
  for (u64 N : {1ULL, 11ULL, 14ULL, 27ULL, 35ULL, 37ULL, 43ULL, 60ULL, 64ULL, 97ULL, 121ULL}) {
    auto sp = ManinSymbolSpace::build(N);
    CAPTURE(N);
    CHECK(static_cast<i64>(sp.cuspidal_dimension()) == 2 * genus_x0(N));
    if (N > 1) CHECK(static_cast<i64>(sp.cusp_count()) == cusp_count(N));
    // Full space = cuspidal + Eisenstein (cusps - 1).
    CHECK(static_cast<i64>(sp.dimension()) ==
          2 * genus_x0(N) + std::max<i64>(0, static_cast<i64>(sp.cusp_count()) - 1));
  }
  CHECK(ManinSymbolSpace::build(11).p1().size() == 12);
  CHECK(ManinSymbolSpace::build(11).cuspidal_dimension() == 2);
  CHECK(ManinSymbolSpace::build(35).cuspidal_dimension() == 6);
}

TEST_CASE("Hecke operators commute with each other and with star") {
  auto sp = ManinSymbolSpace::build(35);
  const auto S = sp.star();
  CHECK(S * S == linalg::QMatrix::identity(sp.dimension()));
  std::vector<linalg::QMatrix> T;
  for (u64 q : {2ULL, 3ULL, 11ULL}) T.push_back(sp.hecke(q));
  for (std::size_t i = 0; i < T.size(); ++i) {
    CHECK(T[i] * S == S * T[i]);
    for (std::size_t j = 0; j < T.size(); ++j) CHECK(T[i] * T[j] == T[j] * T[i]);
  }
  CHECK_THROWS_AS(sp.hecke(5), Error);
  // Boundary compatibility: T_q acts on the Eisenstein quotient by q + 1
  // (every cusp of Gamma_0(N) is fixed by T_q up to equivalence for prime q
  // not dividing N when N is squarefree).
  const auto& B = sp.boundary();
  for (u64 q : {2ULL, 3ULL}) {
    CHECK(sp.hecke(q) * B == B.scaled(mpq_class(static_cast<long>(q + 1))));
  }
}

TEST_CASE("T_2 on level 11 has eigenvalue a_2 = -2 on cusp forms") {
  auto E = CurveModel::from_ainvs({0, -1, 1, -10, -20});
  ApTable aps(E, 100);
  auto sp = ManinSymbolSpace::build(11);
  const auto I = linalg::QMatrix::identity(sp.dimension());
  const auto T2 = sp.hecke(2);
  CHECK(linalg::rank(T2 + I.scaled(2)) == sp.dimension() - 2);
  CHECK(linalg::rank(T2 - I.scaled(3)) == sp.dimension() - 1);
  auto duals = cut_eigenspace(sp, aps);
  CHECK(duals.primes_used == std::vector<u64>{2});
}

TEST_CASE("eigenspace errors and the 35a1 split") {
  auto E = CurveModel::from_ainvs({0, 1, 1, 9, 1});
  ApTable aps(E, 200);
  auto sp = ManinSymbolSpace::build(35);
  auto duals = cut_eigenspace(sp, aps);
  CHECK(duals.primes_used.size() >= 1);
  CHECK(duals.primes_used.size() <= 2);
  // Wrong eigenvalues: 35a1 has a_2 = 0, not an eigenvalue at level 11.
  CHECK(aps.ap(2) == 0);
  auto sp11 = ManinSymbolSpace::build(11);
  try {
    cut_eigenspace(sp11, aps);
    FAIL("expected EigenspaceNotOneDimensional");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EigenspaceNotOneDimensional);
  }
}

TEST_CASE("continued-fraction path telescopes") {
  // The j-th edge is (+-q_j : q_(j-1)); the last q_j is the reduced
  // denominator.
  for (i64 m = 1; m < 60; ++m) {
    for (i64 a = 0; a < m; ++a) {
      auto path = manin_path(a, static_cast<u64>(m));
      REQUIRE(!path.empty());
      CHECK(std::abs(path.front().first) == 1);
      CHECK(path.front().second == 0);
      for (std::size_t j = 1; j < path.size(); ++j) {
        CHECK(std::abs(path[j].second) == std::abs(path[j - 1].first));
      }
      const i64 g = nt::gcd_signed(a, m);
      CHECK(std::abs(path.back().first) == m / g);
    }
  }
}

TEST_CASE("Hecke identity on raw symbols") {
  std::mt19937_64 rng(7);
  for (const auto& ai : {std::array<long, 5>{0, -1, 1, -10, -20}, std::array<long, 5>{0, 1, 1, 9, 1},
                         std::array<long, 5>{0, 0, 1, 0, -7}}) {
    auto E = CurveModel::from_ainvs(ai);
    ApTable aps(E, 200);
    auto sp = ManinSymbolSpace::build(E.conductor);
    auto duals = cut_eigenspace(sp, aps);
    SymbolEvaluator ev(sp.p1_shared(), integral_functional(sp, duals.plus),
                       integral_functional(sp, duals.minus), 1, 1);
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 13ULL}) {
      if (E.conductor % q == 0) continue;
      for (int t = 0; t < 40; ++t) {
        const u64 m = 1 + rng() % 300;
        const i64 a = static_cast<i64>(rng() % m);
        for (int s : {1, -1}) {
          i64 lhs = ev.raw(static_cast<i64>(q) * a, m, s);
          for (u64 b = 0; b < q; ++b) lhs += ev.raw(a + static_cast<i64>(b * m), q * m, s);
          CHECK(lhs == aps.ap(q) * ev.raw(a, m, s));
        }
      }
    }
    // Parity and periodicity.
    for (int t = 0; t < 200; ++t) {
      const u64 m = 1 + rng() % 500;
      const i64 a = static_cast<i64>(rng() % (3 * m)) - static_cast<i64>(m);
      CHECK(ev.raw(-a, m, 1) == ev.raw(a, m, 1));
      CHECK(ev.raw(-a, m, -1) == -ev.raw(a, m, -1));
      CHECK(ev.raw(a + static_cast<i64>(m), m, 1) == ev.raw(a, m, 1));
    }
  }
}
