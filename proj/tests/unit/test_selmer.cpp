#include <doctest.h>

#include <algorithm>
#include <random>

#include "kurihara/characters.hpp"
#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"
#include "kurihara/selmer.hpp"
#include "oracles.hpp"

using namespace kurihara;
using nt::u64;
using oracle::all_abelian_groups;
using oracle::group_of;
using oracle::make_ladder;
using oracle::minor_fitting;

namespace {

const Exponent kInf = Exponent::infinity();

// Degrees of the monic irreducible factors of T^n - 1 over F_p, n small,
// by trial division against every monic polynomial of degree <= n.
std::vector<int> brute_factor_degrees(u64 n, u64 p) {
  using P = std::vector<u64>;  // constant term first
  auto divmod = [&](P a, const P& b) -> std::pair<P, bool> {
    P q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, 0);
    for (std::size_t i = a.size(); i-- >= b.size();) {
      const u64 c = a[i];
      if (c == 0) continue;
      q[i - (b.size() - 1)] = c;
      for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] = (a[i - (b.size() - 1) + j] + p * p - c * b[j] % p) % p;
      if (i == 0) break;
    }
    bool zero = std::all_of(a.begin(), a.end(), [](u64 x) { return x == 0; });
    return {q, zero};
  };
  P f(n + 1, 0);
  f[0] = p - 1;
  f[n] = 1;
  std::vector<int> degs;
  for (u64 d = 1; d < f.size(); ++d) {
    u64 count = 1;
    for (u64 i = 0; i < d; ++i) count *= p;
    for (u64 code = 0; code < count; ++code) {
      P g(d + 1, 0);
      u64 c = code;
      for (u64 i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      while (true) {
        auto [q, ok] = divmod(f, g);
        if (!ok) break;
        degs.push_back(static_cast<int>(d));
        while (q.size() > 1 && q.back() == 0) q.pop_back();
        f = q;
      }
    }
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

std::vector<int> component_degrees(const GroupRingDecomposition& d) {
  std::vector<int> degs;
  for (const auto& c : d.components) degs.push_back(c.degree);
  std::sort(degs.begin(), degs.end());
  return degs;
}

}  // namespace

TEST_CASE("fitting exponents from ladders") {
  SUBCASE("rank one plus a pair") {
    auto L = make_ladder({kInf, 2, kInf, 0}, true, {true, false, true, true});
    auto F = fitting_from_ladder(L);
    CHECK(F.m == std::vector<Exponent>{kInf, 2, 1, 0});
    CHECK(F.exact == std::vector<bool>{false, false, false, true});
    auto rep = selmer_structure(L);
    CHECK(rep.rank == 1);
    CHECK(rep.torsion == std::vector<std::int64_t>{1, 1});
    CHECK(rep.certification == Certification::empirical);
    CHECK(rep.imc == ImcStatus::verified);
  }
  SUBCASE("unit at level 0") {
    auto L = make_ladder({0}, false);
    CHECK(fitting_from_ladder(L).m == std::vector<Exponent>{0});
    auto rep = selmer_structure(L);
    CHECK(rep.rank == 0);
    CHECK(rep.torsion.empty());
    CHECK(rep.certification == Certification::proved_under_hypotheses);
  }
  SUBCASE("non-self-dual (2, 0)") {
    auto L = make_ladder({2, 0}, false, {true, true});
    CHECK(fitting_from_ladder(L).m == std::vector<Exponent>{2, 0});
    auto rep = selmer_structure(L);
    CHECK(rep.rank == 0);
    CHECK(rep.torsion == std::vector<std::int64_t>{2});
    CHECK(rep.certification == Certification::proved_under_hypotheses);
  }
  SUBCASE("self-dual (inf, 0)") {
    auto rep = selmer_structure(make_ladder({kInf, 0}, true));
    CHECK(rep.rank == 1);
    CHECK(rep.torsion.empty());
  }
  SUBCASE("non-self-dual (1, 0)") {
    auto rep = selmer_structure(make_ladder({1, 0}, false));
    CHECK(rep.rank == 0);
    CHECK(rep.torsion == std::vector<std::int64_t>{1});
  }
}

TEST_CASE("ladder errors and verdicts") {
  CHECK_THROWS_AS(selmer_structure(make_ladder({3, kInf, 0}, true)), Error);
  try {
    selmer_structure(make_ladder({3, kInf, 0}, true));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParityViolation);
  }
  try {
    selmer_structure(make_ladder({2, kInf, 1}, false));
    FAIL("expected NotReached");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotReached);
  }
  try {
    fitting_from_ladder(make_ladder({1, 3, 0}, false));
    FAIL("expected InconsistentLadder");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentLadder);
  }

  ThetaLadder empty;
  CHECK(imc_verdict(empty) == ImcStatus::open);
  CHECK(imc_verdict(make_ladder({1, 1, 1}, false, {true, false, false})) == ImcStatus::open);
  CHECK(imc_verdict(make_ladder({kInf, 2, kInf, 0}, true)) == ImcStatus::verified);

  auto [lo, hi] = rank_bounds(make_ladder({kInf, kInf, 1}, true, {true, true, false}));
  CHECK(lo == 2);
  CHECK(hi == 2);
  auto b2 = rank_bounds(make_ladder({kInf, kInf}, false, {true, false}));
  CHECK(b2.first == 1);
  CHECK(!b2.second);
}

TEST_CASE("ladder synthesis round trip over random modules") {
  std::mt19937_64 rng(20240517);
  // Z_5 and its unramified quadratic extension (5 is inert in Q(mu_3)).
  const PadicQuotient rings[] = {PadicQuotient::build(5, 40, 1), PadicQuotient::build(5, 40, 3)};
  REQUIRE(rings[1].f() == 2);
  for (int trial = 0; trial < 500; ++trial) {
    const PadicQuotient& R = rings[trial % 4 < 2 ? 0 : 1];
    const bool self_dual = trial % 2 == 0;
    const int rank = static_cast<int>(rng() % 3);
    const int count = static_cast<int>(rng() % 3);
    std::vector<std::int64_t> tors;
    if (self_dual) {
      for (int j = 0; j < count; ++j) {
        const auto a = 1 + static_cast<std::int64_t>(rng() % 4);
        tors.insert(tors.end(), {a, a});
      }
    } else {
      for (int j = 0; j < 2 * count; ++j) tors.push_back(1 + static_cast<std::int64_t>(rng() % 5));
    }
    const auto fitt = minor_fitting(R, rank, tors);

    // The ladder the theorems predict: Theta_i = Fitt_i, except that in the
    // self-dual case the levels of the wrong parity vanish.
    std::vector<Exponent> n;
    for (std::size_t i = 0; i < fitt.size(); ++i) {
      const bool wrong_parity = self_dual && i >= static_cast<std::size_t>(rank) && (i - rank) % 2 == 1;
      n.push_back(wrong_parity ? kInf : fitt[i]);
    }
    auto L = make_ladder(n, self_dual);
    const auto rep = selmer_structure(L);
    std::sort(tors.rbegin(), tors.rend());
    CHECK(rep.rank == rank);
    CHECK(rep.torsion == tors);
    CHECK(rep.fitting == fitt);
    CHECK(fitting_from_ladder(L).m == fitt);
  }
}

TEST_CASE("group ring idempotents for small abelian groups") {
  const auto groups = all_abelian_groups(30);
  CHECK(groups.size() > 30);
  std::size_t tested = 0;
  for (u64 p : {5ULL, 7ULL, 101ULL}) {
    for (const auto& orders : groups) {
      GroupDescriptor G = group_of(orders);
      if (G.order() % p == 0) {
        CHECK_THROWS_AS(decompose_group_ring(G, p, 3), Error);
        continue;
      }
      auto d = decompose_group_ring(G, p, 3);
      ++tested;
      GroupRingElement sum(G, d.ring);
      std::size_t total = 0;
      for (std::size_t i = 0; i < d.components.size(); ++i) {
        const auto& ei = d.components[i].idempotent;
        total += d.components[i].orbit.size();
        CHECK(static_cast<std::size_t>(d.components[i].degree) == d.components[i].orbit.size());
        sum = sum + ei;
        CHECK(ei * ei == ei);
        for (std::size_t j = i + 1; j < d.components.size(); ++j) {
          CHECK((ei * d.components[j].idempotent).is_zero());
        }
        if (d.components[i].rational_idempotent) {
          GroupRingElement r(G, d.ring);
          for (std::size_t g = 0; g < G.order(); ++g) r[g] = d.ring.from_rational((*d.components[i].rational_idempotent)[g]);
          CHECK(r == ei);
        }
      }
      CHECK(total == G.order());
      CHECK(sum == GroupRingElement::basis(G, d.ring, 0));
    }
  }
  CHECK(tested > 60);
}

TEST_CASE("component degrees match factorisation of T^n - 1") {
  auto d = decompose_group_ring(group_of({6}), 5, 1);
  CHECK(component_degrees(d) == std::vector<int>{1, 1, 2, 2});
  CHECK(brute_factor_degrees(6, 5) == std::vector<int>{1, 1, 2, 2});
  for (u64 n : {2ULL, 3ULL, 4ULL, 7ULL, 8ULL, 9ULL, 12ULL}) {
    for (u64 p : {5ULL, 7ULL}) {
      if (n % p == 0) continue;
      CHECK(component_degrees(decompose_group_ring(group_of({n}), p, 1)) == brute_factor_degrees(n, p));
    }
  }
  auto triv = decompose_group_ring(group_of({}), 5, 2);
  REQUIRE(triv.components.size() == 1);
  CHECK(triv.components[0].degree == 1);
  auto c2 = decompose_group_ring(group_of({2}), 13, 2);
  CHECK(component_degrees(c2) == std::vector<int>{1, 1});
}

TEST_CASE("integral Fitting ideals over Q(mu_7) at p = 5") {
  const GroupDescriptor G = unit_group_descriptor(7);
  auto d = decompose_group_ring(G, 5, 3);
  REQUIRE(d.components.size() == 4);

  std::map<GroupCharacter, ComponentModule> data;
  std::vector<std::size_t> degree1, degree2;
  for (const auto& chi : enumerate_characters(FieldSpec::cyclotomic(7))) {
    ComponentModule m;
    if (chi.order() == 1) m = {1, {1, 1}};
    else if (chi.order() == 2) m = {1, {}};
    else m = {0, {1}};
    data[group_character(chi)] = m;
    const std::size_t j = d.component_of(group_character(chi));
    (chi.order() <= 2 ? degree1 : degree2).push_back(j);
  }
  auto F = assemble_integral_fitting(d, data);
  auto sigma = [&](std::int64_t a) { return unit_index(7, a); };

  auto expect = [&](const IntegralIdeal& I, const std::vector<std::pair<std::int64_t, mpq_class>>& coeffs) {
    REQUIRE(I.rational_generator);
    std::vector<mpq_class> want(6, mpq_class(0));
    for (auto& [a, c] : coeffs) want[sigma(a)] = c;
    CHECK(*I.rational_generator == want);
  };
  REQUIRE(F.fitting.size() >= 3);
  expect(F.fitting[0], {{1, mpq_class(10, 3)}, {2, mpq_class(-5, 3)}, {4, mpq_class(-5, 3)}});
  expect(F.fitting[1], {{1, 5}, {2, 4}, {3, 4}, {4, 4}, {5, 4}, {6, 4}});
  const mpq_class two_thirds(2, 3);
  expect(F.fitting[2], {{1, mpq_class(5, 3)}, {2, two_thirds}, {3, two_thirds}, {4, two_thirds}, {5, two_thirds},
                        {6, two_thirds}});

  for (std::size_t j : degree1) CHECK(F.fitting[0].exponents[j].is_infinite());
  for (std::size_t j : degree2) CHECK(F.fitting[0].exponents[j] == Exponent(1));

  REQUIRE(F.presentation.size() == 3);
  CHECK(F.presentation[1].exponents == F.presentation[2].exponents);
  for (std::size_t i = 1; i < F.presentation.size(); ++i) {
    for (std::size_t j = 0; j < d.components.size(); ++j) {
      CHECK(F.presentation[i - 1].exponents[j] >= F.presentation[i].exponents[j]);
    }
  }

  SUBCASE("orbit members must agree") {
    auto bad = data;
    for (const auto& chi : enumerate_characters(FieldSpec::cyclotomic(7))) {
      if (chi.order() == 3) {
        bad[group_character(chi)] = {0, {2}};
        break;
      }
    }
    try {
      assemble_integral_fitting(d, bad);
      FAIL("expected OrbitInconsistency");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OrbitInconsistency);
    }
  }
}

TEST_CASE("integral assembly edge cases and round trip") {
  const GroupDescriptor G = group_of({2, 6});
  auto d = decompose_group_ring(G, 7, 2);

  auto trivial = assemble_integral_fitting(d, {});
  REQUIRE(trivial.fitting.size() == 1);
  CHECK(trivial.presentation.empty());
  CHECK(trivial.fitting[0].generator == GroupRingElement::basis(G, d.ring, 0));

  std::map<GroupCharacter, ComponentModule> one;
  for (const auto& chi : d.components[1].orbit) one[chi] = {0, {1}};
  auto single = assemble_integral_fitting(d, one);
  REQUIRE(single.presentation.size() == 1);
  for (std::size_t j = 0; j < d.components.size(); ++j) {
    CHECK(single.presentation[0].exponents[j] == Exponent(j == 1 ? 1 : 0));
  }
  const auto& e1 = d.components[1].idempotent;
  const auto one_elt = GroupRingElement::basis(G, d.ring, 0);
  CHECK(single.presentation[0].generator == one_elt - e1 + e1.scale(d.ring.from_int(7)));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<GroupCharacter, ComponentModule> data;
    std::vector<ComponentModule> mods;
    for (const auto& comp : d.components) {
      ComponentModule m{static_cast<int>(rng() % 2), {}};
      const int c = static_cast<int>(rng() % 3);
      for (int t = 0; t < c; ++t) m.torsion.push_back(1 + static_cast<std::int64_t>(rng() % 3));
      std::sort(m.torsion.rbegin(), m.torsion.rend());
      for (const auto& chi : comp.orbit) data[chi] = m;
      mods.push_back(m);
    }
    auto F = assemble_integral_fitting(d, data);
    CHECK(F.modules == mods);
    // Read the module back off the presentation and assemble again.
    std::map<GroupCharacter, ComponentModule> back;
    for (std::size_t j = 0; j < d.components.size(); ++j) {
      ComponentModule m;
      for (const auto& I : F.presentation) {
        if (I.exponents[j].is_infinite()) ++m.rank;
        else if (I.exponents[j].value() > 0) m.torsion.push_back(I.exponents[j].value());
      }
      for (const auto& chi : d.components[j].orbit) back[chi] = m;
    }
    auto F2 = assemble_integral_fitting(d, back);
    REQUIRE(F2.presentation.size() == F.presentation.size());
    for (std::size_t i = 0; i < F.presentation.size(); ++i) {
      CHECK(F2.presentation[i].exponents == F.presentation[i].exponents);
      CHECK(F2.presentation[i].generator == F.presentation[i].generator);
    }
    for (std::size_t i = 0; i < F.fitting.size(); ++i) {
      CHECK(F2.fitting[i].exponents == F.fitting[i].exponents);
    }
  }
}
