#include "kurihara/selmer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"

namespace kurihara {

using nt::u64;

std::string to_string(Certification c) {
  return c == Certification::proved_under_hypotheses ? "proved_under_hypotheses" : "empirical";
}

std::string to_string(ImcStatus s) { return s == ImcStatus::verified ? "verified" : "open"; }

std::vector<Exponent> ladder_exponents(const ThetaLadder& ladder) {
  const auto s = ladder.s();
  if (!s) throw Error(ErrorKind::NotReached, "ladder for " + ladder.chi + " has no unit");
  std::vector<Exponent> n;
  for (int i = 0; i <= *s; ++i) {
    const auto& e = ladder.entries[static_cast<std::size_t>(i)];
    if (!e.computed) {
      throw Error(ErrorKind::NotReached, "level " + std::to_string(i) + " of " + ladder.chi + " was not sampled");
    }
    n.push_back(e.exponent);
  }
  return n;
}

namespace {

std::vector<Exponent> fitting_from_exponents(const std::vector<Exponent>& n) {
  const std::size_t s = n.size() - 1;
  auto at = [&](std::ptrdiff_t i) -> Exponent {
    if (i < 0) return Exponent::infinity();
    if (static_cast<std::size_t>(i) > s) return 0;
    return n[static_cast<std::size_t>(i)];
  };
  std::vector<Exponent> m(s + 1);
  for (std::size_t i = 0; i <= s; ++i) {
    const auto ii = static_cast<std::ptrdiff_t>(i);
    const Exponent sum = at(ii - 1) + at(ii + 1);
    Exponent half = Exponent::infinity();
    if (sum.is_finite()) {
      if (sum.value() % 2 != 0 && Exponent(sum.value() / 2) < n[i]) {
        throw Error(ErrorKind::InconsistentLadder, "half-integral Fitting exponent at level " + std::to_string(i));
      }
      half = sum.value() / 2;
    }
    m[i] = min(n[i], half);
  }
  std::optional<std::int64_t> prev;
  for (std::size_t i = 0; i + 1 <= s; ++i) {
    if (m[i].is_infinite()) continue;
    const std::int64_t d = m[i].value() - m[i + 1].value();
    if (d < 0 || (prev && d > *prev)) {
      throw Error(ErrorKind::InconsistentLadder, "Fitting exponents are not those of a module at level " +
                                                     std::to_string(i));
    }
    prev = d;
  }
  return m;
}

bool consumed_exact(const ThetaLadder& ladder, std::size_t s) {
  for (std::size_t i = 0; i <= s; ++i) {
    if (!ladder.entries[i].exact) return false;
  }
  return true;
}

}  // namespace

FittingExponents fitting_from_ladder(const ThetaLadder& ladder) {
  FittingExponents out{fitting_from_exponents(ladder_exponents(ladder)), {}};
  const std::size_t s = out.m.size() - 1;
  for (std::size_t i = 0; i <= s; ++i) {
    bool ok = ladder.entries[i].exact;
    if (i > 0) ok = ok && ladder.entries[i - 1].exact;
    if (i < s) ok = ok && ladder.entries[i + 1].exact;
    out.exact.push_back(ok);
  }
  return out;
}

ImcStatus imc_verdict(const ThetaLadder& ladder) {
  return ladder.unit_witnessed() ? ImcStatus::verified : ImcStatus::open;
}

SelmerReport selmer_structure(const ThetaLadder& ladder) {
  const std::vector<Exponent> n = ladder_exponents(ladder);
  const std::size_t s = n.size() - 1;
  std::size_t r = 0;
  while (n[r].is_infinite()) ++r;

  SelmerReport rep;
  rep.chi = ladder.chi;
  rep.self_dual = ladder.self_dual;
  rep.rank = static_cast<int>(r);
  rep.ladder = n;

  if (ladder.self_dual) {
    if ((s - r) % 2 != 0) {
      throw Error(ErrorKind::ParityViolation, "first unit at level " + std::to_string(s) +
                                                  " has the wrong parity against r = " + std::to_string(r));
    }
    for (std::size_t i = r; i + 2 <= s; i += 2) {
      if (n[i].is_infinite() || n[i + 2].is_infinite()) {
        throw Error(ErrorKind::InconsistentLadder, "infinite entry above r at level " + std::to_string(i + 2));
      }
      const std::int64_t d = n[i].value() - n[i + 2].value();
      if (d < 0 || d % 2 != 0) {
        throw Error(ErrorKind::ParityViolation, "n_" + std::to_string(i) + " - n_" + std::to_string(i + 2) + " = " +
                                                    std::to_string(d) + " is not even and nonnegative");
      }
      if (d > 0) {
        rep.torsion.push_back(d / 2);
        rep.torsion.push_back(d / 2);
      }
    }
  } else {
    for (std::size_t i = r; i < s; ++i) {
      if (n[i + 1].is_infinite()) {
        throw Error(ErrorKind::InconsistentLadder, "infinite entry above r at level " + std::to_string(i + 1));
      }
      const std::int64_t d = n[i].value() - n[i + 1].value();
      if (d < 0) throw Error(ErrorKind::InconsistentLadder, "ladder increases at level " + std::to_string(i + 1));
      if (d > 0) rep.torsion.push_back(d);
    }
  }
  std::sort(rep.torsion.rbegin(), rep.torsion.rend());
  rep.fitting = fitting_from_exponents(n);
  rep.certification =
      consumed_exact(ladder, s) ? Certification::proved_under_hypotheses : Certification::empirical;
  rep.imc = ImcStatus::verified;
  return rep;
}

std::pair<int, std::optional<int>> rank_bounds(const ThetaLadder& ladder) {
  int lower = 0;
  while (static_cast<std::size_t>(lower) < ladder.entries.size()) {
    const auto& e = ladder.entries[static_cast<std::size_t>(lower)];
    if (!(e.computed && e.exact && e.exponent.is_infinite())) break;
    ++lower;
  }
  std::optional<int> upper;
  if (auto r = ladder.r()) upper = *r;
  return {lower, upper};
}

// ---------------------------------------------------------------------------

namespace {

u64 group_exponent(const GroupDescriptor& G) {
  u64 e = 1;
  for (const auto& f : G.factors()) e = e / nt::gcd(e, f.order) * f.order;
  return e;
}

// chi(g) = zeta_e^{result}
u64 pairing(const GroupDescriptor& G, u64 e, const GroupCharacter& chi, const std::vector<u64>& g) {
  u64 t = 0;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    const u64 o = G.factors()[i].order;
    t = (t + (chi[i] % o) * (g[i] % o) % o * (e / o)) % e;
  }
  return t;
}

GroupCharacter scale_character(const GroupDescriptor& G, const GroupCharacter& chi, u64 u) {
  GroupCharacter r(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) {
    const u64 o = G.factors()[i].order;
    r[i] = static_cast<u64>((static_cast<unsigned __int128>(chi[i]) * (u % o)) % o);
  }
  return r;
}

}  // namespace

std::size_t GroupRingDecomposition::component_of(const GroupCharacter& chi) const {
  for (std::size_t j = 0; j < components.size(); ++j) {
    for (const auto& c : components[j].orbit) {
      if (c == chi) return j;
    }
  }
  throw Error(ErrorKind::GroupMismatch, "character is not a character of " + group.describe());
}

GroupRingDecomposition decompose_group_ring(const GroupDescriptor& G, u64 p, int k) {
  if (!nt::is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  const u64 order = G.order();
  if (order % p == 0) {
    throw Error(ErrorKind::OrderDivisibleByP, "#G = " + std::to_string(order) + " is divisible by " + std::to_string(p));
  }
  const u64 e = group_exponent(G);
  PadicQuotient ring = PadicQuotient::build(p, k, e);
  GroupRingDecomposition out{G, p, ring, {}};

  const CyclotomicInteger inv_order = ring.from_rational(mpq_class(1, static_cast<unsigned long>(order)));
  std::vector<bool> seen(order, false);
  std::vector<std::vector<u64>> elems(order);
  for (std::size_t g = 0; g < order; ++g) elems[g] = G.exponents(g);

  for (std::size_t c = 0; c < order; ++c) {
    if (seen[c]) continue;
    RingComponent comp{{}, 0, GroupRingElement(G, ring), std::nullopt};
    GroupCharacter chi = G.exponents(c);
    std::set<std::size_t> members;
    while (members.insert(G.index(chi)).second) {
      comp.orbit.push_back(chi);
      seen[G.index(chi)] = true;
      chi = scale_character(G, chi, p);
    }
    comp.degree = static_cast<int>(comp.orbit.size());

    std::vector<std::complex<double>> approx(order, 0.0);
    for (std::size_t g = 0; g < order; ++g) {
      const auto& ginv = elems[G.inverse(g)];
      CyclotomicInteger acc = ring.zero();
      for (const auto& x : comp.orbit) {
        const u64 t = pairing(G, e, x, ginv);
        acc += ring.zeta_power(static_cast<std::int64_t>(t));
        approx[g] += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(e));
      }
      acc = acc * inv_order;
      const auto& co = acc.coeffs();
      for (std::size_t i = 1; i < co.size(); ++i) {
        if (co[i] != 0) throw Error(ErrorKind::InvalidArgument, "orbit idempotent has a non-constant coefficient");
      }
      comp.idempotent[g] = acc;
    }

    bool rational = true;
    for (u64 u = 2; u < e && rational; ++u) {
      if (nt::gcd(u, e) != 1) continue;
      for (const auto& x : comp.orbit) {
        if (!members.count(G.index(scale_character(G, x, u)))) {
          rational = false;
          break;
        }
      }
    }
    if (rational) {
      std::vector<mpq_class> q(order);
      for (std::size_t g = 0; g < order; ++g) {
        const double re = std::round(approx[g].real());
        if (std::abs(approx[g].real() - re) > 1e-6 || std::abs(approx[g].imag()) > 1e-6) {
          throw Error(ErrorKind::InvalidArgument, "rational orbit sum is not an integer");
        }
        q[g] = mpq_class(static_cast<long>(re), static_cast<unsigned long>(order));
        q[g].canonicalize();
      }
      comp.rational_idempotent = std::move(q);
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

namespace {

IntegralIdeal make_ideal(const GroupRingDecomposition& d, std::vector<Exponent> exps) {
  IntegralIdeal I{std::move(exps), GroupRingElement(d.group, d.ring), std::nullopt};
  bool rational = true;
  std::vector<mpq_class> q(d.group.order(), mpq_class(0));
  for (std::size_t j = 0; j < d.components.size(); ++j) {
    if (I.exponents[j].is_infinite()) continue;
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), d.p, static_cast<unsigned long>(I.exponents[j].value()));
    I.generator = I.generator + d.components[j].idempotent.scale(d.ring.from_int(pe));
    if (!d.components[j].rational_idempotent) {
      rational = false;
      continue;
    }
    for (std::size_t g = 0; g < q.size(); ++g) q[g] += pe * (*d.components[j].rational_idempotent)[g];
  }
  if (rational) I.rational_generator = std::move(q);
  return I;
}

// Factors largest first with the free part as infinity.
std::vector<Exponent> factor_list(const ComponentModule& m) {
  std::vector<Exponent> f(static_cast<std::size_t>(m.rank), Exponent::infinity());
  std::vector<std::int64_t> t = m.torsion;
  std::sort(t.rbegin(), t.rend());
  for (auto a : t) {
    if (a > 0) f.push_back(a);
  }
  return f;
}

}  // namespace

IntegralFitting assemble_integral_fitting(const GroupRingDecomposition& decomp,
                                          const std::map<GroupCharacter, ComponentModule>& per_character) {
  IntegralFitting out;
  std::vector<std::vector<Exponent>> factors;
  std::size_t longest = 0;
  for (const auto& comp : decomp.components) {
    std::optional<ComponentModule> mod;
    for (const auto& chi : comp.orbit) {
      auto it = per_character.find(chi);
      if (it == per_character.end()) continue;
      ComponentModule m = it->second;
      std::sort(m.torsion.rbegin(), m.torsion.rend());
      m.torsion.erase(std::remove(m.torsion.begin(), m.torsion.end(), 0), m.torsion.end());
      if (mod && !(*mod == m)) {
        throw Error(ErrorKind::OrbitInconsistency, "characters in one Frobenius orbit carry different modules");
      }
      mod = m;
    }
    out.modules.push_back(mod.value_or(ComponentModule{}));
    factors.push_back(factor_list(out.modules.back()));
    longest = std::max(longest, factors.back().size());
  }
  for (const auto& chi : per_character) (void)decomp.component_of(chi.first);

  for (std::size_t i = 0; i <= longest; ++i) {
    std::vector<Exponent> ex;
    for (const auto& f : factors) {
      Exponent sum = 0;
      for (std::size_t t = i; t < f.size(); ++t) sum = sum + f[t];
      ex.push_back(sum);
    }
    out.fitting.push_back(make_ideal(decomp, std::move(ex)));
  }
  for (std::size_t i = 1; i <= longest; ++i) {
    std::vector<Exponent> ex;
    for (const auto& f : factors) ex.push_back(i <= f.size() ? f[i - 1] : Exponent(0));
    out.presentation.push_back(make_ideal(decomp, std::move(ex)));
  }
  return out;
}

GroupCharacter group_character(const DirichletCharacter& chi) {
  UnitGroup U(chi.modulus());
  GroupCharacter x;
  for (std::size_t i = 0; i < U.generators().size(); ++i) {
    const u64 o = U.orders()[i];
    const auto t = chi.exponent_at(static_cast<std::int64_t>(U.generators()[i]));
    if (!t) throw Error(ErrorKind::InvalidArgument, "generator is not a unit");
    const u64 num = *t * o;
    if (num % chi.order() != 0) throw Error(ErrorKind::InvalidArgument, "character value order does not divide o_i");
    x.push_back((num / chi.order()) % o);
  }
  return x;
}

}  // namespace kurihara
