#include "kurihara/hypotheses.hpp"

#include "kurihara/numtheory.hpp"

namespace kurihara {

using nt::i64;
using nt::u64;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::warn: return "WARN";
    case CheckStatus::assumed: return "ASSUMED";
  }
  return "?";
}

bool HypothesisReport::any_failed() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail) return true;
  }
  return false;
}

const HypothesisCheck* HypothesisReport::find(const std::string& id) const {
  for (const auto& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

void HypothesisReport::upgrade_main_conjecture(const std::string& detail) {
  for (auto& c : checks) {
    if (c.id == "main_conjecture") {
      c.status = CheckStatus::pass;
      c.detail = detail;
    }
  }
}

namespace {

u64 residue_degree(const FieldSpec& spec, u64 p) {
  if (spec.c <= 2 || nt::gcd(p, spec.c) != 1) return 1;
  const auto H = spec.subgroup_elements();
  auto in_h = [&](u64 x) {
    for (u64 h : H) {
      if (h == x) return true;
    }
    return false;
  };
  u64 x = p % spec.c, f = 1;
  while (!in_h(x)) {
    x = nt::mulmod(x, p % spec.c, spec.c);
    ++f;
  }
  return f;
}

i64 mod_p(i64 a, u64 p) { return static_cast<i64>(nt::reduce(a, p)); }

HypothesisCheck surjectivity(const CurveModel& E, u64 p, u64 bound) {
  HypothesisCheck c{"surjective", CheckStatus::warn, "", true};
  if (p < 5) {
    c.detail = "criterion needs p >= 5";
    return c;
  }
  // Frobenius elements excluding the Borel, Cartan normalizer and
  // exceptional images, as traces and determinants mod p.
  bool split = false, nonsplit = false, exceptional = false;
  for (u64 l = 3; l <= bound && !(split && nonsplit && exceptional); l += 2) {
    if (!nt::is_prime(l) || l == p || !E.has_good_reduction(l)) continue;
    const i64 t = mod_p(trace_of_frobenius(E, l), p);
    const i64 d = mod_p(static_cast<i64>(l), p);
    if (t == 0) continue;
    const i64 disc = mod_p(static_cast<i64>(nt::mulmod(t, t, p)) - static_cast<i64>(nt::mulmod(4, d, p)), p);
    const int leg = nt::legendre(disc, p);
    if (leg == 1) split = true;
    if (leg == -1) nonsplit = true;
    const u64 u = nt::mulmod(nt::mulmod(t, t, p), *nt::inverse_mod(d, p), p);
    const u64 w = nt::reduce(static_cast<i64>(nt::mulmod(u, u, p)) - static_cast<i64>(nt::mulmod(3, u, p)) + 1, p);
    if (u != 1 % p && u != 2 % p && u != 4 % p && w != 0) exceptional = true;
  }
  if (split && nonsplit && exceptional) {
    c.status = CheckStatus::pass;
    c.detail = "Frobenius traces up to " + std::to_string(bound) + " rule out Borel, Cartan-normalizer and exceptional images";
  } else {
    c.detail = "sample up to " + std::to_string(bound) + " does not exclude a small image";
  }
  return c;
}

}  // namespace

HypothesisReport hypothesis_report(const CurveModel& E, const FieldSpec& spec, u64 p, u64 sample_bound) {
  HypothesisReport rep;
  const u64 N = E.conductor;

  rep.checks.push_back(surjectivity(E, p, sample_bound));
  rep.checks.push_back({"manin_constant", CheckStatus::assumed, "a Manin constant prime to p", false});

  {
    HypothesisCheck c{"unramified", CheckStatus::pass, "", false};
    const u64 g1 = nt::gcd(spec.c, N), g2 = nt::gcd(spec.c, p);
    if (g1 != 1 || g2 != 1) {
      c.status = CheckStatus::fail;
      c.detail = "K = " + spec.label + " is ramified at " + (g1 != 1 ? "a bad prime" : "p");
    } else {
      c.detail = "gcd(c, N p) = 1";
    }
    rep.checks.push_back(c);
  }
  {
    HypothesisCheck c{"degree", CheckStatus::pass, "[K:Q] = " + std::to_string(spec.d), false};
    if (spec.d % p == 0) c.status = CheckStatus::fail;
    rep.checks.push_back(c);
  }
  {
    HypothesisCheck c{"local_torsion", CheckStatus::pass, "", false};
    if (nt::gcd(spec.c, p) != 1) {
      c.status = CheckStatus::warn;
      c.detail = "K ramified at p";
    } else if (E.has_good_reduction(p)) {
      // #E(F_{p^f}) = 1 - a_p^f mod p; with e = 1 the formal group has no
      // p-torsion, so E(K_v)[p] embeds in the reduction.
      const u64 f = residue_degree(spec, p);
      const u64 ap = nt::reduce(trace_of_frobenius(E, p), p);
      const u64 count = nt::reduce(1 - static_cast<i64>(nt::powmod(ap, f, p)), p);
      c.detail = "f = " + std::to_string(f) + ", #E(F_{p^f}) mod p = " + std::to_string(count);
      if (count == 0) c.status = CheckStatus::warn;
    } else {
      const LocalData* ld = E.local(p);
      if (ld->conductor_exponent == 1 && static_cast<u64>(ld->disc_valuation) % p != 0) {
        c.detail = "multiplicative at p with p not dividing v_p(disc)";
      } else {
        c.status = CheckStatus::warn;
        c.detail = "reduction type " + ld->kodaira + " at p not decided";
      }
    }
    rep.checks.push_back(c);
  }
  {
    HypothesisCheck c{"tamagawa", CheckStatus::pass, "", false};
    for (const auto& ld : E.bad_primes) {
      // Nonsplit I_n becomes split over an even residue degree.
      u64 cK = static_cast<u64>(ld.tamagawa);
      if (ld.conductor_exponent == 1 && (ld.split == 1 || residue_degree(spec, ld.prime) % 2 == 0)) {
        cK = static_cast<u64>(ld.disc_valuation);
      }
      if (cK % p == 0) {
        c.status = CheckStatus::fail;
        c.detail = "p divides the Tamagawa number " + std::to_string(cK) + " at " + std::to_string(ld.prime) + " (" +
                   ld.kodaira + ")";
        break;
      }
    }
    if (c.status == CheckStatus::pass) c.detail = "all Tamagawa numbers prime to p";
    rep.checks.push_back(c);
  }
  {
    HypothesisCheck c{"rational_torsion", CheckStatus::warn, "", false};
    for (u64 l = 3; l <= sample_bound; l += 2) {
      if (!nt::is_prime(l) || l == p || !E.has_good_reduction(l)) continue;
      const u64 n = static_cast<u64>(static_cast<i64>(l) + 1 - trace_of_frobenius(E, l));
      if (n % p != 0) {
        c.status = CheckStatus::pass;
        c.detail = "#E(F_" + std::to_string(l) + ") = " + std::to_string(n) + " is prime to p";
        break;
      }
    }
    if (c.status != CheckStatus::pass) c.detail = "every sampled #E(F_l) is divisible by p";
    rep.checks.push_back(c);
  }
  rep.checks.push_back({"main_conjecture", CheckStatus::assumed,
                        "localized main conjecture for every twist, pending a witnessed unit", false});
  return rep;
}

}  // namespace kurihara
