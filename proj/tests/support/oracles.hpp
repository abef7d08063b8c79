#pragma once

// Independent brute-force checks shared by the unit and acceptance suites.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kurihara/group_ring.hpp"
#include "kurihara/kurihara.hpp"
#include "kurihara/numtheory.hpp"
#include "kurihara/padic.hpp"

namespace oracle {

using kurihara::Exponent;
using std::uint64_t;

// Ladder with the given exponents, every level computed.
inline kurihara::ThetaLadder make_ladder(const std::vector<Exponent>& n, bool self_dual,
                                         std::vector<bool> exact = {}) {
  kurihara::ThetaLadder L;
  L.chi = "synthetic";
  L.self_dual = self_dual;
  for (std::size_t i = 0; i < n.size(); ++i) {
    kurihara::LadderEntry e;
    e.exponent = n[i];
    e.computed = true;
    e.exact = exact.empty() ? true : exact[i];
    L.entries.push_back(e);
  }
  return L;
}

// Fitt_i of R^rank + sum R/p^{e_j} from the minors of its diagonal
// relation matrix, computed in R = O_d / p^K: the ideal generated by all
// (g - i)-minors, g the number of generators.
inline std::vector<Exponent> minor_fitting(const kurihara::PadicQuotient& R, int rank,
                                           const std::vector<std::int64_t>& tors) {
  std::vector<kurihara::CyclotomicInteger> diag(static_cast<std::size_t>(rank), R.zero());
  for (auto e : tors) {
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), R.p(), static_cast<unsigned long>(e));
    diag.push_back(R.from_int(pe));
  }
  const std::size_t g = diag.size();
  std::vector<Exponent> m;
  for (std::size_t i = 0; i <= g; ++i) {
    Exponent best = Exponent::infinity();
    const std::size_t size = g - i;
    for (unsigned mask = 0; mask < (1u << g); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      kurihara::CyclotomicInteger prod = R.one();
      for (std::size_t j = 0; j < g; ++j) {
        if (mask & (1u << j)) prod = prod * diag[j];
      }
      best = min(best, prod.valuation());
    }
    m.push_back(best);
  }
  return m;
}

// Invariant-factor lists n_1 | n_2 | ... (n_1 > 1) of every abelian group of
// order at most max_order, the trivial group included.
inline std::vector<std::vector<uint64_t>> all_abelian_groups(uint64_t max_order) {
  std::vector<std::vector<uint64_t>> out{{}};
  std::function<void(std::vector<uint64_t>, uint64_t)> rec = [&](std::vector<uint64_t> cur, uint64_t order) {
    const uint64_t last = cur.empty() ? 1 : cur.back();
    for (uint64_t m = cur.empty() ? 2 : last; order * m <= max_order; m += last) {
      auto next = cur;
      next.push_back(m);
      out.push_back(next);
      rec(next, order * m);
    }
  };
  rec({}, 1);
  return out;
}

inline kurihara::GroupDescriptor group_of(const std::vector<uint64_t>& orders) {
  std::vector<kurihara::CyclicFactor> f;
  for (uint64_t o : orders) f.push_back({o, 0});
  return kurihara::GroupDescriptor(f);
}

// Exhaustive p-primary discrete log: the x in [0, p^v) with (eta^-x a)^u = 1,
// reduced mod p^k.
inline uint64_t brute_plog(uint64_t l, uint64_t eta, uint64_t a, uint64_t p, int k) {
  namespace nt = kurihara::nt;
  const int v = nt::valuation(l - 1, p);
  uint64_t pv = 1;
  for (int i = 0; i < v; ++i) pv *= p;
  const uint64_t u = (l - 1) / pv;
  const uint64_t einv = *nt::inverse_mod(eta, l);
  uint64_t found = pv;
  for (uint64_t x = 0; x < pv; ++x) {
    const uint64_t y = nt::mulmod(nt::powmod(einv, x, l), a, l);
    if (nt::powmod(y, u, l) == 1) {
      if (found != pv) throw std::logic_error("two p-primary logs");
      found = x;
    }
  }
  uint64_t pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  return found % pk;
}

}  // namespace oracle
