#include "kurihara/kurihara.hpp"

#include <algorithm>
#include <json.hpp>
#include <thread>
#include <unordered_map>

#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"

namespace kurihara {

using nt::i64;
using nt::u64;
using i128 = __int128;

namespace {

u64 checked_pow(u64 p, int k) {
  u64 r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > UINT64_MAX / p) throw Error(ErrorKind::InvalidArgument, "p^k does not fit in 64 bits");
    r *= p;
  }
  return r;
}

// x with g^x = h in a cyclic group of prime order q mod l.
u64 dlog_prime_order(u64 g, u64 h, u64 q, u64 l) {
  if (h == 1) return 0;
  const u64 m = nt::isqrt(q) + 1;
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = nt::mulmod(cur, g, l);
  }
  const u64 giant = *nt::inverse_mod(nt::powmod(g, m, l), l);
  cur = h;
  for (u64 i = 0; i <= m; ++i) {
    auto it = baby.find(cur);
    if (it != baby.end()) return (i * m + it->second) % q;
    cur = nt::mulmod(cur, giant, l);
  }
  throw Error(ErrorKind::InvalidArgument, "element is not in the subgroup");
}

mpz_class to_mpz(i128 x) {
  const bool neg = x < 0;
  unsigned __int128 ux = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
  mpz_class hi(static_cast<unsigned long>(static_cast<u64>(ux >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<u64>(ux)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

std::uint64_t plog(const KolyvaginPrimeRecord& rec, std::int64_t a, std::uint64_t p, int k) {
  const u64 l = rec.l;
  const u64 ar = nt::reduce(a, l);
  if (ar == 0) throw Error(ErrorKind::NotCoprime, std::to_string(a) + " is divisible by " + std::to_string(l));
  const int v = nt::valuation(l - 1, p);
  if (k < 0 || k > v) {
    throw Error(ErrorKind::InvalidArgument, "k = " + std::to_string(k) + " exceeds v_p(l - 1) = " + std::to_string(v));
  }
  const u64 u = (l - 1) / checked_pow(p, v);
  const u64 A = nt::powmod(ar, u, l);
  const u64 H = nt::powmod(rec.eta % l, u, l);
  const u64 gamma = nt::powmod(H, checked_pow(p, v - 1), l);
  if (gamma == 1) throw Error(ErrorKind::InvalidArgument, "eta does not generate the p-Sylow subgroup");
  const u64 Hinv = *nt::inverse_mod(H, l);
  u64 x = 0, pj = 1;
  for (int j = 0; j < v; ++j) {
    const u64 h = nt::powmod(nt::mulmod(A, nt::powmod(Hinv, x, l), l), checked_pow(p, v - 1 - j), l);
    x += dlog_prime_order(gamma, h, p, l) * pj;
    pj *= p;
  }
  return x % checked_pow(p, k);
}

PlogTable::PlogTable(const KolyvaginPrimeRecord& rec, u64 p, int k) : l_(rec.l), pk_(checked_pow(p, k)) {
  const int v = nt::valuation(l_ - 1, p);
  if (k > v) throw Error(ErrorKind::InvalidArgument, "k exceeds v_p(l - 1)");
  const u64 pv = checked_pow(p, v);
  const u64 g = nt::primitive_root(l_);
  std::vector<std::uint32_t> dl(l_, 0);
  u64 r = 1;
  for (u64 j = 0; j + 1 < l_; ++j) {
    dl[r] = static_cast<std::uint32_t>(j % pv);
    r = nt::mulmod(r, g, l_);
  }
  auto inv = nt::inverse_mod(dl[rec.eta % l_] % pv, pv);
  if (!inv) throw Error(ErrorKind::InvalidArgument, "eta does not generate the p-Sylow subgroup");
  table_.assign(l_, 0);
  for (u64 a = 1; a < l_; ++a) table_[a] = nt::mulmod(dl[a], *inv, pv) % pk_;
}

int kn_exponent(const std::vector<KolyvaginPrimeRecord>& n, int k_work) {
  if (n.empty()) return k_work;
  int k = n.front().k_l;
  for (const auto& r : n) k = std::min(k, r.k_l);
  return k;
}

KuriharaValue kurihara_number(const DirichletCharacter& chi_in, const std::vector<KolyvaginPrimeRecord>& n,
                              const SymbolEvaluator& ev, const PadicQuotient& ring, int k_work,
                              const SumOptions& opts) {
  const DirichletCharacter chi = chi_in.is_primitive() ? chi_in : chi_in.primitive();
  const u64 c = chi.modulus();
  const u64 order = chi.order();
  const u64 p = ring.p();
  if (ring.d() % order != 0) {
    throw Error(ErrorKind::MixedRings, "ring " + ring.describe() + " does not contain the values of " + chi.label());
  }
  std::vector<KolyvaginPrimeRecord> primes = n;
  std::sort(primes.begin(), primes.end(), [](const auto& x, const auto& y) { return x.l < y.l; });
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (c % primes[i].l == 0) throw Error(ErrorKind::NotCoprime, "l = " + std::to_string(primes[i].l) + " divides c");
    if (i > 0 && primes[i].l == primes[i - 1].l) throw Error(ErrorKind::InvalidArgument, "repeated prime in n");
  }
  const int k_n = kn_exponent(primes, k_work);
  const PadicQuotient R = k_n == ring.k() ? ring : ring.with_precision(k_n);
  // Only log products need p^k in a word.
  const u64 pk = primes.empty() ? 0 : checked_pow(p, k_n);

  const int sign = chi.parity();
  const mpq_class& scale = ev.scale(sign);
  if (mpz_divisible_ui_p(scale.get_den_mpz_t(), p)) {
    throw Error(ErrorKind::PrecisionCollapse, "symbol scale " + scale.get_str() + " has p in the denominator");
  }

  u64 m = c;
  for (const auto& r : primes) {
    if (m > opts.max_terms / r.l) {
      throw Error(ErrorKind::ConductorTooLarge, "c n exceeds the term budget " + std::to_string(opts.max_terms));
    }
    m *= r.l;
  }

  std::vector<i128> acc(order, 0);
  if (m == 1) {
    acc[0] = ev.raw(0, 1, 1);
  } else {
    std::vector<PlogTable> tables;
    tables.reserve(primes.size());
    for (const auto& r : primes) tables.emplace_back(r, p, k_n);
    const auto& chi_table = chi.table();
    auto work = [&](u64 lo, u64 hi, std::vector<i128>& out) {
      for (u64 a = lo; a < hi; ++a) {
        const i64 t = chi_table[a % c];
        if (t < 0) continue;
        u64 L = pk == 0 ? 1 : 1 % pk;
        bool unit = true;
        for (const auto& tb : tables) {
          const u64 r = a % tb.l();
          if (r == 0) {
            unit = false;
            break;
          }
          L = nt::mulmod(L, tb[r], pk);
        }
        if (!unit || L == 0) continue;
        const std::int64_t s = ev.raw(static_cast<i64>(a), m, sign);
        if (s == 0) continue;
        out[(order - static_cast<u64>(t)) % order] += static_cast<i128>(s) * static_cast<i128>(L);
      }
    };
    const unsigned T = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(std::min<u64>(m, 1024))));
    if (T == 1) {
      work(0, m, acc);
    } else {
      std::vector<std::vector<i128>> parts(T, std::vector<i128>(order, 0));
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < T; ++w) {
        const u64 lo = m / T * w, hi = w + 1 == T ? m : m / T * (w + 1);
        pool.emplace_back(work, lo, hi, std::ref(parts[w]));
      }
      for (auto& th : pool) th.join();
      for (const auto& part : parts) {
        for (u64 t = 0; t < order; ++t) acc[t] += part[t];
      }
    }
  }

  CyclotomicInteger value = R.zero();
  const u64 step = R.d() / order;
  for (u64 t = 0; t < order; ++t) {
    if (acc[t] == 0) continue;
    const mpq_class term = scale * mpq_class(to_mpz(acc[t]));
    value += R.zeta_power(static_cast<i64>(t * step)) * R.from_rational(term);
  }
  KuriharaValue out{{}, chi.label(), k_n, value, value.valuation(), static_cast<int>(primes.size())};
  for (const auto& r : primes) out.n.push_back(r.l);
  return out;
}

std::optional<int> ThetaLadder::r() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].computed && entries[i].exponent.is_finite()) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> ThetaLadder::s() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].computed && entries[i].exponent == Exponent(0)) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool parity_allows(int nu, int eps, const DirichletCharacter& chi, u64 N) {
  if (!chi.is_self_dual()) return true;
  const DirichletCharacter prim = chi.primitive();
  int chi_mN = 1;
  if (prim.modulus() > 1) {
    auto t = prim.exponent_at(-static_cast<i64>(N % prim.modulus()));
    if (!t) throw Error(ErrorKind::NotCoprime, "chi(-N) undefined");
    chi_mN = (*t == 0) ? 1 : -1;
  }
  const int sgn = (nu % 2 == 0 ? 1 : -1) * eps * chi_mN;
  return sgn == 1;
}

namespace {

// i-subsets of {0..P-1} in colexicographic order.
std::vector<std::vector<std::size_t>> colex_subsets(std::size_t P, int i) {
  std::vector<std::vector<std::size_t>> out;
  if (i <= 0 || static_cast<std::size_t>(i) > P) return out;
  std::vector<std::size_t> s(i);
  for (int j = 0; j < i; ++j) s[j] = j;
  for (;;) {
    out.push_back(s);
    int j = 0;
    while (j + 1 < i && s[j] + 1 == s[j + 1]) ++j;
    if (s[j] + 1 >= P) break;
    ++s[j];
    for (int t = 0; t < j; ++t) s[t] = t;
  }
  return out;
}

}  // namespace

ThetaLadder theta_ladder(const CurveModel& E, const DirichletCharacter& chi_in, const SymbolEvaluator& ev,
                         const PadicQuotient& ring, int eps, int k_work, const LadderStrategy& strategy,
                         const std::function<void(const KuriharaValue&)>& sink) {
  if (strategy.primes_per_level < 1 || strategy.max_level < 0) {
    throw Error(ErrorKind::InvalidArgument, "ladder budgets must be positive");
  }
  const DirichletCharacter chi = chi_in.is_primitive() ? chi_in : chi_in.primitive();
  ThetaLadder ladder;
  ladder.chi = chi.label();
  ladder.self_dual = chi.is_self_dual();
  ladder.entries.resize(static_cast<std::size_t>(strategy.max_level) + 1);

  auto record = [&](const KuriharaValue& v) {
    ladder.values.push_back(v);
    if (sink) sink(v);
  };

  {
    KuriharaValue v0 = kurihara_number(chi, {}, ev, ring, k_work, strategy.sum);
    auto& e = ladder.entries[0];
    e.exponent = v0.ord;
    e.exact = true;
    e.computed = true;
    e.samples = 1;
    record(v0);
    if (v0.ord == Exponent(0)) {
      ladder.entries.resize(1);
      return ladder;
    }
  }
  if (strategy.max_level == 0) return ladder;

  std::vector<KolyvaginPrimeRecord> primes = strategy.primes;
  if (primes.empty()) {
    primes = find_kolyvagin_primes(E, chi.kernel_field(), ring.p(), strategy.k, strategy.primes_per_level,
                                   strategy.scan_bound);
  }
  if (primes.size() > strategy.primes_per_level) primes.resize(strategy.primes_per_level);

  for (int i = 1; i <= strategy.max_level; ++i) {
    auto& e = ladder.entries[static_cast<std::size_t>(i)];
    if (ladder.self_dual && !parity_allows(i, eps, chi, E.conductor)) {
      e.exponent = Exponent::infinity();
      e.exact = true;
      e.parity_forced = true;
      e.computed = true;
      continue;
    }
    for (const auto& subset : colex_subsets(primes.size(), i)) {
      std::vector<KolyvaginPrimeRecord> n;
      for (std::size_t j : subset) n.push_back(primes[j]);
      KuriharaValue v = [&]() -> KuriharaValue {
        try {
          return kurihara_number(chi, n, ev, ring, k_work, strategy.sum);
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::ConductorTooLarge) throw;
          return KuriharaValue{{}, {}, -1, ring.zero(), Exponent::infinity(), -1};
        }
      }();
      if (v.k_n < 0) {
        ++e.skipped;
        continue;
      }
      ++e.samples;
      e.computed = true;
      if (e.witness.empty() || v.ord < e.exponent) {
        e.exponent = v.ord;
        e.witness = v.n;
      }
      record(v);
      if (v.ord == Exponent(0)) break;
    }
    // Exponents are at least 0, so a witnessed unit is exact.
    e.exact = e.computed && e.exponent == Exponent(0);
    if (e.exact) {
      ladder.entries.resize(static_cast<std::size_t>(i) + 1);
      break;
    }
  }
  return ladder;
}

FunctionalEquationReport functional_equation_check(const CurveModel& E, int eps, const DirichletCharacter& chi,
                                                   const std::vector<KuriharaValue>& values) {
  FunctionalEquationReport rep;
  if (!chi.is_self_dual()) {
    rep.skipped = true;
    return rep;
  }
  for (const auto& v : values) {
    if (parity_allows(v.nu, eps, chi, E.conductor)) continue;
    ++rep.checked;
    if (!v.value.is_zero()) rep.violations.push_back(v.n);
  }
  return rep;
}

std::string delta_json_line(const std::string& curve, const KuriharaValue& v) {
  nlohmann::json j;
  j["curve"] = curve;
  j["p"] = v.value.ring().p();
  j["chi"] = v.chi;
  j["n"] = v.n;
  j["k_n"] = v.k_n;
  if (v.ord.is_finite()) {
    j["ord"] = v.ord.value();
  } else {
    j["ord"] = "inf";
  }
  std::vector<std::string> coeffs;
  for (const auto& c : v.value.coeffs()) coeffs.push_back(c.get_str());
  j["value_coeffs"] = coeffs;
  return j.dump();
}

}  // namespace kurihara
