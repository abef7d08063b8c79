// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. `--only 1,5b` restricts the run to the listed ids.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kurihara/analytic.hpp"
#include "kurihara/characters.hpp"
#include "kurihara/curve.hpp"
#include "kurihara/error.hpp"
#include "kurihara/group_ring.hpp"
#include "kurihara/kurihara.hpp"
#include "kurihara/numtheory.hpp"
#include "kurihara/selmer.hpp"
#include "oracles.hpp"

using namespace kurihara;
using nt::i64;
using nt::u64;
using Clock = std::chrono::steady_clock;

namespace {

struct Line {
  std::string id;
  bool pass = false;
  std::string detail;
};

class Runner {
 public:
  explicit Runner(std::set<std::string> only) : only_(std::move(only)) {}

  bool wanted(const std::string& group) const { return only_.empty() || only_.count(group); }

  void report(const std::string& id, bool pass, const std::string& detail) {
    lines_.push_back({id, pass, detail});
    std::cout << (pass ? "PASS " : "FAIL ") << std::left << std::setw(4) << id << " " << detail << std::endl;
  }

  // Runs a criterion group; an exception fails the group with its message.
  void group(const std::string& name, const std::function<void()>& body) {
    if (!wanted(name)) return;
    const auto t0 = Clock::now();
    try {
      body();
    } catch (const std::exception& e) {
      report(name, false, std::string("aborted: ") + e.what());
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    std::cout << "     " << name << " took " << std::fixed << std::setprecision(1) << s << " s" << std::endl;
  }

  int failures() const {
    return static_cast<int>(std::count_if(lines_.begin(), lines_.end(), [](const Line& l) { return !l.pass; }));
  }
  std::size_t size() const { return lines_.size(); }

 private:
  std::set<std::string> only_;
  std::vector<Line> lines_;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2) << s << " s";
  return o.str();
}

std::string torsion_text(const SelmerReport& r, u64 p, const std::string& ring) {
  std::string s;
  for (int i = 0; i < r.rank; ++i) s += (s.empty() ? "" : " + ") + ring;
  for (auto e : r.torsion) {
    s += (s.empty() ? "" : " + ") + ring + "/(" + std::to_string(p) + (e > 1 ? "^" + std::to_string(e) : "") + ")";
  }
  return s.empty() ? "0" : s;
}

KolyvaginPrimeRecord certified(const CurveModel& E, const DirichletCharacter& chi, u64 p, u64 l) {
  auto cert = certify_kolyvagin_prime(E, chi.kernel_field(), p, 1, l);
  if (!cert.record) throw Error(ErrorKind::InvalidArgument, std::to_string(l) + " rejected: " + cert.rejection);
  return *cert.record;
}

// 11a1, p = 101, K = Q(mu_61).
void mu61_at_101(Runner& run) {
  const u64 p = 101;
  const auto t0 = Clock::now();
  const auto E = curve_from_label("11a1");
  const int eps = analytic::root_number(E);
  const auto ev = analytic::build_evaluator(E, eps, p);
  const double build = seconds_since(t0);
  run.report("1.0", build < 1.0, "symbol build " + fmt_seconds(build) + " (limit 1 s)");

  CharacterPin pin;
  pin.at = 2;
  pin.residue = 60;
  const auto chi = select_pinned(61, 20, {pin}, p);
  const auto R20 = PadicQuotient::build(p, 5, 20);
  LadderStrategy st;
  st.max_level = 3;
  const auto L20 = theta_ladder(E, chi, ev, R20, eps, 5, st);
  const auto d1 = L20.values.at(0);
  run.report("1a", d1.ord == Exponent(1), chi.label() + " (chi(2) in 60 + 101Z_101): ord delta_1 = " + d1.ord.to_string());

  const auto quad = select_pinned(61, 2, {}, p);
  const auto R2 = PadicQuotient::build(p, 5, 2);
  LadderStrategy sq;
  sq.primes = {certified(E, quad, p, 64237)};
  sq.primes_per_level = 1;
  sq.max_level = 1;
  const auto tq = Clock::now();
  const auto Lq = theta_ladder(E, quad, ev, R2, eps, 5, sq);
  const double quad_time = seconds_since(tq);
  const bool zero1 = Lq.entries.at(0).computed && Lq.values.at(0).value.is_zero();
  run.report("1b", zero1, "quadratic chi': delta_1 = " + std::string(zero1 ? "0" : "nonzero"));
  const bool unit64237 = Lq.values.size() == 2 && Lq.values[1].n == std::vector<u64>{64237} &&
                         Lq.values[1].ord == Exponent(0);
  run.report("1c", unit64237 && quad_time <= 600,
             "ord delta_{64237,chi'} = " + (Lq.values.size() == 2 ? Lq.values[1].ord.to_string() : "?") + ", " +
                 std::to_string(nt::euler_phi(61 * 64237)) + " terms in " + fmt_seconds(quad_time) +
                 " (limit 600 s)");

  // Both order-6 characters form one Frobenius orbit at 101.
  const auto six = select_pinned(61, 6, {}, p);
  const auto R6 = PadicQuotient::build(p, 5, 6);
  LadderStrategy s6;
  s6.primes = {certified(E, six, p, 2528233)};
  s6.primes_per_level = 1;
  s6.max_level = 1;
  const auto t6 = Clock::now();
  const auto L6 = theta_ladder(E, six, ev, R6, eps, 5, s6);
  const double six_time = seconds_since(t6);
  const bool unit6 = L6.values.size() == 2 && L6.values[1].ord == Exponent(0);
  run.report("1d", unit6 && six_time <= 7200,
             six.label() + ": ord delta_{2528233,chi''} = " + (L6.values.size() == 2 ? L6.values[1].ord.to_string() : "?") +
                 ", " + std::to_string(nt::euler_phi(61 * 2528233)) + " terms in " + fmt_seconds(six_time) +
                 " (slow suite, limit 2 h)");

  const auto S20 = selmer_structure(L20);
  const auto Sq = selmer_structure(Lq);
  const auto S6 = selmer_structure(L6);
  const bool structures = S20.rank == 0 && S20.torsion == std::vector<std::int64_t>{1} && Sq.rank == 1 &&
                          Sq.torsion.empty() && S6.rank == 1 && S6.torsion.empty();
  run.report("1e", structures,
             "structures " + torsion_text(S20, p, "Z_101") + ", " + torsion_text(Sq, p, "Z_101") + ", " +
                 torsion_text(S6, p, "O_6"));
}

// 27a1 at a 12-digit prime, order-88 character mod 89.
void mu89_large_prime(Runner& run) {
  const u64 p = 472558791937ULL;
  const auto t0 = Clock::now();
  const auto E = curve_from_label("27a1");
  const int eps = analytic::root_number(E);
  const auto ev = analytic::build_evaluator(E, eps, p);
  CharacterPin pin;
  pin.at = 3;
  pin.residue = 382613086515LL;
  const auto chi = select_pinned(89, 88, {pin}, p);
  const auto v = kurihara_number(chi, {}, ev, PadicQuotient::build(p, 2, 88), 2);
  const double total = seconds_since(t0);
  run.report("2", v.ord == Exponent(1) && total < 10,
             chi.label() + ": ord_p delta_1 = " + v.ord.to_string() + ", " + std::to_string(nt::euler_phi(89)) +
                 "-term sum, " + fmt_seconds(total) + " total (limit 10 s)");
}

// 35a1, p = 7, order-8 character mod 51.
void mu51_at_7(Runner& run) {
  const u64 p = 7;
  const auto t0 = Clock::now();
  const auto E = curve_from_label("35a1");
  const int eps = analytic::root_number(E);
  const auto ev = analytic::build_evaluator(E, eps, p);
  // chi(35) = -1 and chi(37) a root of x^2 + 3x + 1 mod 7.
  CharacterPin sign;
  sign.at = 35;
  sign.residue = -1;
  CharacterPin root;
  root.at = 37;
  root.root_of = {1, 3, 1};
  const auto chi = select_pinned(51, 8, {sign, root}, p);
  const auto R = PadicQuotient::build(p, 5, 8);
  LadderStrategy st;
  st.primes_per_level = 1;
  st.max_level = 2;
  const auto L = theta_ladder(E, chi, ev, R, eps, 5, st);
  const auto S = selmer_structure(L);
  const double total = seconds_since(t0);
  const std::string lad = L.values.size() >= 2 ? L.values[1].ord.to_string() : "?";
  const u64 first = L.values.size() >= 2 && !L.values[1].n.empty() ? L.values[1].n[0] : 0;
  const bool ok = L.values.at(0).ord == Exponent(2) && first == 2801 && L.values.size() == 2 &&
                  L.values[1].ord == Exponent(0) && S.rank == 0 && S.torsion == std::vector<std::int64_t>{2} &&
                  R.f() == 2 && total <= 300;
  run.report("3", ok,
             chi.label() + ": ord_7 delta_1 = " + L.values.at(0).ord.to_string() + ", smallest Kolyvagin prime " +
                 std::to_string(first) + ", ord_7 delta_" + std::to_string(first) + " = " + lad + ", structure " +
                 torsion_text(S, p, "O") + " with O of residue degree " + std::to_string(R.f()) + ", " +
                 fmt_seconds(total) + " (limit 300 s)");
}

// 196794cd1 at p = 5, prime search only.
void conductor_196794(Runner& run) {
  const auto t0 = Clock::now();
  CurveModel E;
  try {
    E = curve_from_label("196794cd1");
  } catch (const Error& e) {
    run.report("4", false, std::string("no model for 196794cd1 in the curve data: ") + e.what());
    return;
  }
  std::vector<u64> found;
  for (u64 l = 2; l < 150; ++l) {
    if (nt::is_prime(l) && certify_kolyvagin_prime(E, FieldSpec::rationals(), 5, 1, l).record) found.push_back(l);
  }
  const double total = seconds_since(t0);
  std::string list;
  for (u64 l : found) list += (list.empty() ? "" : ", ") + std::to_string(l);
  run.report("4", found == std::vector<u64>{11, 31, 131} && total < 60,
             "Kolyvagin primes below 150: {" + list + "}, " + fmt_seconds(total));
}

void birch(Runner& run) {
  analytic::Real worst = 0, worst_literal = 0;
  std::size_t count = 0;
  std::string where;
  for (const char* label : {"11a1", "37a1"}) {
    const auto E = curve_from_label(label);
    const int eps = analytic::root_number(E);
    const auto ev = analytic::build_evaluator(E, eps, 0);
    for (u64 c : {7ULL, 61ULL}) {
      for (const auto& chi : enumerate_characters(FieldSpec::cyclotomic(c))) {
        const auto br = analytic::birch_consistency(E, chi, ev, eps, 30);
        ++count;
        if (br.residual > worst) {
          worst = br.residual;
          where = std::string(label) + " " + chi.label();
        }
        if (br.residual_inverse_gauss > worst_literal) worst_literal = br.residual_inverse_gauss;
      }
    }
  }
  const analytic::Real tol("1e-15");
  run.report("5a", worst_literal < tol,
             "delta_1 vs tau(chibar)^-1 L(E,chi,1)/Omega over " + std::to_string(count) +
                 " characters of Q(mu_7), Q(mu_61) (11a1, 37a1): max residual " + worst_literal.str(3) +
                 " (limit 1e-15)");
  run.report("5a'", worst < tol,
             "delta_1 vs tau(chibar) L(E,chi,1)/Omega, same characters: max residual " + worst.str(3) + " at " +
                 where + " (limit 1e-15)");
}

void hecke(Runner& run) {
  std::mt19937_64 rng(2);
  std::size_t checked = 0, bad = 0;
  for (const char* label : {"11a1", "27a1", "35a1", "37a1"}) {
    const auto E = curve_from_label(label);
    const int eps = analytic::root_number(E);
    const auto ev = analytic::build_evaluator(E, eps, 0);
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 13ULL}) {
      if (E.conductor % q == 0) continue;
      const long aq = trace_of_frobenius(E, q);
      for (int t = 0; t < 200; ++t) {
        const u64 m = 1 + rng() % 1000;
        const i64 a = static_cast<i64>(rng() % (2 * m)) - static_cast<i64>(m);
        for (int s : {1, -1}) {
          // T_q {oo, a/m} = {oo, qa/m} + sum_b {oo, (a + bm)/(qm)}
          mpq_class lhs = ev.evaluate(static_cast<i64>(q) * a, m, s);
          for (u64 b = 0; b < q; ++b) lhs += ev.evaluate(a + static_cast<i64>(b * m), q * m, s);
          ++checked;
          if (lhs != aq * ev.evaluate(a, m, s)) ++bad;
        }
      }
    }
  }
  run.report("5b", bad == 0 && checked > 0,
             std::to_string(checked) + " Hecke identities (q in {2,3,5,7,13}, 200 random a/m per q and curve), " +
                 std::to_string(bad) + " failures");
}

void generator_independence(Runner& run) {
  const u64 p = 5;
  const auto E = curve_from_label("37a1");
  const int eps = analytic::root_number(E);
  const auto ev = analytic::build_evaluator(E, eps, p);
  std::mt19937_64 rng(3);
  const auto chars = enumerate_characters(FieldSpec::cyclotomic(7));
  int cases = 0, bad = 0;
  for (int attempt = 0; attempt < 400 && cases < 20; ++attempt) {
    const auto& chi = chars[rng() % chars.size()];
    const auto primes = find_kolyvagin_primes(E, chi.kernel_field(), p, 1, 3);
    std::vector<KolyvaginPrimeRecord> n;
    for (const auto& r : primes) {
      if (rng() % 2) n.push_back(r);
    }
    if (n.empty() || n.size() > 2) continue;
    const auto R = PadicQuotient::build(p, 4, chi.order());
    const auto v = kurihara_number(chi, n, ev, R, 4);
    auto alt = n;
    for (auto& r : alt) {
      do {
        r.eta = 2 + rng() % (r.l - 3);
      } while (nt::multiplicative_order(r.eta, r.l) != r.l - 1);
    }
    const auto w = kurihara_number(chi, alt, ev, R, 4);
    if (v.ord != w.ord) ++bad;
    ++cases;
  }
  run.report("5c", cases == 20 && bad == 0,
             std::to_string(cases) + " cases (37a1, Q(mu_7), p = 5) with random primitive roots, " +
                 std::to_string(bad) + " valuation changes");
}

void derivative_identities(Runner& run) {
  const u64 p = 5;
  const auto R = PadicQuotient::build(p, 3, 1);
  const auto R1 = PadicQuotient::build(p, 1, 1);
  const GroupDescriptor G({{5, 11}, {5, 31}});
  std::mt19937_64 rng(4);
  auto random_element = [&](const PadicQuotient& ring) {
    GroupRingElement x(G, ring);
    for (std::size_t i = 0; i < G.order(); ++i) x[i] = ring.from_int(static_cast<i64>(rng() % 125));
    return x;
  };
  // Brute force D_l by its defining sum, independent of the library's
  // derivative helpers.
  auto tau = [&](std::uint64_t l, u64 i, const PadicQuotient& ring) {
    std::vector<u64> e(2, 0);
    e[G.factor_of(l)] = i % 5;
    return GroupRingElement::basis(G, ring, G.index(e));
  };
  auto brute_D = [&](std::uint64_t l, const PadicQuotient& ring) {
    GroupRingElement D(G, ring);
    for (u64 i = 1; i < 5; ++i) D = D + tau(l, i, ring).scale(ring.from_int(static_cast<i64>(i)));
    return D;
  };
  auto brute_N = [&](std::uint64_t l, const PadicQuotient& ring) {
    GroupRingElement N(G, ring);
    for (u64 i = 0; i < 5; ++i) N = N + tau(l, i, ring);
    return N;
  };
  int bad = 0, checks = 0;
  const auto one = GroupRingElement::basis(G, R, 0);
  for (std::uint64_t l : {11ULL, 31ULL}) {
    const auto D = brute_D(l, R), N = brute_N(l, R);
    ++checks;
    if (!(D * (tau(l, 1, R) - one) == one.scale(R.from_int(5)) - N)) ++bad;
    for (int t = 0; t < 10; ++t) {
      const auto x = random_element(R);
      ++checks;
      if (!(kolyvagin_derivative(x, {l}) == D * x)) ++bad;
    }
  }

  // D_n x = (-1)^nu (sum_sigma a_sigma prod_l log_l(sigma)) N_n mod p for
  // every x whose lower-order sums vanish mod p; enumerate all coefficient
  // vectors supported on a random pattern and keep those.
  const auto N11 = brute_N(11, R1), N31 = brute_N(31, R1);
  const auto Dn = brute_D(11, R1) * brute_D(31, R1);
  int logs_checked = 0;
  for (int trial = 0; logs_checked < 200 && trial < 200000; ++trial) {
    const auto x = random_element(R1);
    long S = 0, S1 = 0, S2 = 0, S12 = 0;
    for (std::size_t i = 0; i < G.order(); ++i) {
      const auto ex = G.exponents(i);
      const long a = x[i].coeffs()[0].get_si();
      S += a;
      S1 += a * static_cast<long>(ex[0]);
      S2 += a * static_cast<long>(ex[1]);
      S12 += a * static_cast<long>(ex[0] * ex[1]);
    }
    if (S % 5 || S1 % 5 || S2 % 5) continue;
    ++logs_checked;
    // nu = 2, so the sign is +1.
    if (!(Dn * x == (N11 * N31).scale(R1.from_int(S12)))) ++bad;
  }
  run.report("5d", bad == 0 && logs_checked == 200,
             std::to_string(checks) + " telescoping checks and " + std::to_string(logs_checked) +
                 " logarithm-formula checks over G_11 x G_31 at p = 5, " + std::to_string(bad) + " failures");
}

void parity(Runner& run) {
  struct Case {
    const char* label;
    u64 p;
    std::vector<u64> fields;
  };
  const std::vector<Case> cases = {{"11a1", 7, {1, 5, 13, 61}}, {"37a1", 5, {1, 3, 7, 13}}, {"35a1", 7, {1, 3, 13}}};
  std::size_t zeros = 0, nonzero_allowed = 0, violations = 0;
  for (const auto& cs : cases) {
    const auto E = curve_from_label(cs.label);
    const int eps = analytic::root_number(E);
    const auto ev = analytic::build_evaluator(E, eps, cs.p);
    for (u64 c : cs.fields) {
      for (const auto& chi : enumerate_characters(FieldSpec::cyclotomic(c))) {
        if (!chi.is_self_dual() || nt::gcd(chi.conductor(), E.conductor) != 1) continue;
        const auto R = PadicQuotient::build(cs.p, 3, chi.order());
        const auto primes = find_kolyvagin_primes(E, chi.kernel_field(), cs.p, 1, 3);
        // n = 1, every single prime, every pair.
        std::vector<std::vector<KolyvaginPrimeRecord>> ns{{}};
        for (std::size_t i = 0; i < primes.size(); ++i) {
          ns.push_back({primes[i]});
          for (std::size_t j = i + 1; j < primes.size(); ++j) ns.push_back({primes[i], primes[j]});
        }
        for (const auto& n : ns) {
          u64 terms = nt::euler_phi(chi.conductor());
          for (const auto& r : n) terms *= r.l - 1;
          if (terms > 40000000ULL) continue;
          const auto v = kurihara_number(chi, n, ev, R, 3);
          if (!parity_allows(static_cast<int>(n.size()), eps, chi, E.conductor)) {
            ++zeros;
            if (!v.value.is_zero()) ++violations;
          } else if (!v.value.is_zero()) {
            ++nonzero_allowed;
          }
        }
      }
    }
  }
  run.report("5e", violations == 0 && zeros > 0,
             std::to_string(zeros) + " wrong-parity values for self-dual characters (11a1, 37a1, 35a1), " +
                 std::to_string(violations) + " nonzero; " + std::to_string(nonzero_allowed) +
                 " right-parity values nonzero");
}

void round_trip(Runner& run) {
  std::mt19937_64 rng(6);
  const PadicQuotient rings[] = {PadicQuotient::build(5, 40, 1), PadicQuotient::build(5, 40, 3),
                                 PadicQuotient::build(7, 30, 8)};
  int bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const PadicQuotient& R = rings[trial % 3];
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
    const auto fitt = oracle::minor_fitting(R, rank, tors);
    std::vector<Exponent> n;
    for (std::size_t i = 0; i < fitt.size(); ++i) {
      const bool wrong = self_dual && i >= static_cast<std::size_t>(rank) && (i - rank) % 2 == 1;
      n.push_back(wrong ? Exponent::infinity() : fitt[i]);
    }
    const auto rep = selmer_structure(oracle::make_ladder(n, self_dual));
    std::sort(tors.rbegin(), tors.rend());
    if (rep.rank != rank || rep.torsion != tors || rep.fitting != fitt) ++bad;
  }
  run.report("5f", bad == 0, "500 synthesized modules over Z_5, Z_5[mu_3] and Z_7[mu_8], " + std::to_string(bad) + " mismatches");
}

void plogs(Runner& run) {
  std::size_t primes = 0, values = 0, bad = 0;
  for (const char* label : {"37a1", "11a1"}) {
    const auto E = curve_from_label(label);
    for (auto [p, k] : {std::pair<u64, int>{5, 1}, {5, 2}, {7, 1}, {13, 1}}) {
      if (E.conductor == 11 && p == 5) continue;
      for (u64 l = 2; l < 10000; ++l) {
        if (!nt::is_prime(l)) continue;
        const auto cert = certify_kolyvagin_prime(E, FieldSpec::rationals(), p, k, l);
        if (!cert.record) continue;
        const auto& rec = *cert.record;
        const PlogTable table(rec, p, rec.k_l);
        for (u64 a = 1; a < l; ++a) {
          const u64 want = oracle::brute_plog(l, rec.eta, a, p, rec.k_l);
          ++values;
          if (plog(rec, static_cast<i64>(a), p, rec.k_l) != want || table[a] != want) ++bad;
        }
        ++primes;
      }
    }
  }
  run.report("5g", bad == 0 && primes > 0,
             std::to_string(primes) + " certified primes below 10^4, " + std::to_string(values) +
                 " discrete logs, " + std::to_string(bad) + " mismatches");
}

void idempotents(Runner& run) {
  std::size_t groups = 0, bad = 0;
  for (u64 p : {5ULL, 7ULL, 101ULL}) {
    for (const auto& orders : oracle::all_abelian_groups(30)) {
      const GroupDescriptor G = oracle::group_of(orders);
      if (G.order() % p == 0) continue;
      const auto d = decompose_group_ring(G, p, 3);
      ++groups;
      GroupRingElement sum(G, d.ring);
      std::size_t total = 0;
      for (std::size_t i = 0; i < d.components.size(); ++i) {
        const auto& ei = d.components[i].idempotent;
        total += d.components[i].orbit.size();
        sum = sum + ei;
        if (!(ei * ei == ei)) ++bad;
        for (std::size_t j = i + 1; j < d.components.size(); ++j) {
          if (!(ei * d.components[j].idempotent).is_zero()) ++bad;
        }
      }
      if (total != G.order() || !(sum == GroupRingElement::basis(G, d.ring, 0))) ++bad;
    }
  }
  run.report("5h", bad == 0 && groups > 0,
             std::to_string(groups) + " (group, p) pairs with #G <= 30, p in {5,7,101}, in O_e/p^3: " +
                 std::to_string(bad) + " failures");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<std::string> only;
  app.add_option("--only", only, "criterion groups to run: 1 2 3 4 5a ... 5h")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  Runner run({only.begin(), only.end()});
  run.group("1", [&] { mu61_at_101(run); });
  run.group("2", [&] { mu89_large_prime(run); });
  run.group("3", [&] { mu51_at_7(run); });
  run.group("4", [&] { conductor_196794(run); });
  run.group("5a", [&] { birch(run); });
  run.group("5b", [&] { hecke(run); });
  run.group("5c", [&] { generator_independence(run); });
  run.group("5d", [&] { derivative_identities(run); });
  run.group("5e", [&] { parity(run); });
  run.group("5f", [&] { round_trip(run); });
  run.group("5g", [&] { plogs(run); });
  run.group("5h", [&] { idempotents(run); });

  std::cout << run.size() - static_cast<std::size_t>(run.failures()) << "/" << run.size() << " criteria passed"
            << std::endl;
  return run.failures() == 0 ? 0 : 1;
}
