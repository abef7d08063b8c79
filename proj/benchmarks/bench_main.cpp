#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>

#include "kurihara/analytic.hpp"
#include "kurihara/characters.hpp"
#include "kurihara/curve.hpp"
#include "kurihara/group_ring.hpp"
#include "kurihara/kurihara.hpp"
#include "kurihara/numtheory.hpp"
#include "kurihara/padic.hpp"
#include "kurihara/selmer.hpp"

using namespace kurihara;

namespace {

const CurveModel& curve(const char* label) {
  static std::map<std::string, CurveModel> cache;
  auto it = cache.find(label);
  if (it == cache.end()) it = cache.emplace(label, curve_from_label(label)).first;
  return it->second;
}

const SymbolEvaluator& evaluator_11a1() {
  static const SymbolEvaluator ev = analytic::build_evaluator(curve("11a1"), 1, 101);
  return ev;
}

}  // namespace

static void BM_BuildEvaluator(benchmark::State& state) {
  const char* labels[] = {"11a1", "37a1", "35a1", "27a1"};
  const auto& E = curve(labels[state.range(0)]);
  const int eps = analytic::root_number(E);
  for (auto _ : state) benchmark::DoNotOptimize(analytic::build_evaluator(E, eps, 0));
  state.SetLabel(labels[state.range(0)]);
}
BENCHMARK(BM_BuildEvaluator)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_SymbolEvaluate(benchmark::State& state) {
  const auto& ev = evaluator_11a1();
  std::mt19937_64 rng(1);
  const std::uint64_t m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    const auto a = static_cast<std::int64_t>(rng() % m);
    benchmark::DoNotOptimize(ev.raw(a, m, 1));
  }
}
BENCHMARK(BM_SymbolEvaluate)->Arg(61)->Arg(61 * 64237)->Arg(61LL * 2528233);

static void BM_Plog(benchmark::State& state) {
  const auto cert = certify_kolyvagin_prime(curve("11a1"), select_pinned(61, 2, {}, 101).kernel_field(), 101, 1, 64237);
  std::mt19937_64 rng(2);
  for (auto _ : state) {
    const auto a = static_cast<std::int64_t>(1 + rng() % 64236);
    benchmark::DoNotOptimize(plog(*cert.record, a, 101, 1));
  }
}
BENCHMARK(BM_Plog);

static void BM_PlogTable(benchmark::State& state) {
  const auto cert = certify_kolyvagin_prime(curve("11a1"), select_pinned(61, 2, {}, 101).kernel_field(), 101, 1, 64237);
  for (auto _ : state) benchmark::DoNotOptimize(PlogTable(*cert.record, 101, 1));
}
BENCHMARK(BM_PlogTable)->Unit(benchmark::kMillisecond);

static void BM_TraceOfFrobenius(benchmark::State& state) {
  const auto& E = curve("37a1");
  std::uint64_t l = static_cast<std::uint64_t>(state.range(0));
  while (!nt::is_prime(l)) ++l;
  for (auto _ : state) benchmark::DoNotOptimize(trace_of_frobenius(E, l));
}
BENCHMARK(BM_TraceOfFrobenius)->Arg(1000)->Arg(1000000)->Arg(1000000000)->Arg(1000000000000LL);

static void BM_KolyvaginSearch(benchmark::State& state) {
  const auto chi = select_pinned(61, 2, {}, 101);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_kolyvagin_primes(curve("11a1"), chi.kernel_field(), 101, 1, 1));
  }
}
BENCHMARK(BM_KolyvaginSearch)->Unit(benchmark::kMillisecond);

// delta_{n,chi} for 11a1 over Q(mu_61) at 101; level 0 is the order-20
// character, level 1 the quadratic one with l = 64237.
static void BM_KuriharaNumber(benchmark::State& state) {
  const auto& ev = evaluator_11a1();
  const auto& E = curve("11a1");
  SumOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  if (state.range(0) == 0) {
    CharacterPin pin;
    pin.at = 2;
    pin.residue = 60;
    const auto chi = select_pinned(61, 20, {pin}, 101);
    const auto R = PadicQuotient::build(101, 5, 20);
    for (auto _ : state) benchmark::DoNotOptimize(kurihara_number(chi, {}, ev, R, 5, opts));
  } else {
    const auto chi = select_pinned(61, 2, {}, 101);
    const auto cert = certify_kolyvagin_prime(E, chi.kernel_field(), 101, 1, 64237);
    const auto R = PadicQuotient::build(101, 5, 2);
    for (auto _ : state) benchmark::DoNotOptimize(kurihara_number(chi, {*cert.record}, ev, R, 5, opts));
  }
}
BENCHMARK(BM_KuriharaNumber)->Args({0, 1})->Args({1, 1})->Args({1, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_CyclotomicMul(benchmark::State& state) {
  const auto R = PadicQuotient::build(static_cast<std::uint64_t>(state.range(0)), 5, static_cast<std::uint64_t>(state.range(1)));
  auto x = R.zeta_power(1) + R.from_int(3);
  const auto y = R.zeta_power(2) + R.from_int(7);
  for (auto _ : state) {
    x = x * y;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_CyclotomicMul)->Args({101, 20})->Args({7, 8})->Args({472558791937LL, 88});

static void BM_DecomposeGroupRing(benchmark::State& state) {
  const auto G = unit_group_descriptor(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_group_ring(G, 101, 3));
}
BENCHMARK(BM_DecomposeGroupRing)->Arg(7)->Arg(61)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
