#include <benchmark/benchmark.h>

#include <random>

#include "celgot/elgot.hpp"
#include "celgot/resumption.hpp"

using namespace celgot;

static void BM_TruncateRandomTree(benchmark::State& state) {
  std::mt19937_64 rng(7);
  auto inst = PMonadInstance::with_sig(EffectMonadId::powerset(), Signature::actions({"a", "b"}));
  auto c = res::random_coalgebra(inst, Carrier::numbered("A", "a", 2), 8, rng);
  auto t = res::coit(c)(Value::atom("s1"));
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(res::truncate(t, depth));
}
BENCHMARK(BM_TruncateRandomTree)->Arg(4)->Arg(8)->Arg(12);

static void BM_KleisliLiftThenObserve(benchmark::State& state) {
  std::mt19937_64 rng(11);
  auto inst = PMonadInstance::with_sig(EffectMonadId::powerset(), Signature::actions({"a"}));
  auto leaves = Carrier::numbered("A", "a", 2);
  auto c = res::random_coalgebra(inst, leaves, 4, rng);
  auto k = res::random_coalgebra(inst, Carrier::numbered("B", "b", 2), 2, rng);
  auto trees = res::coit(k);
  TreeFn f = [&](const Value& v) { return trees(Value::atom(v.name() == "a1" ? "s1" : "s2")); };
  for (auto _ : state) {
    auto t = res::kleisli_nu(f)(res::coit(c)(Value::atom("s1")));
    benchmark::DoNotOptimize(res::truncate(t, 6));
  }
}
BENCHMARK(BM_KleisliLiftThenObserve);

static void BM_ContinuousSolve(benchmark::State& state) {
  std::mt19937_64 rng(13);
  auto spec = alg::shipped_algebras().front();
  auto a = alg::continuous_elgot(spec);
  auto c = res::random_coalgebra(spec.inst, spec.carrier, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    auto sol = a.iterate(c);
    benchmark::DoNotOptimize(sol(Value::atom("s1")));
  }
}
BENCHMARK(BM_ContinuousSolve)->Arg(2)->Arg(8)->Arg(32);
