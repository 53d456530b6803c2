#include <benchmark/benchmark.h>

#include "celgot/effects.hpp"
#include "celgot/lawcheck.hpp"
#include "celgot/speclang.hpp"

using namespace celgot;

namespace {

// x_i steps to x_{i+1} and to the exit; the last state loops.
KleisliMap ladder(const EffectMonadId& m, std::size_t n) {
  auto x = Carrier::numbered("X", "x", n);
  return KleisliMap::from_fn(x, m, [&, n](const Value& v) {
    std::size_t i = x.index_of(v);
    Value next = Value::inr(x[std::min(i + 1, n - 1)]);
    if (m.kind() == MonadKind::Maybe) return EffectValue::just(i + 1 == n ? Value::inl(Value::atom("y")) : next);
    return EffectValue::set(m, {next, Value::inl(Value::atom("y" + std::to_string(i % 3)))});
  });
}

}  // namespace

static void BM_KleeneMaybe(benchmark::State& state) {
  auto f = ladder(EffectMonadId::maybe(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(effects::iterate(f));
}
BENCHMARK(BM_KleeneMaybe)->Arg(4)->Arg(16)->Arg(64);

static void BM_KleenePowerset(benchmark::State& state) {
  auto f = ladder(EffectMonadId::powerset(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(effects::iterate(f));
}
BENCHMARK(BM_KleenePowerset)->Arg(4)->Arg(16)->Arg(64);

static void BM_LawSuiteMaybe(benchmark::State& state) {
  laws::SuiteOptions opts;
  opts.max_size = static_cast<std::size_t>(state.range(0));
  opts.laws = {LawId::Fixpoint, LawId::Naturality, LawId::Codiagonal, LawId::Weak};
  for (auto _ : state) benchmark::DoNotOptimize(laws::run_suite(opts, laws::kleene()).failures());
}
BENCHMARK(BM_LawSuiteMaybe)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ExampleTraces(benchmark::State& state) {
  auto sys = spec::compile(spec::parse("sig actions a b\nx1 = a.(x2 + x3)\nx2 = a.x1 + b.x3\nx3 = a.x1 + tick\n"));
  const auto maxlen = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spec::traces(sys, "x3", maxlen));
}
BENCHMARK(BM_ExampleTraces)->Arg(3)->Arg(6)->Arg(9);
