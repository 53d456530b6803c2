#include <gtest/gtest.h>

#include <algorithm>

#include "celgot/bridge.hpp"
#include "celgot/errors.hpp"
#include "oracles.hpp"

using namespace celgot;

namespace {

Carrier chain(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return Carrier::of_atoms("C" + std::to_string(n), names);
}

// Largest element of a finite set of numerals, 0 for the empty set.
Value max_of(const EffectValue& v) {
  int m = 0;
  for (const auto& e : v.entries()) m = std::max(m, std::stoi(e.value.name()));
  return Value::atom(std::to_string(m));
}

oracle::PowersetTable table_of(const KleisliMap& f) {
  oracle::PowersetTable t;
  for (const auto& [k, v] : f.table()) {
    auto& row = t[k.name()];
    for (const auto& e : v.entries()) row.insert({e.value.is(ValueKind::Inl) ? 'y' : 'x', e.value.inner().name()});
  }
  return t;
}

Coalgebra plain_coalgebra(const KleisliMap& f) { return Coalgebra::from_map(PMonadInstance::plain(f.monad()), f); }

}  // namespace

TEST(Bridge, CollapseOfUnitIsUnit) {
  for (auto m : {EffectMonadId::maybe(), EffectMonadId::powerset()}) {
    for (const auto& inst : {PMonadInstance::plain(m), PMonadInstance::with_sig(m, Signature::delay())}) {
      auto d = bridge::delta_collapse(res::eta_nu(inst, Value::atom("x")));
      EXPECT_TRUE(d.exact);
      EXPECT_EQ(d.value, effects::unit(m, Value::atom("x")));
    }
  }
}

TEST(Bridge, EndlessDelayCollapsesToBottom) {
  for (auto m : {EffectMonadId::maybe(), EffectMonadId::powerset()}) {
    auto inst = PMonadInstance::with_sig(m, Signature::delay());
    auto x = Carrier::numbered("X", "x", 1);
    auto step = KleisliMap::from_fn(x, m, [&](const Value& s) {
      return effects::unit(m, pmonad::node(sig::layer(Signature::delay(), "delay", {s})));
    });
    auto d = bridge::delta_collapse(res::coit(Coalgebra::from_map(inst, step))(x[0]));
    EXPECT_TRUE(d.exact);
    EXPECT_EQ(d.value, effects::bottom(m));
  }
}

TEST(Bridge, CollapseRejectsWideSignatures) {
  auto inst = PMonadInstance::with_sig(EffectMonadId::powerset(), Signature::actions({"a"}));
  EXPECT_THROW(bridge::delta_collapse(res::eta_nu(inst, Value::atom("x"))), ShapeError);
}

TEST(Bridge, CollapseIsReachability) {
  auto p = EffectMonadId::powerset();
  auto x = Carrier::numbered("X", "x", 2);
  auto y = Carrier::numbered("Y", "y", 2);
  for (const auto& f : effects::enumerate_maps(p, x, Carrier::sum(y, x))) {
    auto expected = oracle::powerset_iterate(table_of(f));
    auto trees = res::coit(plain_coalgebra(f));
    for (const auto& s : x.elements()) {
      auto d = bridge::delta_collapse(trees(s));
      std::set<std::string> names;
      for (const auto& e : d.value.entries()) names.insert(e.value.name());
      ASSERT_EQ(names, expected[s.name()]) << f.str();
    }
  }
}

TEST(Bridge, MuDeltaIsAnEilenbergMooreAlgebra) {
  std::mt19937_64 rng(73);
  auto p = EffectMonadId::powerset();
  auto inst = PMonadInstance::plain(p);
  auto em = bridge::mu_delta_algebra(p);
  auto atoms = Carrier::numbered("A", "a", 2);
  std::vector<Value> payloads;
  for (const auto& v : effects::enumerate(p, atoms)) payloads.push_back(Value::effect(v));
  Carrier effect_leaves("TA", payloads);
  for (const auto& v : payloads) EXPECT_EQ(em.chi(res::eta_nu(inst, v)), v);

  std::vector<ResTree> two_level;
  for (int i = 0; i < 30; ++i) {
    auto inner = res::coit(res::random_coalgebra(inst, effect_leaves, 3, rng));
    std::vector<Value> trees;
    for (const auto& s : {"s1", "s2", "s3"}) trees.push_back(inner(Value::atom(s)).value());
    Carrier tree_leaves("F", trees);
    auto outer = res::random_coalgebra(inst, tree_leaves, 2, rng);
    two_level.push_back(res::coit(outer)(Value::atom("s1")));
  }
  auto r = alg::check_em_laws(em, two_level);
  EXPECT_TRUE(r.ok()) << r.witness;
}

TEST(Bridge, AlgebraIterationFromMonadIteration) {
  auto p = EffectMonadId::powerset();
  auto a = chain(3);
  auto x = Carrier::numbered("X", "x", 2);
  pmonad::TStructure join = max_of;
  auto j = bridge::codiag_elgot(p, "max3", a, join);
  for (const auto& e : effects::enumerate_maps(p, x, Carrier::sum(a, x))) {
    auto direct = bridge::iistar_from_istar(join, e);
    auto composite = bridge::iistar_from_istar_composite(join, e);
    auto reach = oracle::powerset_iterate(table_of(e));
    auto sol = j.iterate(plain_coalgebra(e));
    for (const auto& s : x.elements()) {
      int m = 0;
      for (const auto& n : reach[s.name()]) m = std::max(m, std::stoi(n));
      Value expected = Value::atom(std::to_string(m));
      ASSERT_EQ(direct(s), expected) << e.str();
      ASSERT_EQ(composite(s), expected) << e.str();
      ASSERT_EQ(sol(s), expected) << e.str();
    }
  }
}

TEST(Bridge, MonadIterationFromAlgebraIteration) {
  for (auto m : {EffectMonadId::maybe(), EffectMonadId::powerset()}) {
    auto alg = bridge::free_t_algebra(m);
    for (std::size_t nx = 1; nx <= 2; ++nx) {
      auto x = Carrier::numbered("X", "x", nx);
      auto y = Carrier::numbered("Y", "y", 2);
      for (const auto& e : effects::enumerate_maps(m, x, Carrier::sum(y, x))) {
        ASSERT_EQ(bridge::istar_from_iistar(alg, e), effects::iterate(e).value) << e.str();
      }
    }
  }
}

TEST(Bridge, DerivedOperatorSatisfiesTheLaws) {
  for (auto m : {EffectMonadId::maybe(), EffectMonadId::powerset()}) {
    laws::SuiteOptions opts;
    opts.monad = m;
    auto report = laws::run_suite(opts, bridge::derived_operator(m));
    EXPECT_EQ(report.failures(), 0u) << m.str();
    EXPECT_EQ(report.nonconvergent(), 0u) << m.str();
    EXPECT_GT(report.totals.at("weak").pass, 0u);
  }
}

TEST(Bridge, FlatteningCommutesWithIterationOnCodiagonalAlgebras) {
  std::mt19937_64 rng(79);
  auto x = Carrier::numbered("X", "x", 2);
  for (const auto& spec : alg::shipped_codiagonal_algebras()) {
    auto a = alg::continuous_elgot(spec);
    std::vector<Value> leaves;
    for (int i = 0; i < 6; ++i) leaves.push_back(Value::effect(pmonad::random_hash(spec.inst, spec.carrier, x, rng)));
    std::sort(leaves.begin(), leaves.end());
    leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
    Carrier outer_leaves("L", leaves);
    for (int i = 0; i < 30; ++i) {
      std::map<Value, HashValue> t;
      for (const auto& s : x.elements()) t.emplace(s, pmonad::random_hash(spec.inst, outer_leaves, x, rng));
      Coalgebra e{spec.inst, [t](const Value& s) { return t.at(s); }, x};
      auto r = bridge::check_codiag_alg(a, e, x);
      ASSERT_EQ(r.verdict, Verdict::Pass) << spec.name << " " << r.witness;
    }
  }
}

TEST(Bridge, FlatteningFailsWhenTheNodePartIsNotTheIdentity) {
  auto p = EffectMonadId::powerset();
  auto inst = PMonadInstance::plain(p);
  CppoAlgebraSpec spec;
  spec.name = "max2-const0";
  spec.inst = inst;
  spec.carrier = chain(2);
  spec.leq = alg::chain_order(2);
  spec.bottom = Value::atom("0");
  spec.structure = pmonad::recompose(inst, max_of, [](const Value&) { return Value::atom("0"); });
  ASSERT_EQ(pmonad::check_hash_algebra(inst, spec.carrier, spec.structure), std::nullopt);
  auto a = alg::continuous_elgot(spec);

  auto x = Carrier::of_atoms("X", {"x", "x'"});
  Value inner = Value::effect(EffectValue::set(p, {pmonad::leaf(Value::atom("1"))}));
  Coalgebra e{inst, [&](const Value& s) {
                return s == x[0] ? EffectValue::set(p, {pmonad::node(x[1])}) : EffectValue::set(p, {pmonad::leaf(inner)});
              },
              x};
  // Flattening first routes x through a node, which the structure sends to 0;
  // solving the inner equation first yields the leaf 1 at x.
  Coalgebra flat{inst, [&](const Value& s) { return pmonad::hash_mult(inst, e.step(s)); }, x};
  EXPECT_EQ(a.iterate(flat)(x[0]), Value::atom("0"));
  auto r = bridge::check_codiag_alg(a, e, x);
  EXPECT_EQ(r.verdict, Verdict::Fail);
  EXPECT_NE(r.witness.find("0 vs 1"), std::string::npos) << r.witness;
}

TEST(Bridge, TracesOfDelayedSystemOverTheTraceMonad) {
  auto m = EffectMonadId::traces({"a"});
  auto inst = PMonadInstance::with_sig(m, Signature::delay());
  Coalgebra c{inst, [&](const Value& s) {
                return EffectValue::from_entries(
                    m, {{{"a"}, pmonad::node(sig::layer(Signature::delay(), "delay", {s}))}, {{}, pmonad::leaf(bridge::tick())}});
              },
              std::nullopt};
  auto words = bridge::trace_set(c, Value::atom("x"), 3);
  EXPECT_EQ(words, (std::vector<Word>{{}, {"a"}, {"a", "a"}, {"a", "a", "a"}}));
}

TEST(Bridge, TracesOfActionSystemMatchSearch) {
  auto p = EffectMonadId::powerset();
  auto inst = PMonadInstance::with_sig(p, Signature::actions({"a", "b"}));
  auto lts = oracle::example_lts();
  Coalgebra c{inst, [&](const Value& s) {
                std::vector<Value> out;
                if (lts.accepting.count(s.name())) out.push_back(pmonad::leaf(bridge::tick()));
                for (const auto& [letter, target] : lts.moves.at(s.name())) {
                  out.push_back(pmonad::node(sig::layer(*inst.sig, letter, {Value::atom(target)})));
                }
                return EffectValue::set(p, out);
              },
              std::nullopt};
  for (std::size_t maxlen : {0u, 3u, 5u, 7u}) {
    for (const auto& start : {"x1", "x2", "x3"}) {
      std::vector<std::string> got;
      for (const auto& w : bridge::trace_set(c, Value::atom(start), maxlen)) {
        std::string s;
        for (const auto& l : w) s += l;
        got.push_back(s);
      }
      EXPECT_EQ(got, oracle::bfs_traces(lts, start, maxlen)) << start << " " << maxlen;
    }
  }
}
