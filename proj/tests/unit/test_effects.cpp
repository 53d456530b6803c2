#include <gtest/gtest.h>

#include "celgot/effects.hpp"
#include "celgot/errors.hpp"
#include "oracles.hpp"

using namespace celgot;

namespace {

std::vector<EffectMonadId> enumerable_monads() { return {EffectMonadId::maybe(), EffectMonadId::powerset()}; }

Carrier atoms(const std::string& name, const std::string& prefix, std::size_t n) {
  return Carrier::numbered(name, prefix, n);
}

}  // namespace

TEST(Effects, EnumerationCounts) {
  EXPECT_EQ(effects::enumerate(EffectMonadId::maybe(), atoms("C", "c", 2)).size(), 3u);
  EXPECT_EQ(effects::enumerate(EffectMonadId::powerset(), atoms("C", "c", 3)).size(), 8u);
  EXPECT_EQ(effects::enumerate_maps(EffectMonadId::maybe(), atoms("X", "x", 2), atoms("C", "c", 2)).size(), 9u);
  EXPECT_THROW(effects::enumerate(EffectMonadId::powerset(), atoms("C", "c", 20), 1000), BudgetExceeded);
  EXPECT_THROW(effects::enumerate(EffectMonadId::traces({"a"}, 2), atoms("C", "c", 1)), ShapeError);
}

TEST(Effects, KleisliTripleLawsExhaustive) {
  for (const auto& monad : enumerable_monads()) {
    for (std::size_t nx = 0; nx <= 2; ++nx) {
      for (std::size_t ny = 0; ny <= 2; ++ny) {
        const Carrier x = atoms("X", "x", nx);
        const Carrier y = atoms("Y", "y", ny);
        const Carrier z = atoms("Z", "z", 2);
        for (const auto& v : effects::enumerate(monad, x)) {
          EXPECT_EQ(effects::bind(v, [&](const Value& a) { return effects::unit(monad, a); }), v);
        }
        for (const auto& f : effects::enumerate_maps(monad, x, y)) {
          for (const auto& a : x.elements()) EXPECT_EQ(effects::bind(effects::unit(monad, a), f.fn()), f(a));
          for (const auto& g : effects::enumerate_maps(monad, y, z)) {
            for (const auto& v : effects::enumerate(monad, x)) {
              auto lhs = effects::bind(effects::bind(v, f.fn()), g.fn());
              auto rhs = effects::bind(v, [&](const Value& a) { return effects::bind(f(a), g.fn()); });
              ASSERT_EQ(lhs, rhs) << monad.str() << " " << v.str();
            }
          }
        }
      }
    }
  }
}

TEST(Effects, MaybeHoldsAtMostOneEntry) {
  auto m = EffectMonadId::maybe();
  EXPECT_THROW(EffectValue::from_entries(m, {{{}, Value::atom("a")}, {{}, Value::atom("b")}}), ShapeError);
  EXPECT_TRUE(EffectValue::nothing().is_nothing());
}

TEST(Effects, HorizonDropsLongWords) {
  auto m = EffectMonadId::traces({"a", "b"}, 1);
  auto v = EffectValue::from_entries(m, {{{"a"}, Value::atom("x")}, {{"a", "b"}, Value::atom("y")}});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.entries()[0].value, Value::atom("x"));
  auto longer = effects::prefix({"b"}, v);
  EXPECT_TRUE(longer.empty());
}

TEST(Effects, TraceBindConcatenatesWords) {
  auto m = EffectMonadId::traces({"a", "b"});
  auto v = EffectValue::from_entries(m, {{{"a"}, Value::atom("x")}});
  auto out = effects::bind(v, [&](const Value&) {
    return EffectValue::from_entries(m, {{{"b"}, Value::atom("y")}, {{}, Value::atom("z")}});
  });
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.entries()[0].word, (Word{"a"}));
  EXPECT_EQ(out.entries()[1].word, (Word{"a", "b"}));
}

TEST(Effects, OrderAndJoin) {
  auto p = EffectMonadId::powerset();
  auto c = atoms("C", "c", 2);
  auto a = EffectValue::set(p, {c[0]});
  auto b = EffectValue::set(p, {c[0], c[1]});
  EXPECT_TRUE(effects::order_leq(a, b));
  EXPECT_FALSE(effects::order_leq(b, a));
  EXPECT_EQ(effects::join(a, b), b);
  auto m = EffectMonadId::maybe();
  EXPECT_TRUE(effects::order_leq(effects::bottom(m), EffectValue::just(c[0])));
  EXPECT_FALSE(effects::order_leq(EffectValue::just(c[0]), EffectValue::just(c[1])));
  EXPECT_THROW(effects::join(EffectValue::just(c[0]), EffectValue::just(c[1])), ContractViolation);
}

TEST(Effects, IterationMatchesReachabilityOracle) {
  auto p = EffectMonadId::powerset();
  for (std::size_t nx = 1; nx <= 2; ++nx) {
    for (std::size_t ny = 1; ny <= 2; ++ny) {
      const Carrier x = atoms("X", "x", nx);
      const Carrier y = atoms("Y", "y", ny);
      for (const auto& f : effects::enumerate_maps(p, x, Carrier::sum(y, x))) {
        oracle::PowersetTable table;
        for (const auto& [k, v] : f.table()) {
          auto& row = table[k.name()];
          for (const auto& e : v.entries()) {
            row.insert({e.value.is(ValueKind::Inl) ? 'y' : 'x', e.value.inner().name()});
          }
        }
        auto expected = oracle::powerset_iterate(table);
        auto got = effects::iterate(f).value;
        for (const auto& a : x.elements()) {
          std::set<std::string> names;
          for (const auto& e : got(a).entries()) names.insert(e.value.name());
          ASSERT_EQ(names, expected[a.name()]) << f.str();
        }
      }
    }
  }
}

TEST(Effects, MaybeIterationMatchesPathOracle) {
  auto m = EffectMonadId::maybe();
  const Carrier x = atoms("X", "x", 2);
  const Carrier y = atoms("Y", "y", 2);
  for (const auto& f : effects::enumerate_maps(m, x, Carrier::sum(y, x))) {
    oracle::MaybeTable table;
    for (const auto& [k, v] : f.table()) {
      if (v.is_nothing()) {
        table[k.name()] = std::nullopt;
      } else {
        const Value& o = v.just_value();
        table[k.name()] = oracle::Tagged{o.is(ValueKind::Inl) ? 'y' : 'x', o.inner().name()};
      }
    }
    auto expected = oracle::maybe_iterate(table);
    auto got = effects::iterate(f).value;
    for (const auto& a : x.elements()) {
      const auto& e = expected[a.name()];
      if (e) {
        EXPECT_EQ(got(a), EffectValue::just(Value::atom(*e)));
      } else {
        EXPECT_TRUE(got(a).is_nothing());
      }
    }
  }
}

TEST(Effects, DepthPolicyTagsExactness) {
  auto m = EffectMonadId::maybe();
  const Carrier x = atoms("X", "x", 2);
  const Carrier y = atoms("Y", "y", 1);
  auto f = KleisliMap::from_fn(x, m, [&](const Value& a) {
    return a == x[0] ? EffectValue::just(Value::inr(x[1])) : EffectValue::just(Value::inl(y[0]));
  });
  auto one = effects::iterate(f, effects::IterationPolicy::depth(1));
  EXPECT_FALSE(one.exact);
  EXPECT_TRUE(one.value(x[0]).is_nothing());
  auto two = effects::iterate(f, effects::IterationPolicy::depth(2));
  EXPECT_TRUE(two.exact);
  EXPECT_EQ(two.value(x[0]), EffectValue::just(y[0]));
}

TEST(Effects, UnboundedTracesDoNotConverge) {
  auto t = EffectMonadId::traces({"a"});
  const Carrier x = atoms("X", "x", 1);
  auto f = KleisliMap::from_fn(x, t, [&](const Value& a) {
    return EffectValue::from_entries(t, {{{"a"}, Value::inr(a)}, {{}, Value::inl(Value::atom("y"))}});
  });
  try {
    effects::iterate(f, effects::IterationPolicy::exact(16));
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.last_approximant().size(), 1u);
  }
  auto bounded = t.with_horizon(3);
  auto g = KleisliMap::from_fn(x, bounded, [&](const Value& a) {
    return EffectValue::from_entries(bounded, {{{"a"}, Value::inr(a)}, {{}, Value::inl(Value::atom("y"))}});
  });
  EXPECT_EQ(effects::iterate(g).value(x[0]).size(), 4u);
}

TEST(Effects, CoproductHelpers) {
  auto p = EffectMonadId::powerset();
  const Carrier x = atoms("X", "x", 1);
  const Carrier y = atoms("Y", "y", 1);
  auto inl = effects::inl(p, x, y);
  auto inr = effects::inr(p, x, y);
  auto both = effects::copair(inl, inr);
  EXPECT_EQ(both(Value::inl(x[0])), effects::unit(p, Value::inl(x[0])));
  EXPECT_EQ(effects::codiag(p, x)(Value::inr(x[0])), effects::unit(p, x[0]));
  Value v = Value::inl(Value::inr(Value::atom("b")));
  EXPECT_EQ(effects::assoc_inv(effects::assoc(v)), v);
  EXPECT_THROW(effects::assoc(Value::atom("b")), ShapeError);
}

TEST(Effects, ParseRoundTrip) {
  auto p = EffectMonadId::powerset();
  const Carrier c = atoms("C", "c", 2);
  for (const auto& v : effects::enumerate(p, c)) EXPECT_EQ(effects::parse_effect(p, c, v.str()), v);
  auto m = EffectMonadId::maybe();
  for (const auto& v : effects::enumerate(m, c)) EXPECT_EQ(effects::parse_effect(m, c, v.str()), v);
}
