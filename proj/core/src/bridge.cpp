#include "celgot/bridge.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "celgot/errors.hpp"

namespace celgot::bridge {

namespace {

const Value& only_child(const PMonadInstance& inst, const Value& payload, std::vector<Value>& scratch) {
  scratch = pmonad::node_children(inst, payload);
  if (scratch.size() != 1) throw ShapeError("collapsing needs unary nodes, got " + payload.str());
  return scratch.front();
}

void require_delay(const PMonadInstance& inst) {
  if (inst.sig && inst.sig->kind() != SigKind::Delay) {
    throw ShapeError("collapsing is defined for the delay signature only, not " + inst.sig->str());
  }
}

EffectValue delta_depth(const ResTree& t, std::size_t n, std::map<std::pair<std::uint64_t, std::size_t>, EffectValue>& memo) {
  const PMonadInstance& inst = t.inst();
  if (n == 0) return effects::bottom(inst.monad);
  auto key = std::make_pair(t.id(), n);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<Value> scratch;
  EffectValue v = effects::bind(t.out(), [&](const Value& e) {
    if (pmonad::is_leaf(e)) return effects::unit(inst.monad, e.inner());
    return delta_depth(ResTree::from_value(only_child(inst, e.inner(), scratch)), n - 1, memo);
  });
  memo.emplace(key, v);
  return v;
}

// Kleene iteration of an equation over the states reachable from x; node
// payloads of the plain instance are the states themselves.
KleisliMap reachable_equation(const Coalgebra& e, const Value& x) {
  std::vector<Value> order;
  std::map<Value, EffectValue> table;
  std::set<Value> seen{x};
  std::deque<Value> queue{x};
  while (!queue.empty()) {
    Value s = queue.front();
    queue.pop_front();
    EffectValue v = e.step(s);
    for (const auto& entry : v.entries()) {
      if (pmonad::is_leaf(entry.value)) continue;
      for (const auto& c : pmonad::node_children(e.inst, entry.value.inner())) {
        if (seen.insert(c).second) queue.push_back(c);
      }
    }
    order.push_back(s);
    table.emplace(s, std::move(v));
  }
  return KleisliMap(Carrier("states", std::move(order)), e.inst.monad, std::move(table));
}

}  // namespace

Approximation<EffectValue> delta_collapse(const ResTree& t, effects::IterationPolicy policy, std::size_t cell_limit) {
  const PMonadInstance& inst = t.inst();
  require_delay(inst);
  std::vector<ResTree> cells;
  try {
    cells = res::reachable(t, cell_limit);
  } catch (const BudgetExceeded&) {
    std::map<std::pair<std::uint64_t, std::size_t>, EffectValue> memo;
    return {delta_depth(t, policy.bound, memo), false, policy.bound};
  }
  std::vector<Value> values;
  for (const auto& c : cells) values.push_back(c.value());
  Carrier dom("cells", values);
  std::vector<Value> scratch;
  KleisliMap f = KleisliMap::from_fn(dom, inst.monad, [&](const Value& c) {
    return effects::fmap(ResTree::from_value(c).out(), [&](const Value& e) {
      if (pmonad::is_leaf(e)) return e;
      return Value::inr(only_child(inst, e.inner(), scratch));
    });
  });
  auto approx = effects::iterate(f, policy);
  return {approx.value(t.value()), approx.exact, approx.steps};
}

Value tick() { return Value::atom("tick"); }

std::vector<Word> trace_set(const Coalgebra& system, const Value& var, std::size_t maxlen) {
  const EffectMonadId& source = system.inst.monad;
  const bool delayed = system.inst.sig && system.inst.sig->kind() == SigKind::Delay;
  if (delayed && source.kind() == MonadKind::TracePowerset) {
    const EffectMonadId monad = source.with_horizon(maxlen);
    const PMonadInstance inst = PMonadInstance::with_sig(monad, *system.inst.sig);
    Coalgebra bounded{inst, [system, monad](const Value& s) {
                        const EffectValue v = system.step(s);
                        return EffectValue::from_entries(monad, {v.entries().begin(), v.entries().end()});
                      },
                      std::nullopt};
    const EffectValue collapsed = delta_collapse(res::coit(bounded)(var)).value;
    std::vector<Word> out;
    for (const auto& e : collapsed.entries()) {
      if (e.value == tick()) out.push_back(e.word);
    }
    return out;
  }
  if (!system.inst.sig || system.inst.sig->kind() != SigKind::ActionPrefix) {
    throw ShapeError("trace semantics needs the action-prefix signature, or the delay signature over traces");
  }
  std::vector<std::string> alphabet = system.inst.sig->alphabet();
  if (source.kind() == MonadKind::TracePowerset) {
    for (const auto& a : source.alphabet()) {
      if (std::find(alphabet.begin(), alphabet.end(), a) == alphabet.end()) alphabet.push_back(a);
    }
  }
  const EffectMonadId monad = EffectMonadId::traces(alphabet, maxlen);
  const PMonadInstance inst = PMonadInstance::plain(monad);
  Coalgebra traced{inst, [system, monad](const Value& s) {
                     std::vector<EffectValue::Entry> entries;
                     const EffectValue v = system.step(s);
                     for (const auto& e : v.entries()) {
                       if (pmonad::is_leaf(e.value)) {
                         entries.push_back({e.word, e.value});
                         continue;
                       }
                       Word w = e.word;
                       w.push_back(e.value.inner().name());
                       entries.push_back({std::move(w), Value::inr(e.value.inner().children()[0])});
                     }
                     return EffectValue::from_entries(monad, std::move(entries));
                   },
                   std::nullopt};
  const EffectValue collapsed = delta_collapse(res::coit(traced)(var)).value;
  std::vector<Word> out;
  for (const auto& e : collapsed.entries()) {
    if (e.value == tick()) out.push_back(e.word);
  }
  return out;
}

BaseMap iistar_from_istar(const pmonad::TStructure& a, const KleisliMap& e, effects::IterationPolicy policy) {
  KleisliMap ed = effects::iterate(e, policy).value;
  return BaseMap::from_fn(e.domain(), [&](const Value& x) { return a(ed(x)); });
}

BaseMap iistar_from_istar_composite(const pmonad::TStructure& a, const KleisliMap& e, effects::IterationPolicy policy) {
  KleisliMap ed = effects::iterate(e, policy).value;
  auto composite = [&](const EffectValue& v) { return a(effects::fmap(v, [](const Value& w) { return w.inner(); })); };
  return BaseMap::from_fn(e.domain(), [&](const Value& x) {
    return composite(effects::fmap(ed(x), [](const Value& y) { return Value::inl(y); }));
  });
}

ElgotAlgebra codiag_elgot(const EffectMonadId& monad, std::string name, std::optional<Carrier> carrier,
                          pmonad::TStructure a, effects::IterationPolicy policy) {
  ElgotAlgebra out;
  out.name = std::move(name);
  out.inst = PMonadInstance::plain(monad);
  out.carrier = std::move(carrier);
  out.equal = [](const Value& x, const Value& y) { return x == y; };
  out.structure = [a](const HashValue& v) { return a(effects::fmap(v, [](const Value& w) { return w.inner(); })); };
  out.iterate = [a, policy](const Coalgebra& e) -> Solution {
    auto memo = std::make_shared<std::map<Value, Value>>();
    return [a, policy, e, memo](const Value& x) -> Value {
      if (auto it = memo->find(x); it != memo->end()) return it->second;
      KleisliMap eq = reachable_equation(e, x);
      KleisliMap ed = effects::iterate(eq, policy).value;
      for (const auto& [s, v] : ed.table()) memo->emplace(s, a(v));
      return memo->at(x);
    };
  };
  return out;
}

ElgotAlgebra free_t_algebra(const EffectMonadId& monad, effects::IterationPolicy policy) {
  return codiag_elgot(monad, "free(" + monad.str() + ")", std::nullopt,
                      [](const EffectValue& v) { return Value::effect(effects::flatten(v)); }, policy);
}

KleisliMap istar_from_iistar(const ElgotAlgebra& alg, const KleisliMap& e) {
  const EffectMonadId& monad = e.monad();
  Coalgebra lifted{alg.inst, [e, monad](const Value& x) {
                     return effects::fmap(e(x), [&](const Value& v) {
                       if (v.is(ValueKind::Inl)) return Value::inl(Value::effect(effects::unit(monad, v.inner())));
                       return v;
                     });
                   },
                   e.domain()};
  Solution sol = alg.iterate(lifted);
  return KleisliMap::from_fn(e.domain(), monad, [&](const Value& x) { return sol(x).as_effect(); });
}

IterationOperator derived_operator(const EffectMonadId& monad, effects::IterationPolicy policy) {
  ElgotAlgebra alg = free_t_algebra(monad, policy);
  return [alg](const KleisliMap& e) { return istar_from_iistar(alg, e); };
}

CheckResult check_codiag_alg(const ElgotAlgebra& alg, const ElgotAlgebra& inner, const Coalgebra& e,
                             const Carrier& states) {
  try {
    Coalgebra flat{alg.inst, [e, inst = alg.inst](const Value& x) { return pmonad::hash_mult(inst, e.step(x)); },
                   states};
    Solution lhs = alg.iterate(flat);
    Solution inner_sol = inner.iterate(Coalgebra{inner.inst, e.step, states});
    Coalgebra twice{alg.inst, [inner_sol](const Value& x) { return inner_sol(x).as_effect(); }, states};
    Solution rhs = alg.iterate(twice);
    for (const auto& x : states.elements()) {
      Value l = lhs(x);
      Value r = rhs(x);
      if (!alg.equal(l, r)) return CheckResult::fail("at " + x.str() + ": " + alg::show(l) + " vs " + alg::show(r));
    }
  } catch (const NonConvergence& ex) {
    return CheckResult::nonconv(ex.what());
  }
  return CheckResult::pass();
}

CheckResult check_codiag_alg(const ElgotAlgebra& alg, const Coalgebra& e, const Carrier& states) {
  return check_codiag_alg(alg, free_t_algebra(alg.inst.monad), e, states);
}

EMAlgebra mu_delta_algebra(const EffectMonadId& monad, std::optional<Carrier> carrier) {
  EMAlgebra out;
  out.name = "mu-delta(" + monad.str() + ")";
  out.inst = PMonadInstance::plain(monad);
  out.carrier = std::move(carrier);
  out.equal = [](const Value& x, const Value& y) { return x == y; };
  out.chi = [](const ResTree& t) {
    auto d = delta_collapse(t);
    if (!d.exact) throw NonConvergence("collapse was not exact", {});
    return Value::effect(effects::flatten(d.value));
  };
  return out;
}

}  // namespace celgot::bridge
