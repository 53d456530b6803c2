#include "celgot/elgot.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace celgot::alg {

namespace {

Value identity_fn(const Value& v) { return v; }

// Breadth-first exploration of the states reachable from x through node
// children of `step`.
std::vector<Value> explore(const Coalgebra& e, const Value& x, const std::map<Value, Value>& known,
                           std::map<Value, HashValue>& steps, std::size_t budget) {
  std::vector<Value> order;
  std::set<Value> seen{x};
  std::deque<Value> queue{x};
  while (!queue.empty()) {
    Value s = queue.front();
    queue.pop_front();
    if (known.count(s)) continue;
    order.push_back(s);
    if (order.size() > budget) {
      throw BudgetExceeded("more than " + std::to_string(budget) + " reachable equation states",
                           static_cast<double>(order.size()));
    }
    HashValue v = e.step(s);
    for (const auto& entry : v.entries()) {
      if (pmonad::is_leaf(entry.value)) continue;
      for (const auto& c : pmonad::node_children(e.inst, entry.value.inner())) {
        if (seen.insert(c).second) queue.push_back(c);
      }
    }
    steps.emplace(s, std::move(v));
  }
  return order;
}

}  // namespace

std::string show(const Value& v) {
  if (v.is(ValueKind::Tree)) return res::render(ResTree::from_value(v), 3);
  return v.str();
}

ElgotAlgebra continuous_elgot(const CppoAlgebraSpec& spec) {
  ElgotAlgebra out;
  out.name = spec.name;
  out.inst = spec.inst;
  out.carrier = spec.carrier;
  out.structure = spec.structure;
  out.equal = [](const Value& a, const Value& b) { return a == b; };
  out.iterate = [spec](const Coalgebra& e) -> Solution {
    auto solved = std::make_shared<std::map<Value, Value>>();
    return [spec, e, solved](const Value& x) -> Value {
      if (auto it = solved->find(x); it != solved->end()) return it->second;
      std::map<Value, HashValue> steps;
      std::vector<Value> states = explore(e, x, *solved, steps, spec.state_budget);
      for (const auto& [s, v] : steps) {
        for (const auto& entry : v.entries()) {
          if (pmonad::is_leaf(entry.value) && !spec.carrier.contains(entry.value.inner())) {
            throw DomainError("equation leaf " + entry.value.inner().str() + " is not in " + spec.carrier.name());
          }
        }
      }
      std::map<Value, Value> current;
      for (const auto& s : states) current.emplace(s, spec.bottom);
      auto lookup = [&](const Value& y) -> Value {
        if (auto it = current.find(y); it != current.end()) return it->second;
        return solved->at(y);
      };
      const std::size_t bound = std::max(spec.window, states.size() * spec.carrier.size() + 1);
      bool stable = false;
      for (std::size_t i = 0; i <= bound && !stable; ++i) {
        std::map<Value, Value> next;
        for (const auto& s : states) {
          next.emplace(s, spec.structure(pmonad::hash_bimap(spec.inst, identity_fn, lookup, steps.at(s))));
        }
        stable = next == current;
        current = std::move(next);
      }
      if (!stable) {
        throw NonConvergence("least solution did not stabilize within " + std::to_string(bound) + " steps", current);
      }
      for (const auto& [s, v] : current) solved->emplace(s, v);
      return solved->at(x);
    };
  };
  return out;
}

void check_monotone(const CppoAlgebraSpec& spec, std::size_t budget) {
  for (const auto& x : spec.carrier.elements()) {
    if (!spec.leq(x, x)) throw ContractViolation(spec.name + ": order is not reflexive at " + x.str());
    if (!spec.leq(spec.bottom, x)) throw ContractViolation(spec.name + ": bottom is not below " + x.str());
  }
  for (const auto& w : pmonad::enumerate(spec.inst, spec.carrier, spec.carrier, budget)) {
    const Value base = spec.structure(w);
    for (const auto& entry : w.entries()) {
      if (pmonad::is_leaf(entry.value)) continue;
      const auto children = pmonad::node_children(spec.inst, entry.value.inner());
      for (std::size_t i = 0; i < children.size(); ++i) {
        for (const auto& bigger : spec.carrier.elements()) {
          if (bigger == children[i] || !spec.leq(children[i], bigger)) continue;
          std::size_t pos = 0;
          Value raised = pmonad::node(pmonad::map_node(
              spec.inst, [&](const Value& c) { return pos++ == i ? bigger : c; }, entry.value.inner()));
          std::vector<EffectValue::Entry> entries;
          for (const auto& other : w.entries()) {
            entries.push_back(other == entry ? EffectValue::Entry{other.word, raised} : other);
          }
          const Value up = spec.structure(EffectValue::from_entries(spec.inst.monad, std::move(entries)));
          if (!spec.leq(base, up)) {
            throw ContractViolation(spec.name + ": structure is not monotone at " + w.str());
          }
        }
      }
    }
  }
}

std::function<bool(const Value&, const Value&)> chain_order(std::size_t n) {
  return [n](const Value& a, const Value& b) {
    const auto x = std::stoul(a.name());
    const auto y = std::stoul(b.name());
    if (x >= n || y >= n) throw DomainError("element outside the chain");
    return x <= y;
  };
}

std::function<bool(const Value&, const Value&)> flat_order(const Value& bottom) {
  return [bottom](const Value& a, const Value& b) { return a == bottom || a == b; };
}

namespace {

Carrier chain_carrier(std::size_t n) {
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back(std::to_string(i));
  return Carrier::of_atoms("C" + std::to_string(n), atoms);
}

Value num(std::size_t i) { return Value::atom(std::to_string(i)); }

std::size_t as_num(const Value& v) { return std::stoul(v.name()); }

pmonad::TStructure max_join() {
  return [](const EffectValue& v) {
    std::size_t m = 0;
    for (const auto& e : v.entries()) m = std::max(m, as_num(e.value));
    return num(m);
  };
}

pmonad::TStructure pointed(const Value& bottom) {
  return [bottom](const EffectValue& v) { return v.is_nothing() ? bottom : v.just_value(); };
}

CppoAlgebraSpec chain_spec(std::string name, std::size_t n, Signature sig,
                           std::function<Value(const Value&)> sigma) {
  CppoAlgebraSpec spec;
  spec.name = std::move(name);
  spec.inst = PMonadInstance::with_sig(EffectMonadId::powerset(), std::move(sig));
  spec.carrier = chain_carrier(n);
  spec.leq = chain_order(n);
  spec.bottom = num(0);
  spec.structure = pmonad::recompose(spec.inst, max_join(), sigma);
  return spec;
}

}  // namespace

std::vector<CppoAlgebraSpec> shipped_algebras() {
  std::vector<CppoAlgebraSpec> out;
  out.push_back(chain_spec("max2-delay", 2, Signature::delay(), [](const Value& l) { return l.children()[0]; }));
  out.push_back(chain_spec("max3-delay-succ", 3, Signature::delay(), [](const Value& l) {
    return num(std::min<std::size_t>(as_num(l.children()[0]) + 1, 2));
  }));
  out.push_back(chain_spec("max2-actions", 2, Signature::actions({"a", "b"}), [](const Value& l) {
    return l.name() == "a" ? l.children()[0] : num(1);
  }));
  out.push_back(chain_spec("max3-ops", 3, Signature::generic({{"g", 2}, {"h", 0}}), [](const Value& l) {
    if (l.name() == "h") return num(2);
    return num(std::min(as_num(l.children()[0]), as_num(l.children()[1])));
  }));
  {
    CppoAlgebraSpec spec;
    spec.name = "flat3-maybe-swap";
    spec.inst = PMonadInstance::with_sig(EffectMonadId::maybe(), Signature::delay());
    spec.carrier = Carrier::of_atoms("P3", {"bot", "p", "q"});
    spec.bottom = Value::atom("bot");
    spec.leq = flat_order(spec.bottom);
    spec.structure = pmonad::recompose(spec.inst, pointed(spec.bottom), [](const Value& l) {
      const Value& c = l.children()[0];
      if (c.name() == "p") return Value::atom("q");
      if (c.name() == "q") return Value::atom("p");
      return c;
    });
    out.push_back(spec);
  }
  {
    CppoAlgebraSpec spec;
    spec.name = "flat2-maybe-const";
    spec.inst = PMonadInstance::with_sig(EffectMonadId::maybe(), Signature::delay());
    spec.carrier = Carrier::of_atoms("P2", {"bot", "p"});
    spec.bottom = Value::atom("bot");
    spec.leq = flat_order(spec.bottom);
    spec.structure = pmonad::recompose(spec.inst, pointed(spec.bottom), [](const Value&) { return Value::atom("p"); });
    out.push_back(spec);
  }
  return out;
}

std::vector<CppoAlgebraSpec> shipped_codiagonal_algebras() {
  std::vector<CppoAlgebraSpec> out;
  for (std::size_t n : {2, 3}) {
    CppoAlgebraSpec spec;
    spec.name = "max" + std::to_string(n) + "-plain";
    spec.inst = PMonadInstance::plain(EffectMonadId::powerset());
    spec.carrier = chain_carrier(n);
    spec.leq = chain_order(n);
    spec.bottom = num(0);
    spec.structure = pmonad::recompose(spec.inst, max_join(), identity_fn);
    out.push_back(spec);
  }
  {
    CppoAlgebraSpec spec;
    spec.name = "flat2-maybe-plain";
    spec.inst = PMonadInstance::plain(EffectMonadId::maybe());
    spec.carrier = Carrier::of_atoms("P2", {"bot", "p"});
    spec.bottom = Value::atom("bot");
    spec.leq = flat_order(spec.bottom);
    spec.structure = pmonad::recompose(spec.inst, pointed(spec.bottom), identity_fn);
    out.push_back(spec);
  }
  return out;
}

// --- free algebra ---------------------------------------------------------

ResTree free_unit(const PMonadInstance& inst, const Value& x) { return res::eta_nu(inst, x); }

ElgotAlgebra free_elgot(const PMonadInstance& inst, std::size_t depth) {
  ElgotAlgebra out;
  out.name = "free(" + inst.str() + ")";
  out.inst = inst;
  out.structure = [inst](const HashValue& v) {
    return res::out_inv(inst, pmonad::hash_bind(inst, v, [](const Value& t) { return ResTree::from_value(t).out(); }))
        .value();
  };
  out.iterate = [inst](const Coalgebra& e) -> Solution {
    auto relabel_tree = [inst](const Value& t) {
      return pmonad::hash_bimap(inst, identity_fn, [](const Value& c) { return Value::inl(c); },
                                ResTree::from_value(t).out());
    };
    Coalgebra c;
    c.inst = inst;
    c.step = [inst, e, relabel_tree](const Value& s) -> HashValue {
      if (s.is(ValueKind::Inl)) return relabel_tree(s.inner());
      HashValue v = pmonad::hash_bimap(inst, identity_fn, [](const Value& z) { return Value::inr(z); }, e.step(s.inner()));
      return pmonad::hash_bind(inst, v, relabel_tree);
    };
    TreeFn h = res::coit(c);
    return [h](const Value& z) { return h(Value::inr(z)).value(); };
  };
  out.equal = [depth](const Value& a, const Value& b) {
    return res::bisim_depth(ResTree::from_value(a), ResTree::from_value(b), depth);
  };
  return out;
}

ResTree free_phi_eta(const PMonadInstance& inst, const HashValue& v) {
  ElgotAlgebra free = free_elgot(inst);
  return ResTree::from_value(free.structure(pmonad::hash_bimap(
      inst, [&](const Value& x) { return free_unit(inst, x).value(); }, identity_fn, v)));
}

// --- Eilenberg-Moore correspondence ------------------------------------------

ElgotAlgebra em_to_elgot(const EMAlgebra& em) {
  ElgotAlgebra out;
  out.name = "elgot(" + em.name + ")";
  out.inst = em.inst;
  out.carrier = em.carrier;
  out.equal = em.equal;
  out.structure = [em](const HashValue& v) { return em.chi(res::ext(em.inst, v)); };
  out.iterate = [em](const Coalgebra& e) -> Solution {
    TreeFn t = res::coit(e);
    return [em, t](const Value& x) { return em.chi(t(x)); };
  };
  return out;
}

EMAlgebra elgot_to_em(const ElgotAlgebra& a) {
  EMAlgebra out;
  out.name = "em(" + a.name + ")";
  out.inst = a.inst;
  out.carrier = a.carrier;
  out.equal = a.equal;
  Coalgebra out_coalg;
  out_coalg.inst = a.inst;
  out_coalg.step = [](const Value& t) { return ResTree::from_value(t).out(); };
  auto sol = std::make_shared<Solution>(a.iterate(out_coalg));
  out.chi = [sol](const ResTree& t) { return (*sol)(t.value()); };
  return out;
}

EMAlgebra em_from_limits(const CppoAlgebraSpec& spec, std::size_t stable, std::size_t max_depth) {
  EMAlgebra out;
  out.name = "limits(" + spec.name + ")";
  out.inst = spec.inst;
  out.carrier = spec.carrier;
  out.equal = [](const Value& a, const Value& b) { return a == b; };
  out.chi = [spec, stable, max_depth](const ResTree& t) -> Value {
    std::map<std::pair<std::uint64_t, std::size_t>, Value> memo;
    std::function<Value(const ResTree&, std::size_t)> eval = [&](const ResTree& s, std::size_t n) -> Value {
      if (n == 0) return spec.bottom;
      auto key = std::make_pair(s.id(), n);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      Value v = spec.structure(pmonad::hash_bimap(
          spec.inst,
          [&](const Value& leaf) {
            if (!spec.carrier.contains(leaf)) throw DomainError("leaf " + leaf.str() + " is not in " + spec.carrier.name());
            return leaf;
          },
          [&](const Value& child) { return eval(ResTree::from_value(child), n - 1); }, s.out()));
      memo.emplace(key, v);
      return v;
    };
    // On a finite cell graph the depth-n evaluations are the Kleene
    // approximants, which are stable after |cells|·|carrier|+1 steps.
    std::optional<std::size_t> exact_depth;
    try {
      exact_depth = res::reachable(t, spec.state_budget).size() * spec.carrier.size() + 1;
    } catch (const BudgetExceeded&) {
    }
    if (exact_depth) {
      Value v = spec.bottom;
      for (std::size_t n = 1; n <= *exact_depth; ++n) v = eval(t, n);
      return v;
    }
    Value prev = eval(t, 1);
    std::size_t same = 0;
    for (std::size_t n = 2; n <= max_depth; ++n) {
      Value cur = eval(t, n);
      same = cur == prev ? same + 1 : 0;
      prev = cur;
      if (same >= stable) break;
    }
    return prev;
  };
  return out;
}

CheckResult check_em_laws(const EMAlgebra& em, std::span<const ResTree> two_level) {
  try {
    if (em.carrier) {
      for (const auto& x : em.carrier->elements()) {
        Value back = em.chi(res::eta_nu(em.inst, x));
        if (!em.equal(back, x)) return CheckResult::fail("chi(eta(" + x.str() + ")) = " + show(back));
      }
    }
    for (const auto& t : two_level) {
      Value lhs = em.chi(res::map_nu([&](const Value& inner) { return em.chi(ResTree::from_value(inner)); }, t));
      Value rhs = em.chi(res::mu_nu(t));
      if (!em.equal(lhs, rhs)) {
        return CheckResult::fail("tree#" + std::to_string(t.id()) + ": chi.Fchi = " + show(lhs) + " but chi.mu = " + show(rhs));
      }
    }
  } catch (const NonConvergence& e) {
    return CheckResult::nonconv(e.what());
  }
  return CheckResult::pass();
}

// --- axioms -------------------------------------------------------------

StepFn bullet(const PMonadInstance& inst, const Solution& f_dagger, const StepFn& g) {
  return [inst, f_dagger, g](const Value& x) { return pmonad::hash_bimap(inst, f_dagger, identity_fn, g(x)); };
}

StepFn square(const PMonadInstance& inst, const StepFn& f, const StepFn& g) {
  auto left = [inst, f](const Value& y) {
    return pmonad::hash_bimap(inst, identity_fn, [](const Value& c) { return Value::inl(c); }, f(y));
  };
  return [inst, g, left](const Value& v) -> HashValue {
    if (v.is(ValueKind::Inl)) return left(v.inner());
    if (!v.is(ValueKind::Inr)) throw ShapeError("square expects a value of Y+X, got " + v.str());
    HashValue w = pmonad::hash_bimap(inst, identity_fn, [](const Value& c) { return Value::inr(c); }, g(v.inner()));
    return pmonad::hash_bind(inst, w, left);
  };
}

const char* axiom_name(AlgebraAxiom a) {
  switch (a) {
    case AlgebraAxiom::Solution:
      return "solution";
    case AlgebraAxiom::Functoriality:
      return "functoriality";
    case AlgebraAxiom::Compositionality:
      return "compositionality";
  }
  return "?";
}

CheckResult check_algebra_axiom(const ElgotAlgebra& a, AlgebraAxiom axiom, const AxiomInstance& in) {
  const PMonadInstance& inst = a.inst;
  auto differ = [&](const Value& x, const Value& lhs, const Value& rhs) {
    return CheckResult::fail("at " + x.str() + ": " + show(lhs) + " vs " + show(rhs));
  };
  try {
    switch (axiom) {
      case AlgebraAxiom::Solution: {
        Solution sol = a.iterate(Coalgebra{inst, in.e, in.x});
        for (const auto& x : in.x.elements()) {
          Value lhs = sol(x);
          Value rhs = a.structure(pmonad::hash_bimap(inst, identity_fn, sol, in.e(x)));
          if (!a.equal(lhs, rhs)) return differ(x, lhs, rhs);
        }
        return CheckResult::pass();
      }
      case AlgebraAxiom::Functoriality: {
        for (const auto& x : in.x.elements()) {
          if (!(in.f(in.h(x)) == pmonad::hash_bimap(inst, identity_fn, in.h, in.e(x)))) return CheckResult::vacuous();
        }
        Solution fs = a.iterate(Coalgebra{inst, in.f, in.y});
        Solution es = a.iterate(Coalgebra{inst, in.e, in.x});
        for (const auto& x : in.x.elements()) {
          Value lhs = fs(in.h(x));
          Value rhs = es(x);
          if (!a.equal(lhs, rhs)) return differ(x, lhs, rhs);
        }
        return CheckResult::pass();
      }
      case AlgebraAxiom::Compositionality: {
        Carrier yx = Carrier::sum(in.y, in.x);
        Solution sq = a.iterate(Coalgebra{inst, square(inst, in.f, in.g), yx});
        Solution fs = a.iterate(Coalgebra{inst, in.f, in.y});
        Solution bs = a.iterate(Coalgebra{inst, bullet(inst, fs, in.g), in.x});
        for (const auto& x : in.x.elements()) {
          Value lhs = sq(Value::inr(x));
          Value rhs = bs(x);
          if (!a.equal(lhs, rhs)) return differ(x, lhs, rhs);
        }
        return CheckResult::pass();
      }
    }
  } catch (const NonConvergence& e) {
    return CheckResult::nonconv(e.what());
  }
  return CheckResult::pass();
}

HomReport check_hom(const BaseFn& f, const ElgotAlgebra& a, const ElgotAlgebra& b,
                    const std::vector<std::pair<Coalgebra, Carrier>>& equations, std::size_t budget) {
  HomReport report;
  for (const auto& [e, states] : equations) {
    Solution ea = a.iterate(e);
    Coalgebra fe{b.inst, [f, e, inst = b.inst](const Value& x) {
                   return pmonad::hash_bimap(inst, f, identity_fn, e.step(x));
                 }, states};
    Solution eb = b.iterate(fe);
    for (const auto& x : states.elements()) {
      Value lhs = eb(x);
      Value rhs = f(ea(x));
      if (!b.equal(lhs, rhs)) {
        report.elgot_morphism = false;
        report.witness = "iteration at " + x.str() + ": " + show(lhs) + " vs " + show(rhs);
        break;
      }
    }
    if (!report.elgot_morphism) break;
  }
  if (!a.carrier) throw ShapeError("check_hom needs an enumerable source carrier");
  for (const auto& v : pmonad::enumerate(a.inst, *a.carrier, *a.carrier, budget)) {
    Value lhs = f(a.structure(v));
    Value rhs = b.structure(pmonad::hash_bimap(b.inst, f, f, v));
    if (!b.equal(lhs, rhs)) {
      report.hash_morphism = false;
      if (report.witness.empty()) report.witness = "structure at " + v.str() + ": " + show(lhs) + " vs " + show(rhs);
      break;
    }
  }
  return report;
}

ProbeReport unique_solution_probe(const ElgotAlgebra& free_alg, const Coalgebra& e, std::span<const Value> states,
                                  const std::vector<TreeFn>& candidates, std::size_t n) {
  ProbeReport report;
  for (const auto& cand : candidates) {
    bool ok = true;
    for (const auto& x : states) {
      ResTree lhs = cand(x);
      ResTree rhs = ResTree::from_value(free_alg.structure(pmonad::hash_bimap(
          free_alg.inst, identity_fn, [&](const Value& y) { return cand(y).value(); }, e.step(x))));
      if (!res::bisim_depth(lhs, rhs, n)) {
        ok = false;
        break;
      }
    }
    report.satisfies.push_back(ok);
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (!report.satisfies[i] || !report.satisfies[j]) continue;
      for (const auto& x : states) {
        if (!res::bisim_depth(candidates[i](x), candidates[j](x), n)) report.satisfying_agree = false;
      }
    }
  }
  return report;
}

ElgotAlgebra induced_algebra(const ElgotAlgebra& a, const BaseFn& f, std::optional<Carrier> carrier) {
  const PMonadInstance inst = a.inst;
  auto collapse = [inst, a, f](const Value& v) { return a.structure(pmonad::hash_bimap(inst, f, identity_fn, v.as_effect())); };
  ElgotAlgebra out;
  out.name = "induced(" + a.name + ")";
  out.inst = inst;
  out.carrier = std::move(carrier);
  out.equal = [](const Value& x, const Value& y) { return x == y; };
  out.structure = [inst, collapse](const HashValue& w) {
    return Value::effect(pmonad::hash_mult(inst, pmonad::hash_bimap(inst, identity_fn, collapse, w)));
  };
  out.iterate = [inst, a, collapse](const Coalgebra& e) -> Solution {
    Coalgebra bar{inst, [inst, e, collapse](const Value& x) {
                    return pmonad::hash_bimap(inst, collapse, identity_fn, e.step(x));
                  }, e.states};
    Solution bar_dagger = a.iterate(bar);
    return [inst, e, bar_dagger](const Value& x) {
      return Value::effect(pmonad::hash_mult(inst, pmonad::hash_bimap(inst, identity_fn, bar_dagger, e.step(x))));
    };
  };
  return out;
}

}  // namespace celgot::alg
