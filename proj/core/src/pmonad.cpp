#include "celgot/pmonad.hpp"

#include <algorithm>
#include <cmath>

namespace celgot {

std::string PMonadInstance::str() const {
  return monad.str() + "/" + (sig ? sig->str() : std::string("plain"));
}

namespace pmonad {

Value leaf(Value a) { return Value::inl(std::move(a)); }

Value node(Value payload) { return Value::inr(std::move(payload)); }

bool is_leaf(const Value& v) {
  if (v.is(ValueKind::Inl)) return true;
  if (v.is(ValueKind::Inr)) return false;
  throw ShapeError("expected a leaf or a node, got " + v.str());
}

std::vector<Value> node_children(const PMonadInstance& inst, const Value& payload) {
  if (!inst.sig) return {payload};
  sig::check_layer(*inst.sig, payload);
  auto c = payload.children();
  return {c.begin(), c.end()};
}

Value map_node(const PMonadInstance& inst, const BaseFn& g, const Value& payload) {
  if (!inst.sig) return g(payload);
  return sig::sigma_map(*inst.sig, g, payload);
}

Carrier node_carrier(const PMonadInstance& inst, const Carrier& x, std::size_t budget) {
  if (!inst.sig) return x;
  return sig::layer_carrier(*inst.sig, x, budget);
}

Carrier hash_base(const PMonadInstance& inst, const Carrier& a, const Carrier& x, std::size_t budget) {
  return Carrier::sum(a, node_carrier(inst, x, budget));
}

void validate(const PMonadInstance& inst, const Carrier& a, const Carrier& x, const HashValue& v) {
  if (!(v.monad() == inst.monad)) throw ShapeError("value of " + v.monad().str() + " in " + inst.str());
  for (const auto& e : v.entries()) {
    if (is_leaf(e.value)) {
      if (!a.contains(e.value.inner())) throw DomainError("leaf " + e.value.inner().str() + " is not in " + a.name());
      continue;
    }
    for (const auto& c : node_children(inst, e.value.inner())) {
      if (!x.contains(c)) throw DomainError("child " + c.str() + " is not in " + x.name());
    }
  }
}

HashValue hash_unit(const PMonadInstance& inst, const Value& a) { return effects::unit(inst.monad, leaf(a)); }

HashValue hash_unit(const PMonadInstance& inst, const Carrier& a_carrier, const Value& a) {
  if (!a_carrier.contains(a)) throw DomainError("element " + a.str() + " is not in " + a_carrier.name());
  return hash_unit(inst, a);
}

HashValue hash_bind(const PMonadInstance& inst, const HashValue& v, const std::function<HashValue(const Value&)>& k) {
  return effects::bind(v, [&](const Value& e) {
    if (is_leaf(e)) return k(e.inner());
    return effects::unit(inst.monad, e);
  });
}

HashValue hash_mult(const PMonadInstance& inst, const EffectValue& v) {
  return hash_bind(inst, v, [](const Value& inner) {
    if (!inner.is(ValueKind::Effect)) throw ShapeError("multiplication expects nested values, got leaf " + inner.str());
    return inner.as_effect();
  });
}

HashValue hash_bimap(const PMonadInstance& inst, const BaseFn& f, const BaseFn& g, const HashValue& v) {
  return effects::fmap(v, [&](const Value& e) {
    if (is_leaf(e)) return leaf(f(e.inner()));
    return node(map_node(inst, g, e.inner()));
  });
}

std::vector<HashValue> enumerate(const PMonadInstance& inst, const Carrier& a, const Carrier& x, std::size_t budget) {
  return effects::enumerate(inst.monad, hash_base(inst, a, x, budget), budget);
}

TStructure t_part(const HashStructure& a) {
  return [a](const EffectValue& v) { return a(effects::fmap(v, [](const Value& x) { return leaf(x); })); };
}

SigmaStructure sigma_part(const PMonadInstance& inst, const HashStructure& a) {
  return [inst, a](const Value& layer) { return a(effects::unit(inst.monad, node(layer))); };
}

HashStructure recompose(const PMonadInstance& inst, const TStructure& alpha, const SigmaStructure& f) {
  return [inst, alpha, f](const HashValue& v) {
    return alpha(effects::fmap(v, [&](const Value& e) { return is_leaf(e) ? e.inner() : f(e.inner()); }));
  };
}

namespace {

std::vector<Value> as_effect_values(const std::vector<EffectValue>& vs) {
  std::vector<Value> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(Value::effect(v));
  return out;
}

}  // namespace

std::optional<std::string> check_hash_algebra(const PMonadInstance& inst, const Carrier& a, const HashStructure& s,
                                              std::size_t budget, std::size_t samples, unsigned seed) {
  for (const auto& x : a.elements()) {
    Value back = s(hash_unit(inst, x));
    if (!(back == x)) return "unit law fails at " + x.str() + ": a(u(x)) = " + back.str();
  }
  std::mt19937_64 rng(seed);
  std::vector<HashValue> inner;
  const bool enumerable = inst.monad.kind() != MonadKind::TracePowerset;
  if (enumerable) {
    inner = enumerate(inst, a, a, budget);
  } else {
    for (std::size_t i = 0; i < 24; ++i) inner.push_back(random_hash(inst, a, a, rng));
  }
  Carrier inner_carrier("#(A,A)", [&] {
    std::vector<HashValue> dedup = inner;
    std::sort(dedup.begin(), dedup.end());
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
    return as_effect_values(dedup);
  }());
  auto check = [&](const EffectValue& w) -> std::optional<std::string> {
    Value lhs = s(hash_mult(inst, w));
    Value rhs = s(hash_bimap(inst, [&](const Value& h) { return s(h.as_effect()); }, [](const Value& y) { return y; }, w));
    if (!(lhs == rhs)) {
      return "multiplication law fails at " + w.str() + ": " + lhs.str() + " vs " + rhs.str();
    }
    return std::nullopt;
  };
  bool exhaustive = false;
  if (enumerable) {
    double n = effects::count(inst.monad, hash_base(inst, inner_carrier, a, budget));
    exhaustive = n <= static_cast<double>(budget);
  }
  if (exhaustive) {
    for (const auto& w : enumerate(inst, inner_carrier, a, budget)) {
      if (auto msg = check(w)) return msg;
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < samples; ++i) {
    if (auto msg = check(random_hash(inst, inner_carrier, a, rng))) return msg;
  }
  return std::nullopt;
}

std::optional<std::string> check_t_algebra(const EffectMonadId& monad, const Carrier& a, const TStructure& s,
                                           std::size_t budget) {
  for (const auto& x : a.elements()) {
    Value back = s(effects::unit(monad, x));
    if (!(back == x)) return "unit law fails at " + x.str();
  }
  Carrier ta("T(A)", as_effect_values(effects::enumerate(monad, a, budget)));
  for (const auto& w : effects::enumerate(monad, ta, budget)) {
    Value lhs = s(effects::flatten(w));
    Value rhs = s(effects::fmap(w, [&](const Value& v) { return s(v.as_effect()); }));
    if (!(lhs == rhs)) return "multiplication law fails at " + w.str() + ": " + lhs.str() + " vs " + rhs.str();
  }
  return std::nullopt;
}

HashValue random_hash(const PMonadInstance& inst, const Carrier& a, const Carrier& x, std::mt19937_64& rng,
                      std::size_t max_entries, std::size_t max_word) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::vector<Value> payloads;
  std::vector<Symbol> usable;
  if (inst.sig) {
    for (const auto& sym : inst.sig->symbols()) {
      if (sym.arity == 0 || !x.empty()) usable.push_back(sym);
    }
  }
  const std::size_t node_options = inst.sig ? usable.size() : x.size();
  auto random_base = [&]() -> std::optional<Value> {
    const std::size_t total = a.size() + node_options;
    if (total == 0) return std::nullopt;
    std::size_t k = pick(total);
    if (k < a.size()) return leaf(a[k]);
    k -= a.size();
    if (!inst.sig) return node(x[k]);
    std::vector<Value> children;
    for (std::size_t i = 0; i < usable[k].arity; ++i) children.push_back(x[pick(x.size())]);
    return node(Value::op(usable[k].name, std::move(children)));
  };
  std::vector<EffectValue::Entry> entries;
  std::size_t n = 0;
  if (inst.monad.kind() == MonadKind::Maybe) {
    n = pick(2);
  } else {
    n = pick(max_entries + 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto b = random_base();
    if (!b) break;
    Word w;
    if (inst.monad.kind() == MonadKind::TracePowerset) {
      std::size_t len = pick(max_word + 1);
      if (auto h = inst.monad.horizon()) len = std::min(len, *h);
      for (std::size_t j = 0; j < len; ++j) w.push_back(inst.monad.alphabet()[pick(inst.monad.alphabet().size())]);
    }
    entries.push_back({std::move(w), *b});
  }
  return EffectValue::from_entries(inst.monad, std::move(entries));
}

}  // namespace pmonad
}  // namespace celgot
