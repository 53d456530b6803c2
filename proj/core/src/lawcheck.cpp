#include "celgot/lawcheck.hpp"

#include <cmath>
#include <random>

#include "celgot/errors.hpp"

namespace celgot::laws {

namespace {

using effects::fmap;
using effects::unit;

struct Slot {
  enum class Kind : std::uint8_t { Kleisli, Base };
  Kind kind;
  char role;  // 'f', 'g', 'h'
  Carrier domain;
  Carrier codomain;
};

struct Uses {
  bool x = false;
  bool y = false;
  bool z = false;
};

Uses uses(LawId law) {
  switch (law) {
    case LawId::Fixpoint:
    case LawId::Codiagonal:
    case LawId::CodiagonalFootnote:
      return {true, true, false};
    default:
      return {true, true, true};
  }
}

std::vector<Slot> slots(LawId law, const Carrier& x, const Carrier& y, const Carrier& z) {
  using K = Slot::Kind;
  auto sum = Carrier::sum;
  switch (law) {
    case LawId::Fixpoint:
      return {{K::Kleisli, 'f', x, sum(y, x)}};
    case LawId::Naturality:
      return {{K::Kleisli, 'f', x, sum(y, x)}, {K::Kleisli, 'g', y, z}};
    case LawId::Codiagonal:
      return {{K::Kleisli, 'g', x, sum(sum(y, x), x)}};
    case LawId::CodiagonalFootnote:
      return {{K::Kleisli, 'g', x, sum(y, sum(x, x))}};
    case LawId::Uniformity:
      return {{K::Kleisli, 'f', x, sum(y, x)}, {K::Kleisli, 'g', z, sum(y, z)}, {K::Base, 'h', z, x}};
    case LawId::Dinaturality:
      return {{K::Kleisli, 'g', x, sum(y, z)}, {K::Kleisli, 'h', z, sum(y, x)}};
    case LawId::Bekic:
      return {{K::Kleisli, 'f', y, sum(sum(z, y), x)}, {K::Kleisli, 'g', x, sum(sum(z, y), x)}};
    case LawId::Weak:
      return {{K::Kleisli, 'g', x, sum(y, x)}, {K::Kleisli, 'f', y, sum(z, y)}};
  }
  return {};
}

double slot_count(const EffectMonadId& monad, const Slot& s) {
  const double per = s.kind == Slot::Kind::Base ? static_cast<double>(s.codomain.size())
                                                : effects::count(monad, s.codomain);
  return std::pow(per, static_cast<double>(s.domain.size()));
}

std::vector<BaseMap> enumerate_base_maps(const Carrier& dom, const Carrier& cod) {
  std::vector<BaseMap> out;
  if (cod.empty() && !dom.empty()) return out;
  std::vector<std::size_t> idx(dom.size(), 0);
  while (true) {
    std::map<Value, Value> table;
    for (std::size_t i = 0; i < dom.size(); ++i) table.emplace(dom[i], cod[idx[i]]);
    out.emplace_back(dom, std::move(table));
    std::size_t i = dom.size();
    while (i > 0 && ++idx[i - 1] == cod.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

EffectValue random_effect(const EffectMonadId& monad, const Carrier& c, std::mt19937_64& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::vector<EffectValue::Entry> entries;
  const std::size_t n = pick(4);
  const std::size_t max_len = std::min<std::size_t>(2, monad.horizon().value_or(2));
  for (std::size_t i = 0; i < n && !c.empty(); ++i) {
    Word w;
    const std::size_t len = pick(max_len + 1);
    for (std::size_t j = 0; j < len; ++j) w.push_back(monad.alphabet()[pick(monad.alphabet().size())]);
    entries.push_back({std::move(w), c[pick(c.size())]});
  }
  return EffectValue::from_entries(monad, std::move(entries));
}

LawInstance make_instance(LawId law, const EffectMonadId& monad, const Carrier& x, const Carrier& y,
                          const Carrier& z) {
  return LawInstance{law, monad, x, y, z, std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}};
}

void assign(LawInstance& inst, const Slot& s, const KleisliMap& m) {
  if (s.role == 'f') inst.f = m;
  if (s.role == 'g') inst.g = m;
  if (s.role == 'h') inst.h = m;
}

std::string sizes_tag(const Carrier& x, const Carrier& y, const Carrier& z, const Uses& u) {
  std::string tag = "x" + std::to_string(x.size()) + "y" + std::to_string(y.size());
  if (u.z) tag += "z" + std::to_string(z.size());
  return tag;
}

const KleisliMap& need(const std::optional<KleisliMap>& m, const char* role) {
  if (!m) throw ShapeError(std::string("law instance lacks its ") + role + " map");
  return *m;
}

EffectValue as_inl(const EffectValue& v) { return fmap(v, [](const Value& a) { return Value::inl(a); }); }

CheckResult compare(const Carrier& dom, const std::function<EffectValue(const Value&)>& lhs,
                    const std::function<EffectValue(const Value&)>& rhs) {
  for (const auto& x : dom.elements()) {
    EffectValue l = lhs(x);
    EffectValue r = rhs(x);
    if (!(l == r)) return CheckResult::fail("at " + x.str() + ": lhs " + l.str() + " rhs " + r.str());
  }
  return CheckResult::pass();
}

}  // namespace

const char* law_name(LawId id) {
  switch (id) {
    case LawId::Fixpoint:
      return "fixpoint";
    case LawId::Naturality:
      return "naturality";
    case LawId::Codiagonal:
      return "codiagonal";
    case LawId::CodiagonalFootnote:
      return "codiagonal-footnote";
    case LawId::Uniformity:
      return "uniformity";
    case LawId::Dinaturality:
      return "dinaturality";
    case LawId::Bekic:
      return "bekic";
    case LawId::Weak:
      return "weak";
  }
  return "?";
}

std::optional<LawId> parse_law(const std::string& name) {
  for (LawId id : all_laws()) {
    if (name == law_name(id)) return id;
  }
  return std::nullopt;
}

const std::vector<LawId>& all_laws() {
  static const std::vector<LawId> ids{LawId::Fixpoint,     LawId::Naturality, LawId::Codiagonal,
                                      LawId::CodiagonalFootnote, LawId::Uniformity, LawId::Dinaturality,
                                      LawId::Bekic,        LawId::Weak};
  return ids;
}

IterationOperator kleene(effects::IterationPolicy policy) {
  return [policy](const KleisliMap& f) { return effects::iterate(f, policy).value; };
}

IterationOperator truncated(std::size_t depth) {
  return [depth](const KleisliMap& f) { return effects::iterate(f, effects::IterationPolicy::depth(depth)).value; };
}

Carrier x_carrier(std::size_t n) { return Carrier::numbered("X", "x", n); }
Carrier y_carrier(std::size_t n) { return Carrier::numbered("Y", "y", n); }
Carrier z_carrier(std::size_t n) { return Carrier::numbered("Z", "z", n); }

double instance_count(LawId law, const EffectMonadId& monad, const SizeBounds& sizes) {
  double n = 1;
  for (const auto& s : slots(law, x_carrier(sizes.x), y_carrier(sizes.y), z_carrier(sizes.z))) {
    n *= slot_count(monad, s);
  }
  return n;
}

std::vector<LawInstance> enumerate_instances(LawId law, const EffectMonadId& monad, const SizeBounds& sizes,
                                             std::size_t budget, std::size_t samples, unsigned seed) {
  const Uses u = uses(law);
  if ((u.x && sizes.x == 0) || (u.y && sizes.y == 0) || (u.z && sizes.z == 0)) return {};
  const Carrier x = x_carrier(sizes.x);
  const Carrier y = y_carrier(sizes.y);
  const Carrier z = z_carrier(sizes.z);
  const std::vector<Slot> ss = slots(law, x, y, z);
  const std::string tag = sizes_tag(x, y, z, u);
  std::vector<LawInstance> out;

  if (monad.kind() == MonadKind::TracePowerset) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      LawInstance inst = make_instance(law, monad, x, y, z);
      for (const auto& s : ss) {
        if (s.kind == Slot::Kind::Base) {
          std::map<Value, Value> table;
          for (const auto& d : s.domain.elements()) {
            table.emplace(d, s.codomain[std::uniform_int_distribution<std::size_t>(0, s.codomain.size() - 1)(rng)]);
          }
          inst.hb = BaseMap(s.domain, std::move(table));
        } else {
          assign(inst, s, KleisliMap::from_fn(s.domain, monad,
                                              [&](const Value&) { return random_effect(monad, s.codomain, rng); }));
        }
      }
      inst.id = tag + "/s" + std::to_string(i);
      out.push_back(std::move(inst));
    }
    return out;
  }

  const double total = instance_count(law, monad, sizes);
  if (total > static_cast<double>(budget)) {
    throw BudgetExceeded(std::string(law_name(law)) + " over " + monad.str() + " needs " +
                             std::to_string(static_cast<long long>(total)) + " instances",
                         total);
  }
  std::vector<std::vector<KleisliMap>> kspaces;
  std::vector<std::vector<BaseMap>> bspaces;
  std::vector<std::size_t> sizes_per_slot;
  for (const auto& s : ss) {
    if (s.kind == Slot::Kind::Base) {
      bspaces.push_back(enumerate_base_maps(s.domain, s.codomain));
      kspaces.emplace_back();
      sizes_per_slot.push_back(bspaces.back().size());
    } else {
      kspaces.push_back(effects::enumerate_maps(monad, s.domain, s.codomain, budget));
      bspaces.emplace_back();
      sizes_per_slot.push_back(kspaces.back().size());
    }
  }
  for (std::size_t n : sizes_per_slot) {
    if (n == 0) return out;
  }
  std::vector<std::size_t> idx(ss.size(), 0);
  std::size_t serial = 0;
  while (true) {
    LawInstance inst = make_instance(law, monad, x, y, z);
    for (std::size_t i = 0; i < ss.size(); ++i) {
      if (ss[i].kind == Slot::Kind::Base) {
        inst.hb = bspaces[i][idx[i]];
      } else {
        assign(inst, ss[i], kspaces[i][idx[i]]);
      }
    }
    inst.id = tag + "/" + std::to_string(serial++);
    out.push_back(std::move(inst));
    std::size_t i = ss.size();
    while (i > 0 && ++idx[i - 1] == sizes_per_slot[i - 1]) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

CheckResult check_law(const LawInstance& in, const IterationOperator& iter) {
  const EffectMonadId& monad = in.monad;
  auto eta = [&](const Value& v) { return unit(monad, v); };
  try {
    switch (in.law) {
      case LawId::Fixpoint: {
        const KleisliMap& f = need(in.f, "f");
        KleisliMap fd = iter(f);
        return compare(in.x, fd.fn(), [&](const Value& x) {
          return effects::bind(f(x), [&](const Value& v) { return v.is(ValueKind::Inl) ? eta(v.inner()) : fd(v.inner()); });
        });
      }
      case LawId::Naturality: {
        const KleisliMap& f = need(in.f, "f");
        const KleisliMap& g = need(in.g, "g");
        KleisliMap fd = iter(f);
        KleisliMap rhs = iter(KleisliMap::from_fn(in.x, monad, [&](const Value& x) {
          return effects::bind(f(x), [&](const Value& v) { return v.is(ValueKind::Inl) ? as_inl(g(v.inner())) : eta(v); });
        }));
        return compare(in.x, [&](const Value& x) { return effects::bind(fd(x), g.fn()); }, rhs.fn());
      }
      case LawId::Codiagonal: {
        const KleisliMap& g = need(in.g, "g");
        KleisliMap lhs = iter(KleisliMap::from_fn(in.x, monad, [&](const Value& x) {
          return fmap(g(x), [](const Value& v) { return v.is(ValueKind::Inl) ? v.inner() : v; });
        }));
        KleisliMap rhs = iter(iter(g));
        return compare(in.x, lhs.fn(), rhs.fn());
      }
      case LawId::CodiagonalFootnote: {
        const KleisliMap& g = need(in.g, "g");
        KleisliMap lhs = iter(KleisliMap::from_fn(in.x, monad, [&](const Value& x) {
          return fmap(g(x), [](const Value& v) { return v.is(ValueKind::Inl) ? v : Value::inr(v.inner().inner()); });
        }));
        KleisliMap rhs = iter(iter(KleisliMap::from_fn(in.x, monad, [&](const Value& x) {
          return fmap(g(x), effects::assoc_inv);
        })));
        return compare(in.x, lhs.fn(), rhs.fn());
      }
      case LawId::Uniformity: {
        const KleisliMap& f = need(in.f, "f");
        const KleisliMap& g = need(in.g, "g");
        if (!in.hb) throw ShapeError("uniformity instance lacks its base map");
        const BaseMap& h = *in.hb;
        for (const auto& z : in.z.elements()) {
          EffectValue left = f(h(z));
          EffectValue right = fmap(g(z), [&](const Value& v) { return v.is(ValueKind::Inl) ? v : Value::inr(h(v.inner())); });
          if (!(left == right)) return CheckResult::vacuous();
        }
        KleisliMap fd = iter(f);
        KleisliMap gd = iter(g);
        return compare(in.z, [&](const Value& z) { return fd(h(z)); }, gd.fn());
      }
      case LawId::Dinaturality: {
        const KleisliMap& g = need(in.g, "g");
        const KleisliMap& h = need(in.h, "h");
        KleisliMap lhs = iter(KleisliMap::from_fn(in.x, monad, [&](const Value& x) {
          return effects::bind(g(x), [&](const Value& v) { return v.is(ValueKind::Inl) ? eta(v) : h(v.inner()); });
        }));
        KleisliMap kd = iter(KleisliMap::from_fn(in.z, monad, [&](const Value& z) {
          return effects::bind(h(z), [&](const Value& v) { return v.is(ValueKind::Inl) ? eta(v) : g(v.inner()); });
        }));
        return compare(in.x, lhs.fn(), [&](const Value& x) {
          return effects::bind(g(x), [&](const Value& v) { return v.is(ValueKind::Inl) ? eta(v.inner()) : kd(v.inner()); });
        });
      }
      case LawId::Bekic: {
        const KleisliMap& f = need(in.f, "f");
        const KleisliMap& g = need(in.g, "g");
        const Carrier w = Carrier::sum(in.y, in.x);
        KleisliMap lhs = iter(KleisliMap::from_fn(w, monad, [&](const Value& v) {
          return fmap(v.is(ValueKind::Inl) ? f(v.inner()) : g(v.inner()), effects::assoc);
        }));
        KleisliMap gd = iter(g);
        KleisliMap hd = iter(KleisliMap::from_fn(in.y, monad, [&](const Value& y) {
          return effects::bind(f(y), [&](const Value& v) { return v.is(ValueKind::Inl) ? eta(v.inner()) : gd(v.inner()); });
        }));
        return compare(w, lhs.fn(), [&](const Value& v) {
          if (v.is(ValueKind::Inl)) return hd(v.inner());
          return effects::bind(gd(v.inner()), [&](const Value& u) { return u.is(ValueKind::Inl) ? eta(u.inner()) : hd(u.inner()); });
        });
      }
      case LawId::Weak: {
        const KleisliMap& g = need(in.g, "g");
        const KleisliMap& f = need(in.f, "f");
        const Carrier w = Carrier::sum(in.y, in.x);
        KleisliMap k = iter(KleisliMap::from_fn(w, monad, [&](const Value& v) {
          EffectValue first = v.is(ValueKind::Inl) ? eta(v) : g(v.inner());
          return effects::bind(first, [&](const Value& u) {
            EffectValue second = u.is(ValueKind::Inl) ? as_inl(f(u.inner())) : eta(u);
            return fmap(second, effects::assoc);
          });
        }));
        KleisliMap gd = iter(g);
        KleisliMap fd = iter(f);
        return compare(in.x, [&](const Value& x) { return k(Value::inr(x)); },
                       [&](const Value& x) { return effects::bind(gd(x), fd.fn()); });
      }
    }
  } catch (const NonConvergence& e) {
    return CheckResult::nonconv(e.what());
  }
  return CheckResult::pass();
}

Report run_suite(const SuiteOptions& options, const IterationOperator& iter) {
  Report report;
  EffectMonadId monad = options.monad;
  if (monad.kind() == MonadKind::TracePowerset) {
    monad = monad.with_horizon(options.depth == 0 ? 0 : options.depth - 1);
  }
  for (LawId law : options.laws) {
    const Uses u = uses(law);
    const std::size_t zmax = u.z ? options.max_size : 1;
    for (std::size_t sx = 1; sx <= options.max_size; ++sx) {
      for (std::size_t sy = 1; sy <= options.max_size; ++sy) {
        for (std::size_t sz = 1; sz <= zmax; ++sz) {
          auto instances = enumerate_instances(law, monad, {sx, sy, u.z ? sz : 0}, options.budget,
                                               options.samples, options.seed);
          for (const auto& inst : instances) {
            report.add({law_name(law), inst.id, check_law(inst, iter)}, options.keep_passing_lines);
          }
        }
      }
    }
  }
  return report;
}

}  // namespace celgot::laws
