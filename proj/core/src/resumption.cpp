#include "celgot/resumption.hpp"

#include <atomic>
#include <deque>
#include <map>
#include <set>

namespace celgot {

namespace {

std::atomic<std::uint64_t> next_cell_id{1};

#ifdef CELGOT_THREADSAFE_TREES
#define CELGOT_LOCK(m) std::lock_guard<std::recursive_mutex> celgot_guard_(m)
#else
#define CELGOT_LOCK(m) \
  do {                 \
  } while (false)
#endif

// Per-construction memo from a key to the cell it produced.
template <typename Key>
struct CellMemo {
  std::map<Key, std::weak_ptr<TreeCell>> cells;
#ifdef CELGOT_THREADSAFE_TREES
  std::recursive_mutex mutex;
#endif

  ResTree get(const Key& key, const PMonadInstance& inst, const std::function<TreeCell::Thunk()>& make) {
#ifdef CELGOT_THREADSAFE_TREES
    std::lock_guard<std::recursive_mutex> guard(mutex);
#endif
    auto it = cells.find(key);
    if (it != cells.end()) {
      if (auto alive = it->second.lock()) return ResTree(alive);
    }
    auto cell = std::make_shared<TreeCell>(inst, make());
    cells[key] = cell;
    return ResTree(cell);
  }
};

}  // namespace

TreeCell::TreeCell(PMonadInstance inst, Thunk thunk)
    : inst_(std::move(inst)), id_(next_cell_id.fetch_add(1)), thunk_(std::move(thunk)) {}

TreeCell::TreeCell(PMonadInstance inst, HashValue forced)
    : inst_(std::move(inst)), id_(next_cell_id.fetch_add(1)), value_(std::move(forced)) {}

const HashValue& TreeCell::force() {
  CELGOT_LOCK(mutex_);
  if (value_) return *value_;
  if (forcing_) throw ContractViolation("tree #" + std::to_string(id_) + " forces itself while being forced");
  forcing_ = true;
  try {
    value_ = thunk_();
  } catch (...) {
    forcing_ = false;
    throw;
  }
  forcing_ = false;
  thunk_ = nullptr;
  return *value_;
}

ResTree::ResTree(std::shared_ptr<TreeCell> cell) : cell_(std::move(cell)) {
  if (!cell_) throw ShapeError("null tree cell");
}

ResTree ResTree::from_value(const Value& v) {
  if (!v.is(ValueKind::Tree)) throw ShapeError("expected a tree, got " + v.str());
  return ResTree(v.tree_cell());
}

Coalgebra Coalgebra::from_map(PMonadInstance inst, const KleisliMap& step) {
  return {std::move(inst), step.fn(), step.domain()};
}

namespace res {

HashValue out(const ResTree& t) { return t.out(); }

ResTree out_inv(const PMonadInstance& inst, HashValue v) {
  if (!(v.monad() == inst.monad)) throw ShapeError("out_inv: value of " + v.monad().str() + " in " + inst.str());
  for (const auto& e : v.entries()) {
    if (pmonad::is_leaf(e.value)) continue;
    for (const auto& c : pmonad::node_children(inst, e.value.inner())) {
      if (!c.is(ValueKind::Tree)) throw ShapeError("out_inv: node child " + c.str() + " is not a tree");
    }
  }
  return ResTree(std::make_shared<TreeCell>(inst, std::move(v)));
}

TreeFn coit(const Coalgebra& c) {
  struct Ctx {
    Coalgebra c;
    CellMemo<Value> memo;
    ResTree tree(const std::shared_ptr<Ctx>& self, const Value& s) {
      return memo.get(s, c.inst, [&] {
        return TreeCell::Thunk([self, s] {
          HashValue step = self->c.step(s);
          return pmonad::hash_bimap(
              self->c.inst, [](const Value& x) { return x; },
              [&](const Value& child) { return self->tree(self, child).value(); }, step);
        });
      });
    }
  };
  auto ctx = std::make_shared<Ctx>(Ctx{c, {}});
  return [ctx](const Value& s) { return ctx->tree(ctx, s); };
}

TreeFn corec_prim(const PMonadInstance& inst, StepFn f) {
  struct Ctx {
    PMonadInstance inst;
    StepFn f;
    CellMemo<Value> memo;
    ResTree tree(const std::shared_ptr<Ctx>& self, const Value& s) {
      return memo.get(s, inst, [&] {
        return TreeCell::Thunk([self, s] {
          return pmonad::hash_bimap(
              self->inst, [](const Value& x) { return x; },
              [&](const Value& child) {
                if (child.is(ValueKind::Inl)) return ResTree::from_value(child.inner()).value();
                if (child.is(ValueKind::Inr)) return self->tree(self, child.inner()).value();
                throw ShapeError("corec_prim: child " + child.str() + " is neither inl(tree) nor inr(state)");
              },
              self->f(s));
        });
      });
    }
  };
  auto ctx = std::make_shared<Ctx>(Ctx{inst, std::move(f), {}});
  return [ctx](const Value& s) { return ctx->tree(ctx, s); };
}

TreeFn coit2(const PMonadInstance& inst, StepFn e, StepFn f) {
  struct Ctx {
    PMonadInstance inst;
    StepFn e;
    StepFn f;
    CellMemo<Value> memo;
    ResTree tree(const std::shared_ptr<Ctx>& self, const Value& x) {
      return memo.get(x, inst, [&] {
        return TreeCell::Thunk([self, x] {
          return effects::bind(self->e(x), [&](const Value& entry) {
            if (pmonad::is_leaf(entry)) return self->f(entry.inner());
            return effects::unit(self->inst.monad,
                                 pmonad::node(pmonad::map_node(
                                     self->inst, [&](const Value& y) { return self->tree(self, y).value(); },
                                     entry.inner())));
          });
        });
      });
    }
  };
  auto ctx = std::make_shared<Ctx>(Ctx{inst, std::move(e), std::move(f), {}});
  return [ctx](const Value& x) { return ctx->tree(ctx, x); };
}

ResTree eta_nu(const PMonadInstance& inst, const Value& x) { return out_inv(inst, pmonad::hash_unit(inst, x)); }

TreeMap kleisli_nu(TreeFn f) {
  struct Ctx {
    TreeFn f;
    CellMemo<std::uint64_t> memo;
    ResTree tree(const std::shared_ptr<Ctx>& self, const ResTree& t) {
      return memo.get(t.id(), t.inst(), [&] {
        return TreeCell::Thunk([self, t] {
          const PMonadInstance& inst = t.inst();
          return effects::bind(t.out(), [&](const Value& entry) {
            if (pmonad::is_leaf(entry)) return self->f(entry.inner()).out();
            return effects::unit(
                inst.monad, pmonad::node(pmonad::map_node(
                                inst,
                                [&](const Value& child) { return self->tree(self, ResTree::from_value(child)).value(); },
                                entry.inner())));
          });
        });
      });
    }
  };
  auto ctx = std::make_shared<Ctx>(Ctx{std::move(f), {}});
  return [ctx](const ResTree& t) { return ctx->tree(ctx, t); };
}

ResTree mu_nu(const ResTree& t) {
  return kleisli_nu([](const Value& leaf) { return ResTree::from_value(leaf); })(t);
}

ResTree map_nu(const BaseFn& g, const ResTree& t) {
  PMonadInstance inst = t.inst();
  return kleisli_nu([inst, g](const Value& x) { return eta_nu(inst, g(x)); })(t);
}

ResTree ext(const PMonadInstance& inst, const HashValue& v) {
  return out_inv(inst, pmonad::hash_bimap(
                           inst, [](const Value& a) { return a; },
                           [&](const Value& x) { return eta_nu(inst, x).value(); }, v));
}

namespace {

struct Truncator {
  std::map<std::pair<std::uint64_t, std::size_t>, Value> memo;

  Value tree(const ResTree& t, std::size_t n) {
    if (n == 0) return Value::cut();
    auto key = std::make_pair(t.id(), n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const PMonadInstance& inst = t.inst();
    Value result = Value::effect(effects::fmap(t.out(), [&](const Value& entry) {
      if (pmonad::is_leaf(entry)) return pmonad::leaf(value(entry.inner(), n));
      return pmonad::node(pmonad::map_node(
          inst, [&](const Value& child) { return tree(ResTree::from_value(child), n - 1); }, entry.inner()));
    }));
    memo.emplace(key, result);
    return result;
  }

  Value value(const Value& v, std::size_t n) {
    switch (v.kind()) {
      case ValueKind::Tree:
        return tree(ResTree::from_value(v), n);
      case ValueKind::Inl:
        return Value::inl(value(v.inner(), n));
      case ValueKind::Inr:
        return Value::inr(value(v.inner(), n));
      case ValueKind::Op: {
        std::vector<Value> children;
        for (const auto& c : v.children()) children.push_back(value(c, n));
        return Value::op(v.name(), std::move(children));
      }
      case ValueKind::Effect:
        return Value::effect(effects::fmap(v.as_effect(), [&](const Value& x) { return value(x, n); }));
      default:
        return v;
    }
  }
};

std::string render_leaf(const Value& v);

std::string render_entry(const EffectValue::Entry& e) {
  std::string body;
  if (e.value.is(ValueKind::Inl)) {
    body = "leaf " + render_leaf(e.value.inner());
  } else {
    const Value& payload = e.value.inner();
    if (payload.is(ValueKind::Op)) {
      body = payload.name() + "(";
      auto children = payload.children();
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i > 0) body += ",";
        body += render_truncated(children[i]);
      }
      body += ")";
    } else {
      body = "node(" + render_truncated(payload) + ")";
    }
  }
  if (e.word.empty()) return body;
  return "(" + word_str(e.word) + "," + body + ")";
}

std::string render_leaf(const Value& v) {
  if (v.is(ValueKind::Effect) || v.is(ValueKind::Cut)) return render_truncated(v);
  return v.str();
}

}  // namespace

Value truncate(const ResTree& t, std::size_t n) {
  Truncator tr;
  return tr.tree(t, n);
}

Value observe(const Value& v, std::size_t n) {
  Truncator tr;
  return tr.value(v, n);
}

bool bisim_depth(const ResTree& a, const ResTree& b, std::size_t n) {
  Truncator tr;
  return tr.tree(a, n) == tr.tree(b, n);
}

std::string render_truncated(const Value& v) {
  if (v.is(ValueKind::Cut)) return "@cut";
  if (!v.is(ValueKind::Effect)) return v.str();
  const EffectValue& ev = v.as_effect();
  if (ev.empty()) return "T{}";
  std::string out = "T{ ";
  bool first = true;
  for (const auto& e : ev.entries()) {
    if (!first) out += " | ";
    first = false;
    out += render_entry(e);
  }
  return out + " }";
}

std::string render(const ResTree& t, std::size_t n) { return render_truncated(truncate(t, n)); }

std::vector<ResTree> reachable(const ResTree& t, std::size_t limit) {
  std::vector<ResTree> order;
  std::set<std::uint64_t> seen;
  std::deque<ResTree> queue{t};
  seen.insert(t.id());
  while (!queue.empty()) {
    ResTree cur = queue.front();
    queue.pop_front();
    order.push_back(cur);
    if (order.size() > limit) {
      throw BudgetExceeded("more than " + std::to_string(limit) + " reachable cells", static_cast<double>(limit + 1));
    }
    for (const auto& e : cur.out().entries()) {
      if (pmonad::is_leaf(e.value)) continue;
      for (const auto& c : pmonad::node_children(cur.inst(), e.value.inner())) {
        ResTree child = ResTree::from_value(c);
        if (seen.insert(child.id()).second) queue.push_back(child);
      }
    }
  }
  return order;
}

bool satisfies_square(const Coalgebra& c, const TreeFn& h, std::span<const Value> states, std::size_t n) {
  for (const auto& s : states) {
    ResTree lhs = h(s);
    ResTree rhs = out_inv(c.inst, pmonad::hash_bimap(
                                      c.inst, [](const Value& x) { return x; },
                                      [&](const Value& y) { return h(y).value(); }, c.step(s)));
    if (!bisim_depth(lhs, rhs, n)) return false;
  }
  return true;
}

Coalgebra random_coalgebra(const PMonadInstance& inst, const Carrier& leaves, std::size_t states,
                           std::mt19937_64& rng, std::size_t max_entries) {
  Carrier s = Carrier::numbered("S", "s", states);
  std::map<Value, EffectValue> table;
  for (const auto& x : s.elements()) table.emplace(x, pmonad::random_hash(inst, leaves, s, rng, max_entries));
  KleisliMap step(s, inst.monad, std::move(table));
  return Coalgebra::from_map(inst, step);
}

}  // namespace res
}  // namespace celgot
