#pragma once

// The final coalgebra F# X = νγ.T(X + Σγ) as lazily forced, memoized trees.
//
// A tree is a shared cell holding a deferred layer out(t) ∈ #(X, F# X) whose
// node children are Tree values.  Constructions that unfold a finite-state
// coalgebra memoize cells per state, so regular trees become finite cyclic
// graphs.  Trees are only ever compared through truncation.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#ifdef CELGOT_THREADSAFE_TREES
#include <mutex>
#endif

#include "celgot/pmonad.hpp"

namespace celgot {

class TreeCell {
 public:
  using Thunk = std::function<HashValue()>;

  TreeCell(PMonadInstance inst, Thunk thunk);
  TreeCell(PMonadInstance inst, HashValue forced);

  /// Forces the layer once; later calls return the memoized payload.  A
  /// thunk that forces its own cell raises ContractViolation.
  const HashValue& force();
  bool forced() const noexcept { return value_.has_value(); }
  const PMonadInstance& inst() const noexcept { return inst_; }
  std::uint64_t id() const noexcept { return id_; }

 private:
  PMonadInstance inst_;
  std::uint64_t id_;
  Thunk thunk_;
  std::optional<HashValue> value_;
  bool forcing_ = false;
#ifdef CELGOT_THREADSAFE_TREES
  std::recursive_mutex mutex_;
#endif
};

class ResTree {
 public:
  explicit ResTree(std::shared_ptr<TreeCell> cell);
  /// ShapeError unless v is a Tree value.
  static ResTree from_value(const Value& v);

  const PMonadInstance& inst() const noexcept { return cell_->inst(); }
  const HashValue& out() const { return cell_->force(); }
  Value value() const { return Value::tree(cell_, cell_->id()); }
  std::uint64_t id() const noexcept { return cell_->id(); }
  const std::shared_ptr<TreeCell>& cell() const noexcept { return cell_; }

 private:
  std::shared_ptr<TreeCell> cell_;
};

using StepFn = std::function<HashValue(const Value&)>;
using TreeFn = std::function<ResTree(const Value&)>;
using TreeMap = std::function<ResTree(const ResTree&)>;

/// (S, step : S → #(X, S)).  `states` is informative; step may be queried on
/// any value it understands.
struct Coalgebra {
  PMonadInstance inst;
  StepFn step;
  std::optional<Carrier> states;

  static Coalgebra from_map(PMonadInstance inst, const KleisliMap& step);
};

namespace res {

HashValue out(const ResTree& t);
/// out⁻¹: the node children of v must be Tree values.
ResTree out_inv(const PMonadInstance& inst, HashValue v);

/// The unique coalgebra morphism into F# X.
TreeFn coit(const Coalgebra& c);
/// Primitive corecursion: node children of f(s) are inl(tree) or inr(state).
TreeFn corec_prim(const PMonadInstance& inst, StepFn f);
/// coit(e, f) for e : X → #(B,X) and f : B → #(A, F# A).
TreeFn coit2(const PMonadInstance& inst, StepFn e, StepFn f);

ResTree eta_nu(const PMonadInstance& inst, const Value& x);
/// f* for f : X → F# Y, characterized by out f* = m∘#(out f, f*)∘out.
TreeMap kleisli_nu(TreeFn f);
/// μ^ν = id*: leaves of the argument are Tree values.
ResTree mu_nu(const ResTree& t);
ResTree map_nu(const BaseFn& g, const ResTree& t);
/// out⁻¹∘#(id, η^ν).
ResTree ext(const PMonadInstance& inst, const HashValue& v);

/// The depth-n observation of t: Cut at depth 0, otherwise the forced layer
/// with node children truncated at n-1.  Tree values occurring in leaves are
/// truncated at n as well.
Value truncate(const ResTree& t, std::size_t n);
/// Replaces every Tree value inside v by its depth-n truncation.
Value observe(const Value& v, std::size_t n);
bool bisim_depth(const ResTree& a, const ResTree& b, std::size_t n);

/// `T{ leaf x | a(T{ ... }) }` down to depth n, `@cut` at the frontier.
std::string render(const ResTree& t, std::size_t n);
/// Renders an already truncated tree value.
std::string render_truncated(const Value& v);

/// Cells reachable from t through node children (t first, breadth-first).
/// Forces every visited cell; BudgetExceeded beyond `limit` cells.
std::vector<ResTree> reachable(const ResTree& t, std::size_t limit = 4096);

/// Checks out∘h = #(id,h)∘step at every state up to depth n.
bool satisfies_square(const Coalgebra& c, const TreeFn& h, std::span<const Value> states, std::size_t n);

/// A pseudo-random coalgebra on states s1..sk with leaves from `leaves`.
Coalgebra random_coalgebra(const PMonadInstance& inst, const Carrier& leaves, std::size_t states,
                           std::mt19937_64& rng, std::size_t max_entries = 3);

}  // namespace res
}  // namespace celgot
