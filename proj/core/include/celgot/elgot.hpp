#pragma once

// Complete Elgot #-algebras: continuous algebras with least-solution
// iteration, the free algebra on a final coalgebra, the correspondence with
// Eilenberg-Moore algebras of F#, and checkers for the algebra axioms.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "celgot/pmonad.hpp"
#include "celgot/report.hpp"
#include "celgot/resumption.hpp"

namespace celgot {

using Solution = std::function<Value(const Value&)>;
/// e ↦ e†.  The equation e : X → #(A,X) is passed as a coalgebra whose
/// leaves live in the algebra's carrier.
using IterationFn = std::function<Solution(const Coalgebra&)>;
using EqualFn = std::function<bool(const Value&, const Value&)>;

struct ElgotAlgebra {
  std::string name;
  PMonadInstance inst;
  std::optional<Carrier> carrier;  // absent for tree carriers
  pmonad::HashStructure structure;
  IterationFn iterate;
  EqualFn equal;
};

struct EMAlgebra {
  std::string name;
  PMonadInstance inst;
  std::optional<Carrier> carrier;
  std::function<Value(const ResTree&)> chi;
  EqualFn equal;
};

struct CppoAlgebraSpec {
  std::string name;
  PMonadInstance inst;
  Carrier carrier;
  std::function<bool(const Value&, const Value&)> leq;
  Value bottom = Value::cut();
  pmonad::HashStructure structure;
  /// Minimum number of Kleene steps before giving up; the solver widens it
  /// to |states|·|carrier|+1, the longest strictly ascending chain.
  std::size_t window = 256;
  std::size_t state_budget = 1u << 14;
};

namespace alg {

/// Least solutions: e† = ⊔ e_i† with e_0† = ⊥ and e_{i+1}† = a∘#(id, e_i†)∘e,
/// computed over the states reachable from the queried point.
ElgotAlgebra continuous_elgot(const CppoAlgebraSpec& spec);
/// Throws ContractViolation unless the structure is monotone in node
/// children and bottom is least.
void check_monotone(const CppoAlgebraSpec& spec, std::size_t budget = 1u << 14);

/// Total order 0 < 1 < … < n-1 on atoms named by numbers.
std::function<bool(const Value&, const Value&)> chain_order(std::size_t n);
/// Flat order with `bottom` below everything else.
std::function<bool(const Value&, const Value&)> flat_order(const Value& bottom);

/// The continuous algebras shipped for tests and tools; carriers have at
/// most three elements.
std::vector<CppoAlgebraSpec> shipped_algebras();
/// Shipped algebras for #(X,Y) = T(X+Y) whose structure factors through T∇.
std::vector<CppoAlgebraSpec> shipped_codiagonal_algebras();

/// The free algebra on X: structure out⁻¹∘m∘#(out,id), iteration
/// e† = coit(c)∘inr.  Carrier values are Tree values; equality is bisimilarity
/// up to `depth`.
ElgotAlgebra free_elgot(const PMonadInstance& inst, std::size_t depth = 6);
/// out⁻¹∘u.
ResTree free_unit(const PMonadInstance& inst, const Value& x);
/// φ∘#(η,id) : #(X, F#X) → F#X.
ResTree free_phi_eta(const PMonadInstance& inst, const HashValue& v);

/// Structure χ∘ext, iteration e† = χ∘coit e.
ElgotAlgebra em_to_elgot(const EMAlgebra& em);
/// χ = out† evaluated on the cells reachable from the argument.
EMAlgebra elgot_to_em(const ElgotAlgebra& a);
/// χ as the limit of evaluating depth-n truncations with ⊥ at the frontier;
/// stops once `stable` consecutive depths agree or at `max_depth`.
EMAlgebra em_from_limits(const CppoAlgebraSpec& spec, std::size_t stable = 24, std::size_t max_depth = 4096);

/// EM laws χ∘η^ν = id on the carrier and χ∘F#χ = χ∘μ^ν on the given trees
/// (whose leaves are trees over the carrier).
CheckResult check_em_laws(const EMAlgebra& em, std::span<const ResTree> two_level);

// --- axioms -------------------------------------------------------------

/// f† • g = #(f†, id)∘g.
StepFn bullet(const PMonadInstance& inst, const Solution& f_dagger, const StepFn& g);
/// f ■ g = m∘#(#(id,inl)∘f, inr)∘[u, g] on Y + X.
StepFn square(const PMonadInstance& inst, const StepFn& f, const StepFn& g);

enum class AlgebraAxiom : std::uint8_t { Solution, Functoriality, Compositionality };
const char* axiom_name(AlgebraAxiom a);

/// e : X → #(A,X); for functoriality also f : Y → #(A,Y) and h : X → Y;
/// for compositionality f : Y → #(A,Y) and g : X → #(Y,X).
struct AxiomInstance {
  std::string id;
  Carrier x;
  Carrier y;
  StepFn e;
  StepFn f;
  StepFn g;
  BaseFn h;
};

CheckResult check_algebra_axiom(const ElgotAlgebra& a, AlgebraAxiom axiom, const AxiomInstance& inst);

struct HomReport {
  bool elgot_morphism = true;
  bool hash_morphism = true;
  std::string witness;
  /// The implication "Elgot morphism ⇒ #-algebra morphism".
  bool implication_holds() const { return !elgot_morphism || hash_morphism; }
};

/// Checks ((#(f,id)∘e)‡ = f∘e† on the sampled equations (over `states`),
/// then f∘a = b∘#(f,f) on every #(A,A) value (or `samples` random ones).
HomReport check_hom(const BaseFn& f, const ElgotAlgebra& a, const ElgotAlgebra& b,
                    const std::vector<std::pair<Coalgebra, Carrier>>& equations, std::size_t budget = 1u << 14);

struct ProbeReport {
  std::vector<bool> satisfies;
  bool satisfying_agree = true;
};

/// Text for witnesses: trees are rendered to a small depth.
std::string show(const Value& v);

/// Which candidate maps X → F#Y satisfy the solution equation of e in the
/// free algebra up to depth n; all satisfying ones must be bisimilar there.
ProbeReport unique_solution_probe(const ElgotAlgebra& free_alg, const Coalgebra& e, std::span<const Value> states,
                                  const std::vector<TreeFn>& candidates, std::size_t n);

// --- the algebra on #(Y,A) induced by f : Y → A ------------------------------

/// α^f : #(#(Y,A), #(Y,A)) → #(Y,A) and e‡ = m∘#(id, ē†)∘e with
/// ē = #(α∘#(f,id), id)∘e.  Carrier values are Effect values.
ElgotAlgebra induced_algebra(const ElgotAlgebra& a, const BaseFn& f, std::optional<Carrier> carrier = std::nullopt);

}  // namespace alg
}  // namespace celgot
