#pragma once

// Connections between T, T_ν and Elgot algebras on #(X,Y) = T(X+Y):
// collapsing of delay trees, trace semantics, and the passage between monad
// iteration and algebra iteration.

#include <optional>
#include <string>
#include <vector>

#include "celgot/effects.hpp"
#include "celgot/elgot.hpp"
#include "celgot/lawcheck.hpp"
#include "celgot/resumption.hpp"

namespace celgot::bridge {

/// δ(t) = out† for trees over the plain instance or the delay signature.
/// Exact Kleene iteration over the reachable cells when there are at most
/// `cell_limit` of them, otherwise the depth-`policy.bound` approximant.
Approximation<EffectValue> delta_collapse(const ResTree& t,
                                          effects::IterationPolicy policy = effects::IterationPolicy::exact(),
                                          std::size_t cell_limit = 1u << 14);

/// The leaf value marking successful termination.
Value tick();

/// Successful traces of length ≤ maxlen from `var`, shortlex ordered.  The
/// system has leaves {tick} and either the action-prefix signature, whose
/// prefixes become letters, or the delay signature over the trace monad.
std::vector<Word> trace_set(const Coalgebra& system, const Value& var, std::size_t maxlen);

/// e‡ = a∘e† for e : X ⇸ A+X and a T-algebra a : TA → A.
BaseMap iistar_from_istar(const pmonad::TStructure& a, const KleisliMap& e,
                          effects::IterationPolicy policy = effects::IterationPolicy::exact());
/// The same through the composite structure: (a∘T∇)∘T inl∘e†.
BaseMap iistar_from_istar_composite(const pmonad::TStructure& a, const KleisliMap& e,
                                    effects::IterationPolicy policy = effects::IterationPolicy::exact());

/// J(A,a): structure a∘T∇ on the plain instance, iteration e ↦ a∘e† computed
/// over the states reachable from the query.
ElgotAlgebra codiag_elgot(const EffectMonadId& monad, std::string name, std::optional<Carrier> carrier,
                          pmonad::TStructure a,
                          effects::IterationPolicy policy = effects::IterationPolicy::exact());
/// J(TY, μ).  Carrier values are Effect values.
ElgotAlgebra free_t_algebra(const EffectMonadId& monad,
                            effects::IterationPolicy policy = effects::IterationPolicy::exact());

/// e† = (T(η+id)∘e)‡ in the algebra `alg` on TY.
KleisliMap istar_from_iistar(const ElgotAlgebra& alg, const KleisliMap& e);
/// The monad iteration induced by J(TY, μ).
IterationOperator derived_operator(const EffectMonadId& monad,
                                   effects::IterationPolicy policy = effects::IterationPolicy::exact());

/// (m∘e)‡ = (e‡)‡ at every state, where e : X → #(#(A,X),X) has Effect
/// values of #(A,X) as leaves, the inner ‡ is taken in `inner` (an algebra on
/// #(A,X)) and the outer ones in `alg`.
CheckResult check_codiag_alg(const ElgotAlgebra& alg, const ElgotAlgebra& inner, const Coalgebra& e,
                             const Carrier& states);
/// As above with inner = free_t_algebra(alg.inst.monad).
CheckResult check_codiag_alg(const ElgotAlgebra& alg, const Coalgebra& e, const Carrier& states);

/// (TX, μ∘δ) as an Eilenberg-Moore algebra of T_ν; leaves are Effect values.
EMAlgebra mu_delta_algebra(const EffectMonadId& monad, std::optional<Carrier> carrier = std::nullopt);

}  // namespace celgot::bridge
