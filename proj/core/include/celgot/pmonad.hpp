#pragma once

// The parametrized monad #(A,X) = T(A + Σ X) and its Σ-free variant
// T(A + X).  Leaves are tagged inl, nodes inr; a node payload is a Σ-layer
// over X, or a bare element of X when no signature is present.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "celgot/effects.hpp"
#include "celgot/signatures.hpp"

namespace celgot {

struct PMonadInstance {
  EffectMonadId monad;
  std::optional<Signature> sig;

  static PMonadInstance with_sig(EffectMonadId monad, Signature sig) { return {std::move(monad), std::move(sig)}; }
  static PMonadInstance plain(EffectMonadId monad) { return {std::move(monad), std::nullopt}; }

  std::string str() const;
  friend bool operator==(const PMonadInstance&, const PMonadInstance&) = default;
};

/// An element of #(A,X).
using HashValue = EffectValue;

namespace pmonad {

Value leaf(Value a);
Value node(Value payload);
bool is_leaf(const Value& v);

/// Children of a node payload (the layer's children, or the bare element).
std::vector<Value> node_children(const PMonadInstance& inst, const Value& payload);
/// Σ g on a node payload.
Value map_node(const PMonadInstance& inst, const BaseFn& g, const Value& payload);

/// Σ X, or X itself for the plain instance.
Carrier node_carrier(const PMonadInstance& inst, const Carrier& x, std::size_t budget = 1u << 16);
/// A + Σ X.
Carrier hash_base(const PMonadInstance& inst, const Carrier& a, const Carrier& x, std::size_t budget = 1u << 16);

/// Throws unless every entry is a leaf in A or a well-formed node over X.
void validate(const PMonadInstance& inst, const Carrier& a, const Carrier& x, const HashValue& v);

/// u : A → #(A,X).
HashValue hash_unit(const PMonadInstance& inst, const Value& a);
HashValue hash_unit(const PMonadInstance& inst, const Carrier& a_carrier, const Value& a);
/// m : #(#(A,X),X) → #(A,X).  Leaves of the argument carry Effect values.
HashValue hash_mult(const PMonadInstance& inst, const EffectValue& v);
/// #(f,g) = T(f + Σ g).
HashValue hash_bimap(const PMonadInstance& inst, const BaseFn& f, const BaseFn& g, const HashValue& v);
/// Kleisli lifting of #(−,X): leaves a are replaced by k(a).
HashValue hash_bind(const PMonadInstance& inst, const HashValue& v, const std::function<HashValue(const Value&)>& k);

/// Every element of #(A,X) (Maybe and FinPowerset only).
std::vector<HashValue> enumerate(const PMonadInstance& inst, const Carrier& a, const Carrier& x,
                                 std::size_t budget = 1u << 16);

// --- #-algebras and bialgebras -------------------------------------------

using HashStructure = std::function<Value(const HashValue&)>;
using TStructure = std::function<Value(const EffectValue&)>;
using SigmaStructure = std::function<Value(const Value&)>;

/// a∘T inl : TA → A.
TStructure t_part(const HashStructure& a);
/// a∘η∘inr : ΣA → A.
SigmaStructure sigma_part(const PMonadInstance& inst, const HashStructure& a);
/// α∘T[id, f] : #(A,A) → A.
HashStructure recompose(const PMonadInstance& inst, const TStructure& alpha, const SigmaStructure& f);

/// First failing law as a message, or nullopt.  The multiplication square is
/// checked on every value of #(#(A,A),A) when that set fits the budget and on
/// `samples` pseudo-random values otherwise.
std::optional<std::string> check_hash_algebra(const PMonadInstance& inst, const Carrier& a, const HashStructure& s,
                                              std::size_t budget = 1u << 14, std::size_t samples = 400,
                                              unsigned seed = 7);
/// Unit and multiplication laws of an Eilenberg-Moore T-algebra.
std::optional<std::string> check_t_algebra(const EffectMonadId& monad, const Carrier& a, const TStructure& s,
                                           std::size_t budget = 1u << 14);

/// Random element of #(A,X); words of trace values have length ≤ max_word.
HashValue random_hash(const PMonadInstance& inst, const Carrier& a, const Carrier& x, std::mt19937_64& rng,
                      std::size_t max_entries = 3, std::size_t max_word = 2);

}  // namespace pmonad
}  // namespace celgot
