#pragma once

// Polynomial signature functors.  A layer of Σ X is stored as an Op value
// whose children are elements of X.

#include <cstddef>
#include <string>
#include <vector>

#include "celgot/effects.hpp"
#include "celgot/value.hpp"

namespace celgot {

enum class SigKind : std::uint8_t { Generic, ActionPrefix, Delay };

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Signature {
 public:
  /// Arbitrary symbols with arities; an empty list is the constant functor.
  static Signature generic(std::vector<Symbol> symbols);
  /// A × (−): one unary symbol per letter.
  static Signature actions(std::vector<std::string> alphabet);
  /// The identity functor, presented by the single unary symbol `delay`.
  static Signature delay();

  SigKind kind() const noexcept { return kind_; }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  /// Letter names of an action-prefix signature, empty otherwise.
  std::vector<std::string> alphabet() const;
  bool has_symbol(const std::string& name) const;
  /// Throws DomainError for unknown symbols.
  std::size_t arity(const std::string& name) const;
  std::size_t max_arity() const;

  /// `actions(a,b)`, `delay` or `ops(g/2,h/0)`.
  std::string str() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  Signature(SigKind kind, std::vector<Symbol> symbols);
  SigKind kind_;
  std::vector<Symbol> symbols_;
};

namespace sig {

inline const std::string kDelaySymbol = "delay";

/// A validated layer `symbol(children...)`.
Value layer(const Signature& s, const std::string& symbol, std::vector<Value> children);
/// Throws DomainError for unknown symbols and ShapeError for wrong arity or
/// non-layer values.
void check_layer(const Signature& s, const Value& layer);
/// Σ f applied to one layer.
Value sigma_map(const Signature& s, const BaseFn& f, const Value& layer);
/// Every layer of Σ X, symbols in declaration order, children in
/// lexicographic order of carrier positions.
std::vector<Value> enumerate_layers(const Signature& s, const Carrier& x, std::size_t budget = 1u << 16);
/// Σ X as a carrier named `Σ(X)`.
Carrier layer_carrier(const Signature& s, const Carrier& x, std::size_t budget = 1u << 16);

}  // namespace sig
}  // namespace celgot
