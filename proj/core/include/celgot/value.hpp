#pragma once

// The value universe shared by every module.  Carriers are finite sets of
// atoms, but the constructions on them (coproducts, signature layers,
// effect values, resumption trees) nest arbitrarily, so elements are
// represented by one immutable, totally ordered, dynamically tagged value.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace celgot {

class EffectValue;
class TreeCell;

enum class ValueKind : std::uint8_t {
  Atom,    // base element, identified by name
  Inl,     // left coproduct injection
  Inr,     // right coproduct injection
  Op,      // signature layer: symbol applied to children
  Effect,  // an element of T X used as a plain value
  Tree,    // a node of a final coalgebra, ordered by identity
  Cut,     // truncation frontier marker
};

class Value {
 public:
  static Value atom(std::string name);
  static Value inl(Value v);
  static Value inr(Value v);
  static Value op(std::string symbol, std::vector<Value> children);
  static Value effect(EffectValue ev);
  static Value tree(std::shared_ptr<TreeCell> cell, std::uint64_t id);
  static Value cut();

  ValueKind kind() const noexcept;
  bool is(ValueKind k) const noexcept { return kind() == k; }

  /// Atom name or Op symbol.
  const std::string& name() const;
  /// Payload of Inl / Inr.
  const Value& inner() const;
  /// Children of an Op layer.
  std::span<const Value> children() const;
  const EffectValue& as_effect() const;
  const std::shared_ptr<TreeCell>& tree_cell() const;
  std::uint64_t tree_id() const;

  /// Textual form: atoms by name, `inl(v)`, `inr(v)`, `f(a,b)`, effects in
  /// their own syntax, trees as `<tree#id>`, the marker as `@cut`.
  std::string str() const;

  friend std::strong_ordering operator<=>(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b);

 private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A word over an action alphabet; letters are kept as names.
using Word = std::vector<std::string>;

/// Shortlex order: shorter words first, then lexicographic by letter.
std::strong_ordering shortlex(const Word& a, const Word& b);
/// Concatenated letters, or `ε` for the empty word.
std::string word_str(const Word& w);

/// A finite ordered set of distinct values.
class Carrier {
 public:
  Carrier() = default;
  Carrier(std::string name, std::vector<Value> elements);

  static Carrier of_atoms(std::string name, const std::vector<std::string>& atoms);
  /// Atoms `<prefix>1 .. <prefix>n`.
  static Carrier numbered(std::string name, std::string prefix, std::size_t n);
  /// Disjoint union with elements `inl(a)` followed by `inr(b)`.
  static Carrier sum(const Carrier& left, const Carrier& right);

  const std::string& name() const noexcept { return name_; }
  std::span<const Value> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(const Value& v) const;
  /// Position in canonical order; throws DomainError when absent.
  std::size_t index_of(const Value& v) const;
  const Value& operator[](std::size_t i) const { return elements_.at(i); }

  friend bool operator==(const Carrier& a, const Carrier& b) { return a.elements_ == b.elements_; }

 private:
  std::string name_;
  std::vector<Value> elements_;
  std::vector<std::pair<Value, std::size_t>> index_;  // sorted by value
};

}  // namespace celgot
