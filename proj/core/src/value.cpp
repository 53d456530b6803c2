#include "celgot/value.hpp"

#include <algorithm>
#include <sstream>

#include "celgot/effects.hpp"
#include "celgot/errors.hpp"

namespace celgot {

struct Value::Node {
  ValueKind kind;
  std::string name;
  std::vector<Value> children;
  std::shared_ptr<const EffectValue> effect;
  std::shared_ptr<TreeCell> cell;
  std::uint64_t tree_id = 0;
};

Value Value::atom(std::string name) {
  return Value(std::make_shared<const Node>(Node{ValueKind::Atom, std::move(name), {}, nullptr, nullptr, 0}));
}

Value Value::inl(Value v) {
  return Value(std::make_shared<const Node>(Node{ValueKind::Inl, {}, {std::move(v)}, nullptr, nullptr, 0}));
}

Value Value::inr(Value v) {
  return Value(std::make_shared<const Node>(Node{ValueKind::Inr, {}, {std::move(v)}, nullptr, nullptr, 0}));
}

Value Value::op(std::string symbol, std::vector<Value> children) {
  return Value(
      std::make_shared<const Node>(Node{ValueKind::Op, std::move(symbol), std::move(children), nullptr, nullptr, 0}));
}

Value Value::effect(EffectValue ev) {
  return Value(std::make_shared<const Node>(
      Node{ValueKind::Effect, {}, {}, std::make_shared<const EffectValue>(std::move(ev)), nullptr, 0}));
}

Value Value::tree(std::shared_ptr<TreeCell> cell, std::uint64_t id) {
  return Value(std::make_shared<const Node>(Node{ValueKind::Tree, {}, {}, nullptr, std::move(cell), id}));
}

Value Value::cut() {
  static const Value marker(std::make_shared<const Node>(Node{ValueKind::Cut, {}, {}, nullptr, nullptr, 0}));
  return marker;
}

ValueKind Value::kind() const noexcept { return node_->kind; }

const std::string& Value::name() const {
  if (node_->kind != ValueKind::Atom && node_->kind != ValueKind::Op) {
    throw ShapeError("value " + str() + " has no name");
  }
  return node_->name;
}

const Value& Value::inner() const {
  if (node_->kind != ValueKind::Inl && node_->kind != ValueKind::Inr) {
    throw ShapeError("value " + str() + " is not a coproduct injection");
  }
  return node_->children.front();
}

std::span<const Value> Value::children() const {
  if (node_->kind != ValueKind::Op) {
    throw ShapeError("value " + str() + " is not a signature layer");
  }
  return node_->children;
}

const EffectValue& Value::as_effect() const {
  if (node_->kind != ValueKind::Effect) {
    throw ShapeError("value " + str() + " is not an effect value");
  }
  return *node_->effect;
}

const std::shared_ptr<TreeCell>& Value::tree_cell() const {
  if (node_->kind != ValueKind::Tree) {
    throw ShapeError("value " + str() + " is not a tree");
  }
  return node_->cell;
}

std::uint64_t Value::tree_id() const {
  if (node_->kind != ValueKind::Tree) {
    throw ShapeError("value " + str() + " is not a tree");
  }
  return node_->tree_id;
}

std::string Value::str() const {
  switch (node_->kind) {
    case ValueKind::Atom:
      return node_->name;
    case ValueKind::Inl:
      return "inl(" + node_->children.front().str() + ")";
    case ValueKind::Inr:
      return "inr(" + node_->children.front().str() + ")";
    case ValueKind::Op: {
      std::string out = node_->name + "(";
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        if (i > 0) out += ",";
        out += node_->children[i].str();
      }
      return out + ")";
    }
    case ValueKind::Effect:
      return node_->effect->str();
    case ValueKind::Tree:
      return "<tree#" + std::to_string(node_->tree_id) + ">";
    case ValueKind::Cut:
      return "@cut";
  }
  return {};
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return x.kind <=> y.kind;
  switch (x.kind) {
    case ValueKind::Atom:
      return x.name <=> y.name;
    case ValueKind::Inl:
    case ValueKind::Inr:
      return x.children.front() <=> y.children.front();
    case ValueKind::Op: {
      if (auto c = x.name <=> y.name; c != 0) return c;
      return std::lexicographical_compare_three_way(x.children.begin(), x.children.end(), y.children.begin(),
                                                    y.children.end());
    }
    case ValueKind::Effect:
      return *x.effect <=> *y.effect;
    case ValueKind::Tree:
      return x.tree_id <=> y.tree_id;
    case ValueKind::Cut:
      return std::strong_ordering::equal;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

std::strong_ordering shortlex(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::string word_str(const Word& w) {
  if (w.empty()) return "ε";
  std::string out;
  for (const auto& letter : w) out += letter;
  return out;
}

Carrier::Carrier(std::string name, std::vector<Value> elements) : name_(std::move(name)), elements_(std::move(elements)) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace_back(elements_[i], i);
  std::sort(index_.begin(), index_.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  for (std::size_t i = 1; i < index_.size(); ++i) {
    if (index_[i - 1].first == index_[i].first) {
      throw DomainError("carrier " + name_ + " repeats element " + index_[i].first.str());
    }
  }
}

Carrier Carrier::of_atoms(std::string name, const std::vector<std::string>& atoms) {
  std::vector<Value> elements;
  elements.reserve(atoms.size());
  for (const auto& a : atoms) elements.push_back(Value::atom(a));
  return Carrier(std::move(name), std::move(elements));
}

Carrier Carrier::numbered(std::string name, std::string prefix, std::size_t n) {
  std::vector<std::string> atoms;
  for (std::size_t i = 1; i <= n; ++i) atoms.push_back(prefix + std::to_string(i));
  return of_atoms(std::move(name), atoms);
}

Carrier Carrier::sum(const Carrier& left, const Carrier& right) {
  std::vector<Value> elements;
  elements.reserve(left.size() + right.size());
  for (const auto& a : left.elements()) elements.push_back(Value::inl(a));
  for (const auto& b : right.elements()) elements.push_back(Value::inr(b));
  return Carrier("(" + left.name() + "+" + right.name() + ")", std::move(elements));
}

bool Carrier::contains(const Value& v) const {
  auto it = std::lower_bound(index_.begin(), index_.end(), v, [](const auto& e, const Value& k) { return e.first < k; });
  return it != index_.end() && it->first == v;
}

std::size_t Carrier::index_of(const Value& v) const {
  auto it = std::lower_bound(index_.begin(), index_.end(), v, [](const auto& e, const Value& k) { return e.first < k; });
  if (it == index_.end() || !(it->first == v)) {
    throw DomainError("element " + v.str() + " is not in carrier " + name_);
  }
  return it->second;
}

}  // namespace celgot
