#include "celgot/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace celgot {

Signature::Signature(SigKind kind, std::vector<Symbol> symbols) : kind_(kind), symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty()) throw DomainError("empty symbol name");
    if (!seen.insert(s.name).second) throw DomainError("symbol '" + s.name + "' declared twice");
  }
}

Signature Signature::generic(std::vector<Symbol> symbols) { return {SigKind::Generic, std::move(symbols)}; }

Signature Signature::actions(std::vector<std::string> alphabet) {
  std::vector<Symbol> symbols;
  for (auto& letter : alphabet) symbols.push_back({std::move(letter), 1});
  return {SigKind::ActionPrefix, std::move(symbols)};
}

Signature Signature::delay() { return {SigKind::Delay, {{sig::kDelaySymbol, 1}}}; }

std::vector<std::string> Signature::alphabet() const {
  std::vector<std::string> out;
  if (kind_ != SigKind::ActionPrefix) return out;
  for (const auto& s : symbols_) out.push_back(s.name);
  return out;
}

bool Signature::has_symbol(const std::string& name) const {
  return std::any_of(symbols_.begin(), symbols_.end(), [&](const Symbol& s) { return s.name == name; });
}

std::size_t Signature::arity(const std::string& name) const {
  for (const auto& s : symbols_) {
    if (s.name == name) return s.arity;
  }
  throw DomainError("symbol '" + name + "' is not in " + str());
}

std::size_t Signature::max_arity() const {
  std::size_t m = 0;
  for (const auto& s : symbols_) m = std::max(m, s.arity);
  return m;
}

std::string Signature::str() const {
  switch (kind_) {
    case SigKind::Delay:
      return "delay";
    case SigKind::ActionPrefix: {
      std::string out = "actions(";
      for (std::size_t i = 0; i < symbols_.size(); ++i) out += (i ? "," : "") + symbols_[i].name;
      return out + ")";
    }
    case SigKind::Generic: {
      std::string out = "ops(";
      for (std::size_t i = 0; i < symbols_.size(); ++i) {
        out += (i ? "," : "") + symbols_[i].name + "/" + std::to_string(symbols_[i].arity);
      }
      return out + ")";
    }
  }
  return {};
}

namespace sig {

Value layer(const Signature& s, const std::string& symbol, std::vector<Value> children) {
  Value v = Value::op(symbol, std::move(children));
  check_layer(s, v);
  return v;
}

void check_layer(const Signature& s, const Value& layer) {
  if (!layer.is(ValueKind::Op)) throw ShapeError(layer.str() + " is not a signature layer");
  const std::size_t arity = s.arity(layer.name());
  if (layer.children().size() != arity) {
    throw ShapeError("symbol " + layer.name() + " has arity " + std::to_string(arity) + ", got " +
                     std::to_string(layer.children().size()) + " children");
  }
}

Value sigma_map(const Signature& s, const BaseFn& f, const Value& layer) {
  check_layer(s, layer);
  std::vector<Value> children;
  children.reserve(layer.children().size());
  for (const auto& c : layer.children()) children.push_back(f(c));
  return Value::op(layer.name(), std::move(children));
}

std::vector<Value> enumerate_layers(const Signature& s, const Carrier& x, std::size_t budget) {
  double total = 0;
  for (const auto& sym : s.symbols()) total += std::pow(static_cast<double>(x.size()), static_cast<double>(sym.arity));
  if (total > static_cast<double>(budget)) {
    throw BudgetExceeded("Σ(" + x.name() + ") has " + std::to_string(total) + " layers", total);
  }
  std::vector<Value> out;
  for (const auto& sym : s.symbols()) {
    if (sym.arity > 0 && x.empty()) continue;
    std::vector<std::size_t> idx(sym.arity, 0);
    while (true) {
      std::vector<Value> children;
      for (auto i : idx) children.push_back(x[i]);
      out.push_back(Value::op(sym.name, std::move(children)));
      std::size_t pos = sym.arity;
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++idx[pos] < x.size()) {
          done = false;
          break;
        }
        idx[pos] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

Carrier layer_carrier(const Signature& s, const Carrier& x, std::size_t budget) {
  return Carrier("Σ(" + x.name() + ")", enumerate_layers(s, x, budget));
}

}  // namespace sig
}  // namespace celgot
