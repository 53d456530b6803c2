#include "celgot/effects.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace celgot {

// --- EffectMonadId ---------------------------------------------------------

EffectMonadId EffectMonadId::maybe() { return {MonadKind::Maybe, {}, std::nullopt}; }

EffectMonadId EffectMonadId::powerset() { return {MonadKind::FinPowerset, {}, std::nullopt}; }

EffectMonadId EffectMonadId::traces(std::vector<std::string> alphabet, std::optional<std::size_t> horizon) {
  if (alphabet.empty()) throw DomainError("trace monad needs a nonempty alphabet");
  std::vector<std::string> sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("trace monad alphabet repeats a letter");
  }
  return {MonadKind::TracePowerset, std::move(alphabet), horizon};
}

EffectMonadId EffectMonadId::with_horizon(std::optional<std::size_t> horizon) const {
  if (kind_ != MonadKind::TracePowerset) throw ShapeError("only the trace monad has a horizon");
  return {kind_, alphabet_, horizon};
}

bool EffectMonadId::has_letter(const std::string& letter) const {
  return std::find(alphabet_.begin(), alphabet_.end(), letter) != alphabet_.end();
}

std::string EffectMonadId::str() const {
  switch (kind_) {
    case MonadKind::Maybe:
      return "maybe";
    case MonadKind::FinPowerset:
      return "powerset";
    case MonadKind::TracePowerset: {
      std::string out = "traces(";
      for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (i > 0) out += ",";
        out += alphabet_[i];
      }
      out += ")";
      if (horizon_) out += "<=" + std::to_string(*horizon_);
      return out;
    }
  }
  return {};
}

// --- EffectValue -------------------------------------------------------------

std::strong_ordering operator<=>(const EffectValue::Entry& a, const EffectValue::Entry& b) {
  if (auto c = shortlex(a.word, b.word); c != 0) return c;
  return a.value <=> b.value;
}

bool operator==(const EffectValue::Entry& a, const EffectValue::Entry& b) { return (a <=> b) == 0; }

EffectValue EffectValue::nothing() { return {EffectMonadId::maybe(), {}}; }

EffectValue EffectValue::just(Value v) { return {EffectMonadId::maybe(), {Entry{{}, std::move(v)}}}; }

EffectValue EffectValue::set(const EffectMonadId& monad, std::vector<Value> elements) {
  if (monad.kind() == MonadKind::TracePowerset) {
    throw ShapeError("EffectValue::set expects Maybe or FinPowerset; use traces()");
  }
  std::vector<Entry> entries;
  entries.reserve(elements.size());
  for (auto& v : elements) entries.push_back(Entry{{}, std::move(v)});
  return from_entries(monad, std::move(entries));
}

EffectValue EffectValue::traces(const EffectMonadId& monad, std::vector<Entry> entries) {
  if (monad.kind() != MonadKind::TracePowerset) throw ShapeError("EffectValue::traces expects the trace monad");
  return from_entries(monad, std::move(entries));
}

EffectValue EffectValue::from_entries(const EffectMonadId& monad, std::vector<Entry> entries) {
  if (monad.kind() == MonadKind::TracePowerset) {
    for (const auto& e : entries) {
      for (const auto& letter : e.word) {
        if (!monad.has_letter(letter)) throw DomainError("letter '" + letter + "' is not in the alphabet");
      }
    }
    if (auto h = monad.horizon()) {
      std::erase_if(entries, [h](const Entry& e) { return e.word.size() > *h; });
    }
  } else {
    for (const auto& e : entries) {
      if (!e.word.empty()) throw ShapeError("words only occur in the trace monad");
    }
  }
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  if (monad.kind() == MonadKind::Maybe && entries.size() > 1) {
    throw ShapeError("a Maybe value carries at most one element");
  }
  return {monad, std::move(entries)};
}

std::vector<Value> EffectValue::values() const {
  std::vector<Value> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.value);
  return out;
}

bool EffectValue::is_nothing() const { return entries_.empty(); }

const Value& EffectValue::just_value() const {
  if (entries_.empty()) throw ShapeError("nothing carries no value");
  return entries_.front().value;
}

std::string EffectValue::str() const {
  if (monad_.kind() == MonadKind::Maybe) {
    return entries_.empty() ? "nothing" : "just " + entries_.front().value.str();
  }
  std::string out = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) out += ",";
    if (monad_.kind() == MonadKind::TracePowerset) {
      out += "(" + word_str(entries_[i].word) + "," + entries_[i].value.str() + ")";
    } else {
      out += entries_[i].value.str();
    }
  }
  return out + "}";
}

std::strong_ordering operator<=>(const EffectValue& a, const EffectValue& b) {
  if (a.monad_.kind() != b.monad_.kind()) return a.monad_.kind() <=> b.monad_.kind();
  return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                                b.entries_.end());
}

bool operator==(const EffectValue& a, const EffectValue& b) { return (a <=> b) == 0; }

// --- KleisliMap / BaseMap ------------------------------------------------------

KleisliMap::KleisliMap(Carrier domain, EffectMonadId monad, std::map<Value, EffectValue> table)
    : domain_(std::move(domain)), monad_(std::move(monad)), table_(std::move(table)) {
  if (table_.size() != domain_.size()) {
    throw DomainError("Kleisli map on " + domain_.name() + " is not total");
  }
  for (const auto& [x, fx] : table_) {
    if (!domain_.contains(x)) throw DomainError("Kleisli map entry " + x.str() + " outside " + domain_.name());
    if (!(fx.monad() == monad_)) throw ShapeError("Kleisli map outputs mix monads");
  }
}

KleisliMap KleisliMap::from_fn(const Carrier& domain, const EffectMonadId& monad, const KleisliFn& fn) {
  std::map<Value, EffectValue> table;
  for (const auto& x : domain.elements()) table.emplace(x, fn(x));
  return KleisliMap(domain, monad, std::move(table));
}

const EffectValue& KleisliMap::operator()(const Value& x) const {
  auto it = table_.find(x);
  if (it == table_.end()) throw DomainError("element " + x.str() + " is not in " + domain_.name());
  return it->second;
}

KleisliFn KleisliMap::fn() const {
  return [self = *this](const Value& x) { return self(x); };
}

void KleisliMap::check_codomain(const Carrier& codomain) const {
  for (const auto& [x, fx] : table_) {
    for (const auto& e : fx.entries()) {
      if (!codomain.contains(e.value)) {
        throw DomainError("output " + e.value.str() + " of " + x.str() + " is not in " + codomain.name());
      }
    }
  }
}

std::string KleisliMap::str() const {
  std::string out = "[";
  bool first = true;
  for (const auto& x : domain_.elements()) {
    if (!first) out += "; ";
    first = false;
    out += x.str() + " -> " + (*this)(x).str();
  }
  return out + "]";
}

BaseMap::BaseMap(Carrier domain, std::map<Value, Value> table) : domain_(std::move(domain)), table_(std::move(table)) {
  if (table_.size() != domain_.size()) throw DomainError("base map on " + domain_.name() + " is not total");
  for (const auto& [x, _] : table_) {
    if (!domain_.contains(x)) throw DomainError("base map entry " + x.str() + " outside " + domain_.name());
  }
}

BaseMap BaseMap::from_fn(const Carrier& domain, const BaseFn& fn) {
  std::map<Value, Value> table;
  for (const auto& x : domain.elements()) table.emplace(x, fn(x));
  return BaseMap(domain, std::move(table));
}

BaseMap BaseMap::identity(const Carrier& domain) {
  return from_fn(domain, [](const Value& x) { return x; });
}

const Value& BaseMap::operator()(const Value& x) const {
  auto it = table_.find(x);
  if (it == table_.end()) throw DomainError("element " + x.str() + " is not in " + domain_.name());
  return it->second;
}

BaseFn BaseMap::fn() const {
  return [self = *this](const Value& x) { return self(x); };
}

std::string BaseMap::str() const {
  std::string out = "[";
  bool first = true;
  for (const auto& x : domain_.elements()) {
    if (!first) out += "; ";
    first = false;
    out += x.str() + " -> " + (*this)(x).str();
  }
  return out + "]";
}

namespace effects {

EffectValue unit(const EffectMonadId& monad, const Value& x) {
  return EffectValue::from_entries(monad, {EffectValue::Entry{{}, x}});
}

EffectValue unit(const EffectMonadId& monad, const Carrier& carrier, const Value& x) {
  if (!carrier.contains(x)) throw DomainError("element " + x.str() + " is not in " + carrier.name());
  return unit(monad, x);
}

EffectValue bind(const EffectValue& value, const KleisliFn& f) {
  std::vector<EffectValue::Entry> out;
  for (const auto& e : value.entries()) {
    EffectValue image = f(e.value);
    if (image.monad().kind() != value.monad().kind() || image.monad().alphabet() != value.monad().alphabet()) {
      throw ShapeError("Kleisli lifting across monads: " + value.monad().str() + " vs " + image.monad().str());
    }
    for (const auto& g : image.entries()) {
      Word w = e.word;
      w.insert(w.end(), g.word.begin(), g.word.end());
      out.push_back(EffectValue::Entry{std::move(w), g.value});
    }
  }
  return EffectValue::from_entries(value.monad(), std::move(out));
}

EffectValue fmap(const EffectValue& value, const BaseFn& f) {
  std::vector<EffectValue::Entry> out;
  out.reserve(value.size());
  for (const auto& e : value.entries()) out.push_back(EffectValue::Entry{e.word, f(e.value)});
  return EffectValue::from_entries(value.monad(), std::move(out));
}

std::function<EffectValue(const EffectValue&)> kleisli_lift(const KleisliMap& f) {
  return [f](const EffectValue& v) {
    if (!(v.monad() == f.monad())) {
      throw ShapeError("lifting a " + f.monad().str() + " map applied to a " + v.monad().str() + " value");
    }
    return bind(v, [&f](const Value& x) { return f(x); });
  };
}

KleisliMap compose(const KleisliMap& g, const KleisliMap& f) {
  if (!(g.monad() == f.monad())) throw ShapeError("composing Kleisli maps of different monads");
  auto lifted = kleisli_lift(g);
  return KleisliMap::from_fn(f.domain(), f.monad(), [&](const Value& x) { return lifted(f(x)); });
}

EffectValue flatten(const EffectValue& value) {
  return bind(value, [](const Value& v) { return v.as_effect(); });
}

EffectValue prefix(const Word& w, const EffectValue& value) {
  if (w.empty()) return value;
  std::vector<EffectValue::Entry> out;
  for (const auto& e : value.entries()) {
    Word ww = w;
    ww.insert(ww.end(), e.word.begin(), e.word.end());
    out.push_back(EffectValue::Entry{std::move(ww), e.value});
  }
  return EffectValue::from_entries(value.monad(), std::move(out));
}

KleisliMap inl(const EffectMonadId& monad, const Carrier& x, const Carrier&) {
  return KleisliMap::from_fn(x, monad, [&](const Value& v) { return unit(monad, Value::inl(v)); });
}

KleisliMap inr(const EffectMonadId& monad, const Carrier&, const Carrier& y) {
  return KleisliMap::from_fn(y, monad, [&](const Value& v) { return unit(monad, Value::inr(v)); });
}

KleisliMap copair(const KleisliMap& f, const KleisliMap& g) {
  if (!(f.monad() == g.monad())) throw ShapeError("copairing Kleisli maps of different monads");
  Carrier dom = Carrier::sum(f.domain(), g.domain());
  return KleisliMap::from_fn(dom, f.monad(), [&](const Value& v) {
    return v.is(ValueKind::Inl) ? f(v.inner()) : g(v.inner());
  });
}

KleisliMap oplus(const KleisliMap& f, const KleisliMap& g) {
  if (!(f.monad() == g.monad())) throw ShapeError("summing Kleisli maps of different monads");
  Carrier dom = Carrier::sum(f.domain(), g.domain());
  return KleisliMap::from_fn(dom, f.monad(), [&](const Value& v) {
    if (v.is(ValueKind::Inl)) return fmap(f(v.inner()), [](const Value& y) { return Value::inl(y); });
    return fmap(g(v.inner()), [](const Value& y) { return Value::inr(y); });
  });
}

KleisliMap codiag(const EffectMonadId& monad, const Carrier& x) {
  return KleisliMap::from_fn(Carrier::sum(x, x), monad, [&](const Value& v) { return unit(monad, v.inner()); });
}

KleisliMap pure(const EffectMonadId& monad, const BaseMap& h) {
  return KleisliMap::from_fn(h.domain(), monad, [&](const Value& v) { return unit(monad, h(v)); });
}

KleisliMap identity(const EffectMonadId& monad, const Carrier& x) {
  return KleisliMap::from_fn(x, monad, [&](const Value& v) { return unit(monad, v); });
}

Value assoc(const Value& v) {
  if (v.is(ValueKind::Inl)) {
    const Value& ab = v.inner();
    if (ab.is(ValueKind::Inl)) return Value::inl(ab.inner());
    if (ab.is(ValueKind::Inr)) return Value::inr(Value::inl(ab.inner()));
    throw ShapeError("assoc expects (A+B)+C, got " + v.str());
  }
  if (v.is(ValueKind::Inr)) return Value::inr(Value::inr(v.inner()));
  throw ShapeError("assoc expects (A+B)+C, got " + v.str());
}

Value assoc_inv(const Value& v) {
  if (v.is(ValueKind::Inl)) return Value::inl(Value::inl(v.inner()));
  if (v.is(ValueKind::Inr)) {
    const Value& bc = v.inner();
    if (bc.is(ValueKind::Inl)) return Value::inl(Value::inr(bc.inner()));
    if (bc.is(ValueKind::Inr)) return Value::inr(bc.inner());
  }
  throw ShapeError("assoc_inv expects A+(B+C), got " + v.str());
}

EffectValue bottom(const EffectMonadId& monad) { return EffectValue::from_entries(monad, {}); }

bool order_leq(const EffectValue& a, const EffectValue& b) {
  if (!(a.monad() == b.monad())) throw ShapeError("comparing values of different monads");
  if (a.monad().kind() == MonadKind::Maybe) return a.is_nothing() || a == b;
  return std::includes(b.entries().begin(), b.entries().end(), a.entries().begin(), a.entries().end());
}

EffectValue join(const EffectValue& a, const EffectValue& b) {
  if (!(a.monad() == b.monad())) throw ShapeError("joining values of different monads");
  if (a.monad().kind() == MonadKind::Maybe) {
    if (a.is_nothing()) return b;
    if (b.is_nothing() || a == b) return a;
    throw ContractViolation("no upper bound of " + a.str() + " and " + b.str() + " in the flat order");
  }
  std::vector<EffectValue::Entry> entries(a.entries().begin(), a.entries().end());
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return EffectValue::from_entries(a.monad(), std::move(entries));
}

bool order_leq(const KleisliMap& a, const KleisliMap& b) {
  for (const auto& x : a.domain().elements()) {
    if (!order_leq(a(x), b(x))) return false;
  }
  return true;
}

Approximation<EffectValue> lub(const ApproximantSeq& chain, std::size_t window) {
  EffectValue current = chain.generator(0);
  for (std::size_t n = 0; n < window; ++n) {
    EffectValue next = chain.generator(n + 1);
    if (chain.monotone && !order_leq(current, next)) {
      throw ContractViolation("chain is not monotone at step " + std::to_string(n));
    }
    if (next == current) return {current, true, n};
    current = std::move(next);
  }
  return {current, false, window};
}

KleisliMap bottom_map(const EffectMonadId& monad, const Carrier& x) {
  return KleisliMap::from_fn(x, monad, [&](const Value&) { return bottom(monad); });
}

KleisliMap kleene_step(const KleisliMap& f, const KleisliMap& s) {
  const EffectMonadId& monad = f.monad();
  return KleisliMap::from_fn(f.domain(), monad, [&](const Value& x) {
    return bind(f(x), [&](const Value& v) {
      if (v.is(ValueKind::Inl)) return unit(monad, v.inner());
      if (v.is(ValueKind::Inr)) return s(v.inner());
      throw ShapeError("iteration expects a map into Y+X, got output " + v.str());
    });
  });
}

namespace {

std::map<Value, Value> as_value_table(const KleisliMap& m) {
  std::map<Value, Value> out;
  for (const auto& [x, fx] : m.table()) out.emplace(x, Value::effect(fx));
  return out;
}

}  // namespace

Approximation<KleisliMap> iterate(const KleisliMap& f, const IterationPolicy& policy) {
  KleisliMap s = bottom_map(f.monad(), f.domain());
  if (policy.mode == IterationPolicy::Mode::Depth) {
    for (std::size_t i = 0; i < policy.bound; ++i) s = kleene_step(f, s);
    KleisliMap next = kleene_step(f, s);
    bool fixed = next == s;
    return {std::move(s), fixed, policy.bound};
  }
  for (std::size_t i = 0; i <= policy.bound; ++i) {
    KleisliMap next = kleene_step(f, s);
    if (next == s) return {std::move(s), true, i};
    s = std::move(next);
  }
  throw NonConvergence("Kleene chain did not stabilize within " + std::to_string(policy.bound) + " steps",
                       as_value_table(s));
}

double count(const EffectMonadId& monad, const Carrier& c) {
  switch (monad.kind()) {
    case MonadKind::Maybe:
      return static_cast<double>(c.size()) + 1.0;
    case MonadKind::FinPowerset:
      return std::pow(2.0, static_cast<double>(c.size()));
    case MonadKind::TracePowerset: {
      if (!monad.horizon()) return INFINITY;
      double words = 0;
      for (std::size_t k = 0; k <= *monad.horizon(); ++k) {
        words += std::pow(static_cast<double>(monad.alphabet().size()), static_cast<double>(k));
      }
      return std::pow(2.0, words * static_cast<double>(c.size()));
    }
  }
  return 0;
}

std::vector<EffectValue> enumerate(const EffectMonadId& monad, const Carrier& c, std::size_t budget) {
  double n = count(monad, c);
  if (monad.kind() == MonadKind::TracePowerset) {
    throw ShapeError("the trace monad is not enumerated; sample it instead");
  }
  if (n > static_cast<double>(budget)) {
    throw BudgetExceeded("T(" + c.name() + ") has " + std::to_string(n) + " elements", n);
  }
  std::vector<EffectValue> out;
  if (monad.kind() == MonadKind::Maybe) {
    out.push_back(EffectValue::nothing());
    for (const auto& x : c.elements()) out.push_back(EffectValue::just(x));
    return out;
  }
  const std::size_t total = std::size_t{1} << c.size();
  out.reserve(total);
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<Value> subset;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(c[i]);
    }
    out.push_back(EffectValue::set(monad, std::move(subset)));
  }
  return out;
}

std::vector<KleisliMap> enumerate_maps(const EffectMonadId& monad, const Carrier& x, const Carrier& c,
                                       std::size_t budget) {
  const double per_point = count(monad, c);
  const double total = std::pow(per_point, static_cast<double>(x.size()));
  if (total > static_cast<double>(budget)) {
    throw BudgetExceeded("|T(" + c.name() + ")|^|" + x.name() + "| = " + std::to_string(total) + " maps", total);
  }
  auto outputs = enumerate(monad, c, budget);
  std::vector<KleisliMap> maps;
  std::vector<std::size_t> choice(x.size(), 0);
  while (true) {
    std::map<Value, EffectValue> table;
    for (std::size_t i = 0; i < x.size(); ++i) table.emplace(x[i], outputs[choice[i]]);
    maps.emplace_back(x, monad, std::move(table));
    std::size_t pos = x.size();
    while (pos > 0) {
      --pos;
      if (++choice[pos] < outputs.size()) break;
      choice[pos] = 0;
      if (pos == 0) return maps;
    }
    if (x.size() == 0) return maps;
  }
}

namespace {

std::vector<std::string> split_top_level(const std::string& body) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string current;
  for (char ch : body) {
    if (ch == '(' || ch == '{') ++depth;
    if (ch == ')' || ch == '}') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!current.empty() || !parts.empty()) parts.push_back(current);
  return parts;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

EffectValue parse_effect(const EffectMonadId& monad, const Carrier& carrier, const std::string& text) {
  std::map<std::string, Value> by_name;
  for (const auto& v : carrier.elements()) by_name.emplace(v.str(), v);
  auto element = [&](const std::string& token) {
    auto it = by_name.find(trim(token));
    if (it == by_name.end()) throw DomainError("unknown element '" + trim(token) + "'");
    return it->second;
  };
  const std::string t = trim(text);
  if (monad.kind() == MonadKind::Maybe) {
    if (t == "nothing") return EffectValue::nothing();
    if (t.rfind("just ", 0) == 0) return EffectValue::just(element(t.substr(5)));
    throw DomainError("not a Maybe value: " + t);
  }
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw DomainError("not a set value: " + t);
  std::vector<EffectValue::Entry> entries;
  for (const auto& part : split_top_level(t.substr(1, t.size() - 2))) {
    std::string item = trim(part);
    if (monad.kind() == MonadKind::FinPowerset) {
      entries.push_back({{}, element(item)});
      continue;
    }
    if (item.size() < 2 || item.front() != '(' || item.back() != ')') throw DomainError("not a trace entry: " + item);
    std::string inside = item.substr(1, item.size() - 2);
    auto comma = inside.find(',');
    if (comma == std::string::npos) throw DomainError("not a trace entry: " + item);
    std::string word_text = trim(inside.substr(0, comma));
    Word word;
    if (word_text != "ε") {
      // Letters are matched greedily against the alphabet.
      std::size_t pos = 0;
      while (pos < word_text.size()) {
        std::size_t best = 0;
        for (const auto& letter : monad.alphabet()) {
          if (letter.size() > best && word_text.compare(pos, letter.size(), letter) == 0) best = letter.size();
        }
        if (best == 0) throw DomainError("word '" + word_text + "' is not over the alphabet");
        word.push_back(word_text.substr(pos, best));
        pos += best;
      }
    }
    entries.push_back({std::move(word), element(inside.substr(comma + 1))});
  }
  return EffectValue::from_entries(monad, std::move(entries));
}

}  // namespace effects
}  // namespace celgot
