#pragma once

// Concrete effect monads (Maybe, finite powerset, finite sets of
// word/element pairs) presented as Kleisli triples, together with the
// ω-cpo structure on their Kleisli categories and the Kleene iteration
// operator it induces.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "celgot/errors.hpp"
#include "celgot/value.hpp"

namespace celgot {

enum class MonadKind : std::uint8_t { Maybe, FinPowerset, TracePowerset };

/// Identifies one of the supported monads.  TracePowerset carries its action
/// alphabet and, optionally, a horizon: entries whose word is longer than the
/// horizon are discarded.  Bounding is compatible with unit and lifting
/// (concatenation never shortens a word), so the bounded variant is again a
/// monad and its Kleene chains over finite carriers always stabilize.
class EffectMonadId {
 public:
  /// FinPowerset.
  EffectMonadId() : kind_(MonadKind::FinPowerset) {}
  static EffectMonadId maybe();
  static EffectMonadId powerset();
  static EffectMonadId traces(std::vector<std::string> alphabet,
                              std::optional<std::size_t> horizon = std::nullopt);

  MonadKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::optional<std::size_t> horizon() const noexcept { return horizon_; }
  /// The same monad with a different horizon (TracePowerset only).
  EffectMonadId with_horizon(std::optional<std::size_t> horizon) const;
  bool has_letter(const std::string& letter) const;

  /// `maybe`, `powerset`, `traces(a,b)` or `traces(a,b)<=n`.
  std::string str() const;

  friend bool operator==(const EffectMonadId&, const EffectMonadId&) = default;

 private:
  EffectMonadId(MonadKind kind, std::vector<std::string> alphabet, std::optional<std::size_t> horizon)
      : kind_(kind), alphabet_(std::move(alphabet)), horizon_(horizon) {}
  MonadKind kind_;
  std::vector<std::string> alphabet_;
  std::optional<std::size_t> horizon_;
};

/// An element of T X.  All three monads share one normalized representation:
/// a sorted, duplicate-free list of (word, value) entries.  Maybe holds at
/// most one entry with the empty word; FinPowerset holds entries with empty
/// words only.
class EffectValue {
 public:
  struct Entry {
    Word word;
    Value value;
    friend std::strong_ordering operator<=>(const Entry& a, const Entry& b);
    friend bool operator==(const Entry& a, const Entry& b);
  };

  static EffectValue nothing();
  static EffectValue just(Value v);
  static EffectValue set(const EffectMonadId& monad, std::vector<Value> elements);
  static EffectValue traces(const EffectMonadId& monad, std::vector<Entry> entries);
  /// Normalizing constructor used by the monad operations.
  static EffectValue from_entries(const EffectMonadId& monad, std::vector<Entry> entries);

  const EffectMonadId& monad() const noexcept { return monad_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  /// The carried values, in entry order (may repeat for traces).
  std::vector<Value> values() const;

  bool is_nothing() const;
  const Value& just_value() const;

  /// `nothing`, `just x`, `{x1,x2}` or `{(ab,x),(ε,y)}`.
  std::string str() const;

  friend std::strong_ordering operator<=>(const EffectValue& a, const EffectValue& b);
  friend bool operator==(const EffectValue& a, const EffectValue& b);

 private:
  EffectValue(EffectMonadId monad, std::vector<Entry> entries)
      : monad_(std::move(monad)), entries_(std::move(entries)) {}
  EffectMonadId monad_;
  std::vector<Entry> entries_;
};

using KleisliFn = std::function<EffectValue(const Value&)>;
using BaseFn = std::function<Value(const Value&)>;

/// A total map from a finite carrier into T of some codomain.
class KleisliMap {
 public:
  KleisliMap(Carrier domain, EffectMonadId monad, std::map<Value, EffectValue> table);
  static KleisliMap from_fn(const Carrier& domain, const EffectMonadId& monad, const KleisliFn& fn);

  const Carrier& domain() const noexcept { return domain_; }
  const EffectMonadId& monad() const noexcept { return monad_; }
  const std::map<Value, EffectValue>& table() const noexcept { return table_; }

  /// Throws DomainError for elements outside the domain.
  const EffectValue& operator()(const Value& x) const;
  KleisliFn fn() const;

  /// Throws DomainError unless every output only carries codomain elements.
  void check_codomain(const Carrier& codomain) const;
  std::string str() const;

  friend bool operator==(const KleisliMap& a, const KleisliMap& b) {
    return a.monad_ == b.monad_ && a.table_ == b.table_;
  }

 private:
  Carrier domain_;
  EffectMonadId monad_;
  std::map<Value, EffectValue> table_;
};

/// A total base map between finite carriers.
class BaseMap {
 public:
  BaseMap(Carrier domain, std::map<Value, Value> table);
  static BaseMap from_fn(const Carrier& domain, const BaseFn& fn);
  static BaseMap identity(const Carrier& domain);

  const Carrier& domain() const noexcept { return domain_; }
  const std::map<Value, Value>& table() const noexcept { return table_; }
  const Value& operator()(const Value& x) const;
  BaseFn fn() const;
  std::string str() const;

 private:
  Carrier domain_;
  std::map<Value, Value> table_;
};

/// Approximant together with an exactness flag.
template <typename T>
struct Approximation {
  T value;
  bool exact = true;
  std::size_t steps = 0;
};

namespace effects {

// --- Kleisli triple ------------------------------------------------------

EffectValue unit(const EffectMonadId& monad, const Value& x);
/// Checked unit: throws DomainError when x is not in the carrier.
EffectValue unit(const EffectMonadId& monad, const Carrier& carrier, const Value& x);
/// Kleisli lifting f* applied to a value.  Throws ShapeError when f produces
/// a value of another monad.
EffectValue bind(const EffectValue& value, const KleisliFn& f);
/// The functor action T f.
EffectValue fmap(const EffectValue& value, const BaseFn& f);
/// f* as a function on T X.
std::function<EffectValue(const EffectValue&)> kleisli_lift(const KleisliMap& f);
/// g ⊙ f.  The codomain of f must be the domain of g.
KleisliMap compose(const KleisliMap& g, const KleisliMap& f);
/// Multiplication μ: flattens a value whose entries are Effect values.
EffectValue flatten(const EffectValue& value);
/// Prefix every word with w (TracePowerset); identity for empty w.
EffectValue prefix(const Word& w, const EffectValue& value);

// --- coproducts in the Kleisli category ---------------------------------

/// η∘inl : X ⇸ X+Y.
KleisliMap inl(const EffectMonadId& monad, const Carrier& x, const Carrier& y);
/// η∘inr : Y ⇸ X+Y.
KleisliMap inr(const EffectMonadId& monad, const Carrier& x, const Carrier& y);
/// [f,g] : X+Y ⇸ Z.
KleisliMap copair(const KleisliMap& f, const KleisliMap& g);
/// f ⊕ g : X+Y ⇸ X'+Y'.
KleisliMap oplus(const KleisliMap& f, const KleisliMap& g);
/// ∇ = [η,η] : X+X ⇸ X.
KleisliMap codiag(const EffectMonadId& monad, const Carrier& x);
/// η∘h for a base map h.
KleisliMap pure(const EffectMonadId& monad, const BaseMap& h);
/// The identity η : X ⇸ X.
KleisliMap identity(const EffectMonadId& monad, const Carrier& x);
/// α : (A+B)+C → A+(B+C) on values; ShapeError on other shapes.
Value assoc(const Value& v);
/// α⁻¹ : A+(B+C) → (A+B)+C.
Value assoc_inv(const Value& v);

// --- ω-cpo enrichment ----------------------------------------------------

EffectValue bottom(const EffectMonadId& monad);
/// Flat order for Maybe, inclusion for the powersets.
bool order_leq(const EffectValue& a, const EffectValue& b);
/// Least upper bound of two comparable values; ContractViolation otherwise.
EffectValue join(const EffectValue& a, const EffectValue& b);
bool order_leq(const KleisliMap& a, const KleisliMap& b);

struct ApproximantSeq {
  std::function<EffectValue(std::size_t)> generator;
  bool monotone = true;
};

/// Join of a chain.  Exact when two consecutive approximants coincide within
/// the window, otherwise the window'th approximant tagged inexact.
Approximation<EffectValue> lub(const ApproximantSeq& chain, std::size_t window);

// --- iteration ------------------------------------------------------------

struct IterationPolicy {
  enum class Mode : std::uint8_t { ExactIfStable, Depth };
  Mode mode = Mode::ExactIfStable;
  std::size_t bound = 256;

  static IterationPolicy exact(std::size_t window = 256) { return {Mode::ExactIfStable, window}; }
  static IterationPolicy depth(std::size_t n) { return {Mode::Depth, n}; }
};

/// The constant-⊥ map X ⇸ Y.
KleisliMap bottom_map(const EffectMonadId& monad, const Carrier& x);

/// One Kleene step s ↦ [η, s]* ∘ f.
KleisliMap kleene_step(const KleisliMap& f, const KleisliMap& s);

/// f† for f : X ⇸ Y+X as the least fixed point of s ↦ [η,s]*∘f.  Under
/// ExactIfStable the chain is run until two consecutive approximants agree
/// and NonConvergence is thrown when the window is exhausted; under Depth(n)
/// the n-th approximant is returned, tagged exact only if it already is the
/// fixed point.
Approximation<KleisliMap> iterate(const KleisliMap& f, const IterationPolicy& policy = IterationPolicy::exact());

// --- enumeration ------------------------------------------------------------

/// Every element of T C for Maybe and FinPowerset.  Throws BudgetExceeded for
/// more than `budget` values and ShapeError for TracePowerset.
std::vector<EffectValue> enumerate(const EffectMonadId& monad, const Carrier& c, std::size_t budget = 1u << 16);
/// |T C| as a double (infinite for unbounded TracePowerset).
double count(const EffectMonadId& monad, const Carrier& c);
/// Every Kleisli map X ⇸ C, in lexicographic order of the enumerated outputs.
std::vector<KleisliMap> enumerate_maps(const EffectMonadId& monad, const Carrier& x, const Carrier& c,
                                       std::size_t budget = 1u << 16);

/// Parses the textual serialization produced by EffectValue::str; atoms are
/// resolved through the given carrier.
EffectValue parse_effect(const EffectMonadId& monad, const Carrier& carrier, const std::string& text);

}  // namespace effects
}  // namespace celgot
