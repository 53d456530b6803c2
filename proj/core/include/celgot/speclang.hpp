#pragma once

// Textual recursive process specifications:
//
//   # comment
//   sig actions a b          (or: sig delay, sig ops g/2 h/0)
//   monad powerset           (or: maybe, traces a b)
//   x1 = a.(x2 + x3)
//   x3 = a.x1 + tick
//
// Terms are tick (also ✓), 0, variables, prefixes p.t, choices t + u,
// parentheses and, for ops signatures, applications g(t, u).  One equation
// per line.

#include <optional>
#include <string>
#include <vector>

#include "celgot/effects.hpp"
#include "celgot/resumption.hpp"
#include "celgot/signatures.hpp"

namespace celgot::spec {

struct Term {
  enum class Kind : std::uint8_t { Tick, Zero, Var, Prefix, Choice, Apply };
  Kind kind = Kind::Tick;
  /// Variable, prefix letter or operation symbol.
  std::string name;
  std::vector<Term> args;
  int line = 0;
  int column = 0;

  /// Structural equality; positions are ignored.
  friend bool operator==(const Term& a, const Term& b);
};

struct Equation {
  std::string var;
  Term rhs;
  int line = 0;
  friend bool operator==(const Equation& a, const Equation& b) { return a.var == b.var && a.rhs == b.rhs; }
};

struct SpecAST {
  Signature sig = Signature::actions({});
  /// False when the action alphabet was collected from the prefixes in use.
  bool sig_declared = false;
  EffectMonadId monad = EffectMonadId::powerset();
  std::vector<Equation> equations;

  friend bool operator==(const SpecAST& a, const SpecAST& b) {
    return a.sig == b.sig && a.sig_declared == b.sig_declared && a.monad == b.monad && a.equations == b.equations;
  }
};

/// Throws ParseError (with line and column) on lexical and syntax errors,
/// duplicate definitions, undefined variables and unknown prefixes.
SpecAST parse(const std::string& text);
/// Canonical text; parse(print(ast)) == ast.
std::string print(const SpecAST& ast);
std::string print(const Term& t);

/// An occurrence of a variable not beneath any signature prefix.
struct GuardViolation {
  std::string equation;
  std::string occurrence;
  /// Steps from the right-hand side down to the occurrence.
  std::vector<std::string> path;
  int line = 0;
  int column = 0;
  std::string str() const;
};

/// Every unguarded occurrence, in equation and left-to-right order.
std::vector<GuardViolation> guard_violations(const SpecAST& ast);
/// nullopt is the guardedness certificate.
std::optional<GuardViolation> check_guarded(const SpecAST& ast);

struct EquationSystem {
  SpecAST ast;
  PMonadInstance inst;
  /// The declared variables.
  Carrier variables;
  /// Variables followed by the auxiliary states, which are named by the
  /// canonical text of the subterm they stand for.
  Carrier states;
  /// step : states → T({tick} + Σ states), the least solution of the
  /// unguarded variable references.
  KleisliMap step;
  std::optional<GuardViolation> violation;

  bool guarded() const { return !violation.has_value(); }
  Coalgebra coalgebra() const;
  Value var(const std::string& name) const;
};

/// Throws ParseError for 0 or choice under Maybe and NonConvergence when
/// the unguarded references have no finitely reached least solution.
EquationSystem compile(const SpecAST& ast);

/// coit(step).  Throws ContractViolation for unguarded systems unless
/// `least` is set.
TreeFn solve(const EquationSystem& system, bool least = false);

/// Successful traces of `var` up to length maxlen, shortlex ordered.
std::vector<Word> traces(const EquationSystem& system, const std::string& var, std::size_t maxlen);

}  // namespace celgot::spec
