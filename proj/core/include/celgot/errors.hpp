#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "celgot/value.hpp"

namespace celgot {

/// Element outside the carrier or symbol outside the signature.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shape mismatch: wrong monad, wrong coproduct tag, wrong arity.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition was violated at run time (e.g. a chain that
/// was declared monotone is not, or a deferred tree forces itself).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Enumeration would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double required)
      : std::runtime_error(what), required_(required) {}
  double required() const noexcept { return required_; }

 private:
  double required_;
};

/// An exact-if-stable iteration did not stabilize within its window.  The
/// last computed approximant is kept, keyed by input element.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, std::map<Value, Value> last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const std::map<Value, Value>& last_approximant() const noexcept { return last_; }

 private:
  std::map<Value, Value> last_;
};

/// Malformed process specification text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace celgot
