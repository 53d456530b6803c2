#include "celgot/speclang.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "celgot/bridge.hpp"
#include "celgot/errors.hpp"

namespace celgot::spec {

bool operator==(const Term& a, const Term& b) { return a.kind == b.kind && a.name == b.name && a.args == b.args; }

namespace {

enum class Tok : std::uint8_t { Ident, Zero, Tick, Dot, Plus, LParen, RParen, Comma, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      std::string word = line.substr(i, j - i);
      out.push_back({word == "tick" ? Tok::Tick : Tok::Ident, word, col});
      i = j;
      continue;
    }
    if (line.compare(i, 3, "✓") == 0) {
      out.push_back({Tok::Tick, "tick", col});
      i += 3;
      continue;
    }
    switch (c) {
      case '0':
        out.push_back({Tok::Zero, "0", col});
        break;
      case '.':
        out.push_back({Tok::Dot, ".", col});
        break;
      case '+':
        out.push_back({Tok::Plus, "+", col});
        break;
      case '(':
        out.push_back({Tok::LParen, "(", col});
        break;
      case ')':
        out.push_back({Tok::RParen, ")", col});
        break;
      case ',':
        out.push_back({Tok::Comma, ",", col});
        break;
      case '=':
        out.push_back({Tok::Eq, "=", col});
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
    }
    ++i;
  }
  out.push_back({Tok::End, "", static_cast<int>(line.size()) + 1});
  return out;
}

class TermParser {
 public:
  TermParser(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  Term choice() {
    Term left = prefixed();
    while (peek().kind == Tok::Plus) {
      const Token& plus = next();
      Term right = prefixed();
      Term c{Term::Kind::Choice, "+", {std::move(left), std::move(right)}, line_, plus.column};
      left = std::move(c);
    }
    return left;
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg + (t.kind == Tok::End ? " at end of line" : ", found '" + t.text + "'"), line_, t.column);
  }

 private:
  Term prefixed() {
    if (peek().kind == Tok::Ident && toks_[pos_ + 1].kind == Tok::Dot) {
      const Token& name = next();
      next();
      Term body = prefixed();
      return Term{Term::Kind::Prefix, name.text, {std::move(body)}, line_, name.column};
    }
    return atom();
  }

  Term atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tick:
        next();
        return Term{Term::Kind::Tick, "tick", {}, line_, t.column};
      case Tok::Zero:
        next();
        return Term{Term::Kind::Zero, "0", {}, line_, t.column};
      case Tok::LParen: {
        next();
        Term inner = choice();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: {
        const Token& name = next();
        if (peek().kind != Tok::LParen) return Term{Term::Kind::Var, name.text, {}, line_, name.column};
        next();
        Term app{Term::Kind::Apply, name.text, {}, line_, name.column};
        if (peek().kind != Tok::RParen) {
          app.args.push_back(choice());
          while (peek().kind == Tok::Comma) {
            next();
            app.args.push_back(choice());
          }
        }
        expect(Tok::RParen, "')'");
        return app;
      }
      default:
        fail("expected a term");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

std::vector<std::string> words_of(const std::string& line) {
  std::istringstream in(line.substr(0, line.find('#')));
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Header {
  std::optional<Signature> sig;
  std::optional<EffectMonadId> monad;
};

void parse_header(const std::string& line, int lineno, Header& h) {
  const auto w = words_of(line);
  const int col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
  if (w[0] == "sig") {
    if (h.sig) throw ParseError("signature declared twice", lineno, col);
    if (w.size() < 2) throw ParseError("sig needs actions, delay or ops", lineno, col);
    if (w[1] == "actions") {
      h.sig = Signature::actions({w.begin() + 2, w.end()});
    } else if (w[1] == "delay") {
      if (w.size() > 2) throw ParseError("sig delay takes no arguments", lineno, col);
      h.sig = Signature::delay();
    } else if (w[1] == "ops") {
      std::vector<Symbol> symbols;
      for (std::size_t i = 2; i < w.size(); ++i) {
        const auto slash = w[i].find('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == w[i].size() ||
            !std::all_of(w[i].begin() + static_cast<long>(slash) + 1, w[i].end(), ::isdigit)) {
          throw ParseError("operation '" + w[i] + "' must be written name/arity", lineno, col);
        }
        symbols.push_back({w[i].substr(0, slash), std::stoul(w[i].substr(slash + 1))});
      }
      h.sig = Signature::generic(std::move(symbols));
    } else {
      throw ParseError("unknown signature '" + w[1] + "'", lineno, col);
    }
    return;
  }
  if (h.monad) throw ParseError("monad declared twice", lineno, col);
  if (w.size() < 2) throw ParseError("monad needs powerset, maybe or traces", lineno, col);
  if (w[1] == "powerset" && w.size() == 2) {
    h.monad = EffectMonadId::powerset();
  } else if (w[1] == "maybe" && w.size() == 2) {
    h.monad = EffectMonadId::maybe();
  } else if (w[1] == "traces") {
    h.monad = EffectMonadId::traces({w.begin() + 2, w.end()});
  } else {
    throw ParseError("unknown monad '" + w[1] + "'", lineno, col);
  }
}

bool sigma_prefix(const SpecAST& ast, const std::string& name) {
  if (ast.sig.kind() == SigKind::Generic) return false;
  return ast.sig.has_symbol(name);
}

void collect_prefixes(const Term& t, const EffectMonadId& monad, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::Prefix && !monad.has_letter(t.name) &&
      std::find(out.begin(), out.end(), t.name) == out.end()) {
    out.push_back(t.name);
  }
  for (const auto& a : t.args) collect_prefixes(a, monad, out);
}

void validate(const SpecAST& ast, const Term& t, const std::set<std::string>& defined) {
  switch (t.kind) {
    case Term::Kind::Var:
      if (!defined.count(t.name)) throw ParseError("undefined variable '" + t.name + "'", t.line, t.column);
      break;
    case Term::Kind::Prefix:
      if (!sigma_prefix(ast, t.name) && !ast.monad.has_letter(t.name)) {
        throw ParseError("unknown action '" + t.name + "'", t.line, t.column);
      }
      break;
    case Term::Kind::Apply:
      if (ast.sig.kind() != SigKind::Generic) {
        throw ParseError("application of '" + t.name + "' needs an ops signature", t.line, t.column);
      }
      if (!ast.sig.has_symbol(t.name)) throw ParseError("unknown operation '" + t.name + "'", t.line, t.column);
      if (ast.sig.arity(t.name) != t.args.size()) {
        throw ParseError("operation '" + t.name + "' takes " + std::to_string(ast.sig.arity(t.name)) + " arguments",
                         t.line, t.column);
      }
      break;
    default:
      break;
  }
  for (const auto& a : t.args) validate(ast, a, defined);
}

}  // namespace

SpecAST parse(const std::string& text) {
  SpecAST ast;
  Header header;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, int> defined_at;
  while (std::getline(in, line)) {
    ++lineno;
    const auto w = words_of(line);
    if (w.empty()) continue;
    if (w[0] == "sig" || w[0] == "monad") {
      if (!ast.equations.empty()) {
        throw ParseError("'" + w[0] + "' must precede the equations", lineno,
                         static_cast<int>(line.find(w[0])) + 1);
      }
      parse_header(line, lineno, header);
      continue;
    }
    TermParser p(lex(line, lineno), lineno);
    const Token& var = p.expect(Tok::Ident, "a variable");
    const std::string name = var.text;
    const int col = var.column;
    p.expect(Tok::Eq, "'='");
    Term rhs = p.choice();
    if (p.peek().kind != Tok::End) p.fail("unexpected token");
    if (auto [it, fresh] = defined_at.emplace(name, lineno); !fresh) {
      throw ParseError("variable '" + name + "' already defined on line " + std::to_string(it->second), lineno, col);
    }
    ast.equations.push_back({name, std::move(rhs), lineno});
  }
  if (header.monad) ast.monad = *header.monad;
  if (header.sig) {
    ast.sig = *header.sig;
    ast.sig_declared = true;
  } else {
    std::vector<std::string> letters;
    for (const auto& eq : ast.equations) collect_prefixes(eq.rhs, ast.monad, letters);
    std::sort(letters.begin(), letters.end());
    ast.sig = Signature::actions(letters);
  }
  std::set<std::string> defined;
  for (const auto& eq : ast.equations) defined.insert(eq.var);
  for (const auto& eq : ast.equations) validate(ast, eq.rhs, defined);
  return ast;
}

std::string print(const Term& t) {
  auto wrapped = [](const Term& u) { return u.kind == Term::Kind::Choice ? "(" + print(u) + ")" : print(u); };
  switch (t.kind) {
    case Term::Kind::Tick:
      return "tick";
    case Term::Kind::Zero:
      return "0";
    case Term::Kind::Var:
      return t.name;
    case Term::Kind::Prefix:
      return t.name + "." + wrapped(t.args[0]);
    case Term::Kind::Choice:
      return print(t.args[0]) + " + " + wrapped(t.args[1]);
    case Term::Kind::Apply: {
      std::string out = t.name + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? ", " : "") + print(t.args[i]);
      return out + ")";
    }
  }
  return {};
}

std::string print(const SpecAST& ast) {
  std::string out;
  if (ast.sig_declared) {
    out += "sig ";
    switch (ast.sig.kind()) {
      case SigKind::ActionPrefix:
        out += "actions";
        for (const auto& a : ast.sig.alphabet()) out += " " + a;
        break;
      case SigKind::Delay:
        out += "delay";
        break;
      case SigKind::Generic:
        out += "ops";
        for (const auto& s : ast.sig.symbols()) out += " " + s.name + "/" + std::to_string(s.arity);
        break;
    }
    out += "\n";
  }
  out += "monad ";
  switch (ast.monad.kind()) {
    case MonadKind::FinPowerset:
      out += "powerset";
      break;
    case MonadKind::Maybe:
      out += "maybe";
      break;
    case MonadKind::TracePowerset:
      out += "traces";
      for (const auto& a : ast.monad.alphabet()) out += " " + a;
      break;
  }
  out += "\n";
  for (const auto& eq : ast.equations) out += eq.var + " = " + print(eq.rhs) + "\n";
  return out;
}

std::string GuardViolation::str() const {
  std::string out = "unguarded occurrence of " + occurrence + " in the equation for " + equation + " at " +
                    std::to_string(line) + ":" + std::to_string(column);
  if (!path.empty()) {
    out += " (path:";
    for (const auto& p : path) out += " " + p;
    out += ")";
  }
  return out;
}

std::vector<GuardViolation> guard_violations(const SpecAST& ast) {
  std::vector<GuardViolation> out;
  std::vector<std::string> path;
  std::function<void(const Equation&, const Term&)> walk = [&](const Equation& eq, const Term& t) {
    switch (t.kind) {
      case Term::Kind::Var:
        out.push_back({eq.var, t.name, path, t.line, t.column});
        return;
      case Term::Kind::Choice:
        for (std::size_t i = 0; i < 2; ++i) {
          path.push_back(i == 0 ? "+left" : "+right");
          walk(eq, t.args[i]);
          path.pop_back();
        }
        return;
      case Term::Kind::Prefix:
        if (sigma_prefix(ast, t.name)) return;
        path.push_back(t.name + ".");
        walk(eq, t.args[0]);
        path.pop_back();
        return;
      default:
        return;
    }
  };
  for (const auto& eq : ast.equations) walk(eq, eq.rhs);
  return out;
}

std::optional<GuardViolation> check_guarded(const SpecAST& ast) {
  auto all = guard_violations(ast);
  if (all.empty()) return std::nullopt;
  return all.front();
}

Coalgebra EquationSystem::coalgebra() const { return Coalgebra{inst, step.fn(), states}; }

Value EquationSystem::var(const std::string& name) const {
  Value v = Value::atom(name);
  if (!variables.contains(v)) throw DomainError("no equation for '" + name + "'");
  return v;
}

EquationSystem compile(const SpecAST& ast) {
  const EffectMonadId& monad = ast.monad;
  const bool maybe = monad.kind() == MonadKind::Maybe;
  std::vector<Value> vars;
  for (const auto& eq : ast.equations) vars.push_back(Value::atom(eq.var));

  std::vector<Value> order = vars;
  std::map<Value, const Term*> pending;
  std::deque<Value> queue;
  auto state_of = [&](const Term& t) {
    if (t.kind == Term::Kind::Var) return Value::atom(t.name);
    Value s = Value::atom(print(t));
    if (std::find(order.begin(), order.end(), s) == order.end()) {
      order.push_back(s);
      pending.emplace(s, &t);
      queue.push_back(s);
    }
    return s;
  };
  std::function<EffectValue(const Term&)> comp = [&](const Term& t) -> EffectValue {
    switch (t.kind) {
      case Term::Kind::Tick:
        return effects::unit(monad, Value::inl(Value::inl(bridge::tick())));
      case Term::Kind::Zero:
        if (maybe) throw ParseError("0 has no meaning under monad maybe", t.line, t.column);
        return effects::bottom(monad);
      case Term::Kind::Var:
        return effects::unit(monad, Value::inr(Value::atom(t.name)));
      case Term::Kind::Choice: {
        if (maybe) throw ParseError("choice has no meaning under monad maybe", t.line, t.column);
        EffectValue l = comp(t.args[0]);
        EffectValue r = comp(t.args[1]);
        std::vector<EffectValue::Entry> entries(l.entries().begin(), l.entries().end());
        entries.insert(entries.end(), r.entries().begin(), r.entries().end());
        return EffectValue::from_entries(monad, std::move(entries));
      }
      case Term::Kind::Prefix:
        if (sigma_prefix(ast, t.name)) {
          return effects::unit(monad, Value::inl(Value::inr(sig::layer(ast.sig, t.name, {state_of(t.args[0])}))));
        }
        return effects::prefix({t.name}, comp(t.args[0]));
      case Term::Kind::Apply: {
        std::vector<Value> children;
        for (const auto& a : t.args) children.push_back(state_of(a));
        return effects::unit(monad, Value::inl(Value::inr(sig::layer(ast.sig, t.name, std::move(children)))));
      }
    }
    return effects::bottom(monad);
  };

  std::map<Value, EffectValue> table;
  for (const auto& eq : ast.equations) table.emplace(Value::atom(eq.var), comp(eq.rhs));
  while (!queue.empty()) {
    Value s = queue.front();
    queue.pop_front();
    table.emplace(s, comp(*pending.at(s)));
  }
  Carrier states("P", order);
  KleisliMap e(states, monad, std::move(table));
  KleisliMap step = effects::iterate(e).value;
  return EquationSystem{ast,
                        PMonadInstance::with_sig(monad, ast.sig),
                        Carrier("P", vars),
                        states,
                        std::move(step),
                        check_guarded(ast)};
}

TreeFn solve(const EquationSystem& system, bool least) {
  if (!system.guarded() && !least) {
    throw ContractViolation("system is not guarded: " + system.violation->str());
  }
  return res::coit(system.coalgebra());
}

std::vector<Word> traces(const EquationSystem& system, const std::string& var, std::size_t maxlen) {
  return bridge::trace_set(system.coalgebra(), system.var(var), maxlen);
}

}  // namespace celgot::spec
