#include "celgot_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "celgot/errors.hpp"
#include "celgot/lawcheck.hpp"
#include "celgot/speclang.hpp"

namespace celgot::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

spec::EquationSystem load(const std::string& path) { return spec::compile(spec::parse(read_file(path))); }

std::string trace_text(const Word& w) {
  if (w.empty()) return "<eps>";
  bool single = true;
  for (const auto& a : w) single = single && a.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i && !single ? "." : "") + w[i];
  return out;
}

void require_guarded(const spec::EquationSystem& sys, bool least) {
  if (!sys.guarded() && !least) throw ContractViolation(sys.violation->str());
}

Value lookup_var(const spec::EquationSystem& sys, const std::string& name) {
  try {
    return sys.var(name);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iteration laws, resumptions and process specifications", "celgot"};
  app.require_subcommand(1);

  std::string file;
  std::string var;
  std::size_t depth = 3;
  std::size_t maxlen = 4;
  bool least = false;

  auto* solve = app.add_subcommand("solve", "print the solution of every variable to a depth");
  solve->add_option("file", file, "specification file")->required();
  solve->add_option("--depth", depth, "truncation depth")->capture_default_str();
  solve->add_flag("--least", least, "solve unguarded systems by least fixed points");

  auto* traces = app.add_subcommand("traces", "successful traces of a variable");
  traces->add_option("file", file, "specification file")->required();
  traces->add_option("--var", var, "variable")->required();
  traces->add_option("--maxlen", maxlen, "maximal trace length")->capture_default_str();
  traces->add_flag("--least", least, "accept unguarded systems");

  auto* unfold = app.add_subcommand("unfold", "print the tree of one variable");
  unfold->add_option("file", file, "specification file")->required();
  unfold->add_option("--var", var, "variable")->required();
  unfold->add_option("--depth", depth, "truncation depth")->capture_default_str();
  unfold->add_flag("--least", least, "accept unguarded systems");

  std::string monad_name = "maybe";
  std::string law_name = "all";
  std::string alphabet = "a,b";
  std::size_t size = 1;
  std::size_t law_depth = 4;
  std::size_t samples = 64;
  bool negative = false;
  bool verbose = false;
  auto* laws = app.add_subcommand("laws", "check the iteration laws on small instances");
  laws->add_option("--monad", monad_name, "maybe, powerset or traces")
      ->check(CLI::IsMember({"maybe", "powerset", "traces"}))
      ->capture_default_str();
  laws->add_option("--law", law_name, "law name or all")->capture_default_str();
  laws->add_option("--size", size, "largest carrier size")->check(CLI::Range(1, 3))->capture_default_str();
  laws->add_option("--depth", law_depth, "trace monad: compare traces shorter than this")->capture_default_str();
  laws->add_option("--alphabet", alphabet, "trace monad letters, comma separated")->capture_default_str();
  laws->add_option("--samples", samples, "trace monad: instances per size")->capture_default_str();
  laws->add_flag("--negative-control", negative, "iterate with one Kleene step only");
  laws->add_flag("--verbose", verbose, "print passing instances too");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (solve->parsed()) {
      auto sys = load(file);
      require_guarded(sys, least);
      auto tree = spec::solve(sys, least);
      for (const auto& v : sys.variables.elements()) out << v.name() << " = " << res::render(tree(v), depth) << '\n';
      return kOk;
    }
    if (traces->parsed()) {
      auto sys = load(file);
      require_guarded(sys, least);
      lookup_var(sys, var);
      for (const auto& w : spec::traces(sys, var, maxlen)) out << trace_text(w) << '\n';
      return kOk;
    }
    if (unfold->parsed()) {
      auto sys = load(file);
      require_guarded(sys, least);
      Value v = lookup_var(sys, var);
      out << res::render(spec::solve(sys, least)(v), depth) << '\n';
      return kOk;
    }
    if (laws->parsed()) {
      laws::SuiteOptions opts;
      if (law_name != "all") {
        auto id = laws::parse_law(law_name);
        if (!id) throw UsageError("unknown law '" + law_name + "'");
        opts.laws = {*id};
      }
      if (monad_name == "maybe") {
        opts.monad = EffectMonadId::maybe();
      } else if (monad_name == "powerset") {
        opts.monad = EffectMonadId::powerset();
      } else {
        std::vector<std::string> letters;
        std::stringstream ss(alphabet);
        for (std::string l; std::getline(ss, l, ',');) {
          if (!l.empty()) letters.push_back(l);
        }
        if (letters.empty()) throw UsageError("the trace monad needs at least one letter");
        opts.monad = EffectMonadId::traces(letters);
      }
      opts.max_size = size;
      opts.depth = law_depth;
      opts.samples = samples;
      opts.keep_passing_lines = verbose;
      const IterationOperator iter = negative ? laws::truncated(1) : laws::kleene();
      Report report = laws::run_suite(opts, iter);
      for (const auto& line : verbose ? report.lines : report.problems) out << line << '\n';
      for (const auto& [law, t] : report.totals) {
        out << law << " instances=" << t.instances() << " pass=" << t.pass << " fail=" << t.fail
            << " nonconv=" << t.nonconv << " vacuous=" << t.vacuous << '\n';
      }
      return report.failures() == 0 ? kOk : kFailure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (budget estimate " << e.required() << ")\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << file << ':' << e.what() << '\n';
    return kFailure;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace celgot::cli
