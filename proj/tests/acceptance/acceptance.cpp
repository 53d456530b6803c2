// One line per acceptance criterion; exit status 1 when any of them fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "celgot/bridge.hpp"
#include "celgot/effects.hpp"
#include "celgot/elgot.hpp"
#include "celgot/errors.hpp"
#include "celgot/lawcheck.hpp"
#include "celgot/resumption.hpp"
#include "celgot/speclang.hpp"
#include "oracles.hpp"

using namespace celgot;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << v;
  return ss.str();
}

BaseFn identity() {
  return [](const Value& v) { return v; };
}

std::size_t index_of(const Value& v) { return std::stoul(v.name().substr(1)) - 1; }

TreeFn random_kleisli(const PMonadInstance& inst, const Carrier& from, const Carrier& to, std::mt19937_64& rng) {
  auto c = res::random_coalgebra(inst, to, from.size(), rng);
  auto h = res::coit(c);
  return [h, c](const Value& a) { return h(c.states->elements()[index_of(a)]); };
}

StepFn random_equation(const PMonadInstance& inst, const Carrier& a, const Carrier& x, std::mt19937_64& rng) {
  std::map<Value, HashValue> t;
  for (const auto& xi : x.elements()) t.emplace(xi, pmonad::random_hash(inst, a, x, rng));
  return [t](const Value& v) { return t.at(v); };
}

// --- 1 ----------------------------------------------------------------------

Outcome kleisli_laws() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t checks = 0;
  for (auto m : {EffectMonadId::maybe(), EffectMonadId::powerset()}) {
    for (std::size_t nx = 0; nx <= 2; ++nx) {
      for (std::size_t ny = 0; ny <= 2; ++ny) {
        for (std::size_t nz = 0; nz <= 2; ++nz) {
          auto x = Carrier::numbered("X", "x", nx);
          auto y = Carrier::numbered("Y", "y", ny);
          auto z = Carrier::numbered("Z", "z", nz);
          auto tx = effects::enumerate(m, x);
          if (ny == 0 && nz == 0) {
            for (const auto& v : tx) {
              ++checks;
              o.require(effects::bind(v, [&](const Value& a) { return effects::unit(m, a); }) == v, "right unit at " + v.str());
            }
          }
          auto fs = effects::enumerate_maps(m, x, y);
          if (nz == 0) {
            for (const auto& f : fs) {
              for (const auto& a : x.elements()) {
                ++checks;
                o.require(effects::bind(effects::unit(m, a), f.fn()) == f(a), "left unit for " + f.str());
              }
            }
          }
          for (const auto& f : fs) {
            for (const auto& g : effects::enumerate_maps(m, y, z)) {
              for (const auto& v : tx) {
                ++checks;
                auto lhs = effects::bind(effects::bind(v, f.fn()), g.fn());
                auto rhs = effects::bind(v, [&](const Value& a) { return effects::bind(f(a), g.fn()); });
                o.require(lhs == rhs, "associativity at " + v.str());
              }
            }
          }
        }
      }
    }
  }
  double s = seconds_since(t0);
  o.require(s < 5.0, "took " + fixed(s) + " s");
  if (o.ok) o.detail = std::to_string(checks) + " checks in " + fixed(s) + " s";
  return o;
}

// --- 2 ----------------------------------------------------------------------

Outcome elgot_axioms() {
  Outcome o;
  std::size_t total = 0;
  for (auto m : {EffectMonadId::maybe(), EffectMonadId::powerset()}) {
    laws::SuiteOptions opts;
    opts.monad = m;
    opts.max_size = 1;
    auto report = laws::run_suite(opts, laws::kleene());
    for (const auto& [law, t] : report.totals) {
      total += t.instances();
      o.require(t.fail == 0 && t.nonconv == 0, m.str() + " " + law + " fail=" + std::to_string(t.fail));
    }
    o.require(report.totals.size() == laws::all_laws().size(), "missing laws for " + m.str());
  }
  laws::SuiteOptions neg;
  neg.laws = {LawId::Fixpoint};
  neg.max_size = 2;
  auto report = laws::run_suite(neg, laws::truncated(1));
  o.require(report.failures() > 0, "negative control passed");
  std::string witness;
  if (!report.problems.empty()) witness = report.problems.front().instance + " " + report.problems.front().result.witness;
  o.require(!witness.empty(), "negative control without witness");
  if (o.ok) {
    o.detail = std::to_string(total) + " instances pass; negative control: " + std::to_string(report.failures()) +
               " fixpoint failures, e.g. " + witness;
  }
  return o;
}

// --- 3 ----------------------------------------------------------------------

Outcome resumption_monad() {
  Outcome o;
  std::mt19937_64 rng(101);
  auto inst = PMonadInstance::with_sig(EffectMonadId::powerset(), Signature::actions({"a", "b"}));
  auto a = Carrier::numbered("A", "a", 2);
  auto b = Carrier::numbered("B", "b", 2);
  auto c = Carrier::numbered("C", "c", 2);
  auto one = Carrier::numbered("S", "s", 1);
  TreeFn eta = [&](const Value& v) { return res::eta_nu(inst, v); };
  for (int i = 0; i < 50; ++i) {
    auto t = random_kleisli(inst, one, a, rng)(Value::atom("s1"));
    auto f = random_kleisli(inst, a, b, rng);
    auto g = random_kleisli(inst, b, c, rng);
    for (const auto& x : a.elements()) o.require(res::bisim_depth(res::kleisli_nu(f)(eta(x)), f(x), 8), "left unit");
    o.require(res::bisim_depth(res::kleisli_nu(eta)(t), t, 8), "right unit");
    auto lhs = res::kleisli_nu(g)(res::kleisli_nu(f)(t));
    auto rhs = res::kleisli_nu([&](const Value& v) { return res::kleisli_nu(g)(f(v)); })(t);
    o.require(res::bisim_depth(lhs, rhs, 8), "associativity");
  }
  for (int i = 0; i < 50; ++i) {
    auto t = random_kleisli(inst, one, a, rng)(Value::atom("s1"));
    auto f = random_kleisli(inst, a, b, rng);
    auto fstar = res::kleisli_nu(f);
    auto rhs = pmonad::hash_mult(
        inst, pmonad::hash_bimap(inst, [&](const Value& l) { return Value::effect(res::out(f(l))); },
                                 [&](const Value& ch) { return fstar(ResTree::from_value(ch)).value(); }, res::out(t)));
    o.require(res::observe(Value::effect(res::out(fstar(t))), 6) == res::observe(Value::effect(rhs), 6), "out of lifting");
  }
  for (int i = 0; i < 50; ++i) {
    auto e = res::random_coalgebra(inst, b, 2, rng);
    auto f = random_kleisli(inst, b, a, rng);
    auto two = res::coit2(inst, e.step, [f](const Value& v) { return res::out(f(v)); });
    auto plain = res::coit(e);
    auto with_unit = res::coit2(inst, e.step, [&](const Value& v) { return res::out(eta(v)); });
    for (const auto& s : e.states->elements()) {
      o.require(res::bisim_depth(two(s), res::kleisli_nu(f)(plain(s)), 6), "two-stage coiteration");
      o.require(res::bisim_depth(with_unit(s), plain(s), 6), "coiteration with unit");
    }
  }
  for (int i = 0; i < 50; ++i) {
    auto e = res::random_coalgebra(inst, a, 3, rng);
    std::vector<Value> image{c[rng() % 2], c[rng() % 2]};
    BaseFn g = [&, image](const Value& v) { return image[a.index_of(v)]; };
    Coalgebra mapped{inst, [&, g](const Value& s) { return pmonad::hash_bimap(inst, g, identity(), e.step(s)); }, e.states};
    auto lhs = res::coit(e);
    auto rhs = res::coit(mapped);
    for (const auto& s : e.states->elements()) o.require(res::bisim_depth(res::map_nu(g, lhs(s)), rhs(s), 6), "mapping");
  }
  if (o.ok) o.detail = "monad laws at depth 8, lifting, two-stage coiteration and mapping identities at depth 6; 50 each";
  return o;
}

// --- 4 ----------------------------------------------------------------------

Outcome em_round_trips() {
  Outcome o;
  std::mt19937_64 rng(103);
  std::size_t algebras = 0;
  std::size_t equations = 0;
  for (const auto& spec : alg::shipped_algebras()) {
    ++algebras;
    auto a = alg::continuous_elgot(spec);
    auto em = alg::elgot_to_em(a);
    auto gf = alg::em_to_elgot(em);
    auto values = pmonad::enumerate(spec.inst, spec.carrier, spec.carrier);
    for (const auto& v : values) {
      o.require(gf.structure(v) == a.structure(v), spec.name + ": structure differs at " + v.str());
      o.require(em.chi(res::ext(spec.inst, v)) == a.structure(v), spec.name + ": chi.ext differs at " + v.str());
    }
    for (const auto& x : spec.carrier.elements()) {
      o.require(em.chi(res::eta_nu(spec.inst, x)) == x, spec.name + ": out-dagger.eta differs at " + x.str());
    }
    std::size_t nx = 2;
    while (nx > 1 && std::pow(static_cast<double>(pmonad::enumerate(spec.inst, spec.carrier, Carrier::numbered("X", "x", nx)).size()),
                              static_cast<double>(nx)) > 4096) {
      --nx;
    }
    for (std::size_t n = 1; n <= nx; ++n) {
      auto x = Carrier::numbered("X", "x", n);
      auto outs = pmonad::enumerate(spec.inst, spec.carrier, x);
      std::vector<std::size_t> digits(n, 0);
      while (true) {
        std::map<Value, HashValue> t;
        for (std::size_t i = 0; i < n; ++i) t.emplace(x[i], outs[digits[i]]);
        StepFn e = [&t](const Value& v) { return t.at(v); };
        auto s1 = a.iterate(Coalgebra{spec.inst, e, x});
        auto s2 = gf.iterate(Coalgebra{spec.inst, e, x});
        for (const auto& xi : x.elements()) o.require(s1(xi) == s2(xi), spec.name + ": iteration differs");
        ++equations;
        std::size_t i = 0;
        while (i < n && ++digits[i] == outs.size()) digits[i++] = 0;
        if (i == n) break;
      }
    }
    auto limits = alg::em_from_limits(spec);
    auto fg = alg::elgot_to_em(alg::em_to_elgot(limits));
    for (int i = 0; i < 20; ++i) {
      auto c = res::random_coalgebra(spec.inst, spec.carrier, 3, rng);
      auto t = res::coit(c)(Value::atom("s1"));
      o.require(fg.chi(t) == limits.chi(t), spec.name + ": chi differs on " + res::render(t, 2));
    }
  }
  o.require(algebras >= 5, "only " + std::to_string(algebras) + " algebras");
  if (o.ok) {
    o.detail = std::to_string(algebras) + " algebras, " + std::to_string(equations) + " exhaustive equations";
  }
  return o;
}

// --- 5 ----------------------------------------------------------------------

Outcome free_algebra() {
  Outcome o;
  std::mt19937_64 rng(107);
  auto inst = PMonadInstance::with_sig(EffectMonadId::powerset(), Signature::actions({"a", "b"}));
  auto leaves = Carrier::numbered("A", "l", 2);
  for (int i = 0; i < 20; ++i) {
    auto c = res::random_coalgebra(inst, leaves, 2, rng);
    auto trees = res::coit(c);
    HashValue v = pmonad::hash_bimap(inst, identity(), [&](const Value& s) { return trees(s).value(); },
                                     c.step(Value::atom("s1")));
    auto phi = alg::free_phi_eta(inst, v);
    o.require(res::observe(Value::effect(res::out(phi)), 6) == res::observe(Value::effect(v), 6), "out.phi is not id");
    auto t = trees(Value::atom("s2"));
    o.require(res::bisim_depth(alg::free_phi_eta(inst, res::out(t)), t, 6), "phi.out is not id");
  }
  auto free = alg::free_elgot(inst);
  std::size_t rejected = 0;
  for (int sys = 0; sys < 5; ++sys) {
    auto c = res::random_coalgebra(inst, leaves, 3, rng);
    Coalgebra e{inst, [&, step = c.step](const Value& v) {
                  return pmonad::hash_bimap(inst, [&](const Value& l) { return alg::free_unit(inst, l).value(); },
                                            identity(), step(v));
                }, c.states};
    auto states = c.states->elements();
    Solution sol = free.iterate(e);
    TreeFn truth = [sol](const Value& v) { return ResTree::from_value(sol(v)); };
    std::vector<TreeFn> candidates{truth};
    for (int k = 0; k < 10; ++k) {
      Value target = states[k % states.size()];
      Value extra = Value::atom("p" + std::to_string(k));
      candidates.push_back([truth, target, extra, inst](const Value& v) {
        if (v != target) return truth(v);
        std::vector<EffectValue::Entry> entries(truth(v).out().entries().begin(), truth(v).out().entries().end());
        entries.push_back({{}, pmonad::leaf(extra)});
        return res::out_inv(inst, EffectValue::from_entries(inst.monad, entries));
      });
    }
    auto report = alg::unique_solution_probe(free, e, states, candidates, 6);
    o.require(report.satisfies[0], "the solution fails its own equation");
    for (std::size_t k = 1; k < candidates.size(); ++k) rejected += report.satisfies[k] ? 0 : 1;
  }
  o.require(rejected == 50, std::to_string(rejected) + " of 50 perturbations rejected");
  if (o.ok) o.detail = "20 payloads; 50 of 50 perturbations rejected";
  return o;
}

// --- 6 ----------------------------------------------------------------------

std::string run_tool(const std::string& args) {
  std::string cmd = std::string(CELGOT_TOOL) + " " + args + " 2>&1";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return out + "<exit " + std::to_string(status) + ">";
}

Outcome example_end_to_end() {
  Outcome o;
  auto t0 = Clock::now();
  const std::string file = std::string(CELGOT_TEST_DATA) + "/example1.proc";
  auto lts = oracle::example_lts();
  auto expected = [&](std::size_t maxlen) {
    std::string s;
    for (const auto& w : oracle::bfs_traces(lts, "x3", maxlen)) s += (w.empty() ? "<eps>" : w) + "\n";
    return s + "<exit 0>";
  };
  o.require(oracle::bfs_traces(lts, "x3", 3) == std::vector<std::string>{"", "aa", "aab"}, "oracle disagrees with {eps, aa, aab}");
  std::ifstream in(file);
  std::stringstream text;
  text << in.rdbuf();
  auto ast = spec::parse(text.str());
  o.require(!spec::check_guarded(ast).has_value(), "example reported unguarded");
  auto sys = spec::compile(ast);
  auto tree = spec::solve(sys)(sys.var("x3"));
  o.require(res::render(tree, 1) == "T{ leaf tick | a(@cut) }", "solution of x3 is " + res::render(tree, 1));
  for (std::size_t maxlen : {3u, 5u}) {
    auto got = run_tool("traces " + file + " --var x3 --maxlen " + std::to_string(maxlen));
    o.require(got == expected(maxlen), "maxlen " + std::to_string(maxlen) + " printed " + got);
  }
  double s = seconds_since(t0);
  o.require(s < 1.0, "took " + fixed(s) + " s");
  if (o.ok) o.detail = "traces match the search oracle for maxlen 3 and 5 in " + fixed(s) + " s";
  return o;
}

// --- 7 ----------------------------------------------------------------------

Value max_of(const EffectValue& v) {
  int m = 0;
  for (const auto& e : v.entries()) m = std::max(m, std::stoi(e.value.name()));
  return Value::atom(std::to_string(m));
}

Outcome bridge_suite() {
  Outcome o;
  std::mt19937_64 rng(109);
  for (auto m : {EffectMonadId::maybe(), EffectMonadId::powerset()}) {
    auto delay = PMonadInstance::with_sig(m, Signature::delay());
    auto d = bridge::delta_collapse(res::eta_nu(delay, Value::atom("x")));
    o.require(d.exact && d.value == effects::unit(m, Value::atom("x")), "delta.eta differs for " + m.str());
    auto x = Carrier::numbered("X", "x", 1);
    auto step = KleisliMap::from_fn(x, m, [&](const Value& s) {
      return effects::unit(m, pmonad::node(sig::layer(Signature::delay(), "delay", {s})));
    });
    auto inf = bridge::delta_collapse(res::coit(Coalgebra::from_map(delay, step))(x[0]));
    o.require(inf.exact && inf.value == effects::bottom(m), "infinite delay is not bottom for " + m.str());
  }

  auto p = EffectMonadId::powerset();
  auto plain = PMonadInstance::plain(p);
  auto em = bridge::mu_delta_algebra(p);
  std::vector<Value> payloads;
  for (const auto& v : effects::enumerate(p, Carrier::numbered("A", "a", 2))) payloads.push_back(Value::effect(v));
  for (const auto& v : payloads) o.require(em.chi(res::eta_nu(plain, v)) == v, "mu.delta.eta differs");
  std::vector<ResTree> two_level;
  for (int i = 0; i < 30; ++i) {
    auto inner = res::coit(res::random_coalgebra(plain, Carrier("TA", payloads), 3, rng));
    std::vector<Value> trees;
    for (const auto& s : {"s1", "s2", "s3"}) trees.push_back(inner(Value::atom(s)).value());
    auto outer = res::random_coalgebra(plain, Carrier("F", trees), 5, rng);
    two_level.push_back(res::coit(outer)(Value::atom("s1")));
  }
  o.require(alg::check_em_laws(em, two_level).ok(), "mu.delta fails the EM laws");

  auto mb = EffectMonadId::maybe();
  auto free = bridge::free_t_algebra(mb);
  auto x = Carrier::numbered("X", "x", 1);
  auto y = Carrier::numbered("Y", "y", 1);
  std::size_t round_trips = 0;
  for (const auto& e : effects::enumerate_maps(mb, x, Carrier::sum(y, x))) {
    auto dagger = effects::iterate(e).value;
    auto lifted = KleisliMap::from_fn(x, mb, [&](const Value& v) {
      return effects::fmap(e(v), [&](const Value& w) {
        return w.is(ValueKind::Inl) ? Value::inl(Value::effect(effects::unit(mb, w.inner()))) : w;
      });
    });
    auto ddagger = bridge::iistar_from_istar([](const EffectValue& v) { return Value::effect(effects::flatten(v)); }, lifted);
    o.require(bridge::istar_from_iistar(free, e) == dagger, "dagger -> double dagger -> dagger differs at " + e.str());
    for (const auto& xi : x.elements()) o.require(ddagger(xi) == Value::effect(dagger(xi)), "double dagger differs");
    ++round_trips;
  }

  std::size_t codiag = 0;
  auto xs = Carrier::numbered("X", "x", 2);
  for (const auto& spec : alg::shipped_codiagonal_algebras()) {
    auto a = alg::continuous_elgot(spec);
    std::vector<Value> leaves;
    for (int i = 0; i < 6; ++i) leaves.push_back(Value::effect(pmonad::random_hash(spec.inst, spec.carrier, xs, rng)));
    std::sort(leaves.begin(), leaves.end());
    leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
    for (int i = 0; i < 30; ++i) {
      Coalgebra e{spec.inst, random_equation(spec.inst, Carrier("L", leaves), xs, rng), xs};
      auto r = bridge::check_codiag_alg(a, e, xs);
      o.require(r.verdict == Verdict::Pass, spec.name + ": " + r.witness);
      ++codiag;
    }
  }
  auto c2 = Carrier::of_atoms("C2", {"0", "1"});
  auto truncated = bridge::codiag_elgot(p, "max2-truncated", c2, max_of, effects::IterationPolicy::depth(1));
  auto two = Carrier::of_atoms("X", {"x", "x'"});
  Value inner = Value::effect(EffectValue::set(p, {pmonad::leaf(Value::atom("1"))}));
  Coalgebra e{plain, [&](const Value& s) {
                return s == two[0] ? EffectValue::set(p, {pmonad::node(two[1])}) : EffectValue::set(p, {pmonad::leaf(inner)});
              }, two};
  auto neg = bridge::check_codiag_alg(truncated, e, two);
  o.require(neg.verdict == Verdict::Fail, "truncated negative control passed");
  if (o.ok) {
    o.detail = std::to_string(round_trips) + " round trips, " + std::to_string(codiag) +
               " flattening checks pass; negative control: " + neg.witness;
  }
  return o;
}

// --- 8 ----------------------------------------------------------------------

Outcome determinism() {
  Outcome o;
  const std::string data = std::string(CELGOT_TEST_DATA) + "/";
  const std::vector<std::string> commands{
      "solve " + data + "example1.proc --depth 4",
      "traces " + data + "example1.proc --var x1 --maxlen 6",
      "unfold " + data + "example1.proc --var x2 --depth 5",
      "unfold " + data + "delay.proc --var x --depth 3",
      "solve " + data + "bad.proc",
      "solve " + data + "bad.proc --least --depth 2",
      "laws --monad maybe --law all",
      "laws --monad powerset --law all",
      "laws --monad traces --alphabet a,b --samples 16 --verbose",
      "laws --monad maybe --law fixpoint --negative-control --size 2",
  };
  for (const auto& c : commands) {
    auto first = run_tool(c);
    auto second = run_tool(c);
    o.require(first == second, "differs: " + c);
  }
  if (o.ok) o.detail = std::to_string(commands.size()) + " commands, byte-identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"kleisli laws", kleisli_laws},      {"elgot axioms", elgot_axioms}, {"resumption monad", resumption_monad},
      {"em round trips", em_round_trips},  {"free algebra", free_algebra}, {"example end to end", example_end_to_end},
      {"bridge", bridge_suite},            {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.ok ? 0 : 1;
    std::cout << "criterion " << (i + 1) << " " << criteria[i].first << ": " << (o.ok ? "PASS" : "FAIL") << " ("
              << o.detail << ", " << fixed(seconds_since(t0)) << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
