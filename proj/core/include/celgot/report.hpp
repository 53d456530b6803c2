#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace celgot {

enum class Verdict : std::uint8_t { Pass, Fail, NonConv, Vacuous };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
    case Verdict::Vacuous:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::NonConv:
      return "NONCONV";
  }
  return "?";
}

struct CheckResult {
  Verdict verdict = Verdict::Pass;
  std::string witness;

  bool ok() const { return verdict == Verdict::Pass || verdict == Verdict::Vacuous; }
  static CheckResult pass() { return {}; }
  static CheckResult vacuous() { return {Verdict::Vacuous, {}}; }
  static CheckResult fail(std::string w) { return {Verdict::Fail, std::move(w)}; }
  static CheckResult nonconv(std::string w) { return {Verdict::NonConv, std::move(w)}; }
};

/// One `AXIOM instance-id PASS|FAIL|NONCONV [witness]` line.
struct ReportLine {
  std::string axiom;
  std::string instance;
  CheckResult result;
};

inline std::ostream& operator<<(std::ostream& os, const ReportLine& line) {
  os << line.axiom << ' ' << line.instance << ' ' << verdict_name(line.result.verdict);
  if (!line.result.witness.empty()) os << ' ' << line.result.witness;
  return os;
}

struct Totals {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t nonconv = 0;
  std::size_t vacuous = 0;  // counted in pass as well

  std::size_t instances() const { return pass + fail + nonconv; }
  void add(const CheckResult& r) {
    switch (r.verdict) {
      case Verdict::Vacuous:
        ++vacuous;
        [[fallthrough]];
      case Verdict::Pass:
        ++pass;
        break;
      case Verdict::Fail:
        ++fail;
        break;
      case Verdict::NonConv:
        ++nonconv;
        break;
    }
  }
};

struct Report {
  std::map<std::string, Totals> totals;
  std::vector<ReportLine> lines;
  /// Failing and non-converging lines only.
  std::vector<ReportLine> problems;

  void add(ReportLine line, bool keep_line = true) {
    totals[line.axiom].add(line.result);
    if (!line.result.ok()) problems.push_back(line);
    if (keep_line) lines.push_back(std::move(line));
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& [_, t] : totals) n += t.fail;
    return n;
  }
  std::size_t nonconvergent() const {
    std::size_t n = 0;
    for (const auto& [_, t] : totals) n += t.nonconv;
    return n;
  }
};

}  // namespace celgot
