#pragma once

// Reference computations written against plain standard containers, with no
// use of the library, so tests can compare the engine against them.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

/// A labelled transition system with accepting states.
struct Lts {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> moves;
  std::set<std::string> accepting;
};

/// tests/data/example1.proc read as an LTS: x1 -a-> x2 and x1 -a-> x3 stand for a.(x2 + x3).
Lts example_lts();

/// Words of length ≤ maxlen leading from `start` to an accepting state, by
/// breadth-first search over (state, word) pairs; shortlex ordered.
std::vector<std::string> bfs_traces(const Lts& lts, const std::string& start, std::size_t maxlen);

/// A map X → P(Y + X) with tagged outputs: ("y", name) or ("x", name).
using Tagged = std::pair<char, std::string>;
using PowersetTable = std::map<std::string, std::set<Tagged>>;
/// Least fixed point for the powerset: the exits reachable through x-steps.
std::map<std::string, std::set<std::string>> powerset_iterate(const PowersetTable& f);

/// A map X → Maybe(Y + X).
using MaybeTable = std::map<std::string, std::optional<Tagged>>;
/// Follows the unique path; loops and dead ends give nothing.
std::map<std::string, std::optional<std::string>> maybe_iterate(const MaybeTable& f);

/// Text of the depth-n unfolding of an action system in the renderer's
/// format: each state has optional termination and a list of (letter, target).
std::string unfold(const Lts& lts, const std::string& start, std::size_t depth);

}  // namespace oracle
