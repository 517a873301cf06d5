// Copyright 2026 The slt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLT_ORACLE_ORACLE_HPP_
#define SLT_ORACLE_ORACLE_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "slt/fsm/nfa.hpp"
#include "slt/machine/computation.hpp"
#include "slt/machine/config.hpp"
#include "slt/machine/machine.hpp"

namespace slt {

struct OracleWitness {
  Input input;
  std::vector<std::size_t> transitions;  // a full accepting computation
  std::size_t index = 0;                 // configuration holding the entry
};

struct OracleEntry {
  std::size_t minCrossing = 0;
  std::size_t minTurn = 0;
  std::size_t minVisit = 0;
  OracleWitness witness;  // attains minCrossing
};

struct OracleReport {
  std::size_t inputBound = 0;
  std::size_t stepBound = 0;
  std::map<StoreConfig, OracleEntry> entries;
  bool exhausted = false;
};

struct OracleOptions {
  // Per-input cap on explored computation prefixes.
  std::size_t maxNodes = 5'000'000;
  bool serial = false;
};

// Enumerates every computation on every input of length <= inputBound, up
// to stepBound steps, recording the store configurations of the accepting
// ones with metric minima.
OracleReport enumerateStore(const Machine& m, std::size_t inputBound,
                            std::size_t stepBound,
                            const OracleOptions& opt = {});

struct AcceptedPath {
  const std::vector<std::size_t>& transitions;
  const std::vector<const Config*>& configs;
  std::size_t maxCrossing, turns, maxVisit;
};
using AcceptVisitor = std::function<void(const AcceptedPath&)>;

// Calls f on every accepting computation of at most stepBound steps on w.
// Returns true when the step or node bound cut the search short.
bool forEachAccepting(const Machine& m, const Input& w, std::size_t stepBound,
                      const AcceptVisitor& f,
                      std::size_t maxNodes = 5'000'000);

// Sorted "<storeconfig> <minTurn> <minVisit> <minCross>" lines.
std::vector<std::string> reportLines(const Machine& m, const OracleReport& r);

// Words over Σ of length <= n in shortlex order.
std::vector<Input> inputsUpTo(const Machine& m, std::size_t n);

enum class Direction { Forward, Backward };

struct ReachOptions {
  // Backward search: candidate sources have tapes of at most this length.
  std::size_t tapeBound = 4;
  std::size_t maxNodes = 20'000'000;
};

struct ReachResult {
  std::set<StoreConfig> configs;
  bool exhausted = false;
};

// Forward: configurations reachable from a seed in <= stepBound steps,
// reading <= inputBound letters of some input suffix (end-marker allowed).
// Backward: normalised configurations with tape length <= tapeBound from
// which a seed is reachable under the same bounds.
ReachResult oracleReach(const Machine& m, const std::vector<StoreConfig>& seeds,
                        std::size_t inputBound, std::size_t stepBound,
                        Direction dir, const ReachOptions& opt = {});

// Every normalised store configuration (edge cells nonblank unless under
// the head) with tape length 1..maxTape and zero counters.
std::vector<StoreConfig> normalizedConfigs(const Machine& m, std::size_t maxTape);
bool isNormalized(const Machine& m, const StoreConfig& s);

// Accepting-computation existence by breadth-first search.
bool acceptsInput(const Machine& m, const Input& w, const SimLimits& limits);

// { u : |u| <= bound, exists v, |v| <= bound, uv in L(m), v in L(rgx) }.
// rgx is over Σ in m's input-alphabet order.
std::set<Input> oracleQuotient(const Machine& m, const Nfa& rgx,
                               std::size_t bound, const SimLimits& limits = {});

}  // namespace slt

#endif  // SLT_ORACLE_ORACLE_HPP_
