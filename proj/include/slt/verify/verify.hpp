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

#ifndef SLT_VERIFY_VERIFY_HPP_
#define SLT_VERIFY_VERIFY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slt/fsm/nfa.hpp"
#include "slt/machine/machine.hpp"
#include "slt/store/history.hpp"

namespace slt {

// A set of store configurations, as an Nfa over a machine's store alphabet.
using ConfigSet = Nfa;

// Accepts the inputs on which m has a k-bounded accepting computation in the
// given mode. The result carries its own bound in declaredBound.
Machine boundFilter(const Machine& m, std::size_t k, BoundMode mode);

// Crossing bound of boundFilter(m, k, mode) for a k-bounded m.
std::size_t filterCrossingBound(std::size_t k, BoundMode mode);

bool existsKBounded(const Machine& m, std::size_t k, BoundMode mode,
                    const StoreNfaOptions& opt = {});

// Machines that read a store-configuration word, a separator, then m's
// input and a second separator.
struct LoadedMachine {
  Machine machine;
  std::string separator;
  // Input letter standing for the head token.
  std::string headLetter;
  // Crossings added to every boundary on top of m's own.
  std::size_t overhead = 0;
  // Names in `machine` of m's states, before and after m reads its end
  // marker, indexed by m's state ids.
  std::vector<std::string> before, after;
  // Worktape end markers (unloaded machines only).
  std::string leftEnd, rightEnd;
};

// Writes a word of L(c) on the worktape, then runs m on the rest of the
// input. Accepts at the second separator from any state.
LoadedMachine loadedMachine(const Machine& m, const ConfigSet& c);

// Writes any store configuration, runs m, and accepts at the second
// separator when the current store configuration is in L(c).
LoadedMachine unloadedMachine(const Machine& m, const ConfigSet& c);

// Input word "<config> sep <x> sep" for a loaded or unloaded machine.
std::vector<std::string> loadedInput(const Machine& m, const LoadedMachine& l,
                                     const StoreConfig& c,
                                     const std::vector<std::string>& x);

// Configurations reachable from L(c), for r-crossing runs of m.
ConfigSet postStar(const Machine& m, std::size_t r, const ConfigSet& c,
                   const StoreNfaOptions& opt = {});

// Runs m backwards: each move of m is undone by a move back followed by a
// stay that restores the cell. States keep their names until the undone
// run passes m's end marker, primed afterwards. Crossings are preserved.
Machine reversedMachine(const Machine& m);

// Configurations from which L(c) is reachable, for r-crossing runs of m.
ConfigSet preStar(const Machine& m, std::size_t r, const ConfigSet& c,
                  const StoreNfaOptions& opt = {});

struct CommonResult {
  bool answer = false;
  std::vector<std::string> witness;  // shortest common configuration
};

// Non-initial store configurations shared by r1-crossing runs of m1 and
// r2-crossing runs of m2. States are compared by name.
CommonResult commonConfigs(const Machine& m1, std::size_t r1,
                           const Machine& m2, std::size_t r2,
                           const StoreNfaOptions& opt = {});

// Accepts L(m) L(rgx)^-1. rgx is over m's input alphabet.
Machine rightQuotientMachine(const Machine& m, const Nfa& rgx);

// Nfa for the configurations of a single StoreConfig.
ConfigSet singletonConfig(const Machine& m, const StoreConfig& s);

}  // namespace slt

#endif  // SLT_VERIFY_VERIFY_HPP_
