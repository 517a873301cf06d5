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

#ifndef SLT_MACHINE_COMPUTATION_HPP_
#define SLT_MACHINE_COMPUTATION_HPP_

#include <cstddef>
#include <map>
#include <vector>

#include "slt/machine/config.hpp"
#include "slt/machine/machine.hpp"

namespace slt {

struct Computation {
  Input input;
  std::vector<Config> configs;
  std::vector<std::size_t> transitions;  // transitions[j] takes j to j+1
  std::vector<long> addresses;
};

std::vector<long> addressesOf(const Machine& m,
                              const std::vector<std::size_t>& transitions);

// Rebuilds a computation by applying the transitions from the initial
// configuration. Throws InvalidArgument if one is not enabled.
Computation replay(const Machine& m, const Input& w,
                   const std::vector<std::size_t>& transitions);

struct ComputationMetrics {
  std::size_t turns = 0;
  std::size_t maxVisits = 0;
  std::size_t maxCrossings = 0;
  std::vector<std::size_t> counterReversals;
  std::map<long, std::size_t> visits;     // by address
  std::map<long, std::size_t> crossings;  // boundary r..r+1, keyed by r
};

ComputationMetrics metrics(const Machine& m, const Computation& c);

// Turn counter over a stream of address deltas. A move is a turn when it
// reverses the direction of the last address-changing move.
struct TurnCounter {
  int lastDir = 0;
  std::size_t turns = 0;
  void add(int delta) {
    if (delta == 0) return;
    if (lastDir != 0 && delta != lastDir) ++turns;
    lastDir = delta;
  }
};

// Reversal counter for one counter's delta stream.
struct ReversalCounter {
  int phase = 0;
  std::size_t reversals = 0;
  void add(int delta) {
    if (delta == 0) return;
    if (phase != 0 && delta != phase) ++reversals;
    phase = delta;
  }
};

std::vector<StoreConfig> storeConfigsOf(const Computation& c);

struct SimLimits {
  std::size_t maxSteps = 1000;
  std::size_t maxTape = 1000;
};

struct SimResult {
  // One shortest computation per reachable accepting configuration, in
  // breadth-first discovery order.
  std::vector<Computation> accepting;
  bool exhausted = false;
};

SimResult simulate(const Machine& m, const Input& w, const SimLimits& limits);

}  // namespace slt

#endif  // SLT_MACHINE_COMPUTATION_HPP_
