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

#include "slt/machine/computation.hpp"

#include <algorithm>
#include <unordered_map>

#include "slt/error.hpp"

namespace slt {

std::vector<long> addressesOf(const Machine& m,
                              const std::vector<std::size_t>& transitions) {
  std::vector<long> out{1};
  for (std::size_t t : transitions) {
    const Transition& tr = m.transitions.at(t);
    long d = tr.worktape() ? static_cast<long>(tr.move) : 0;
    out.push_back(out.back() + d);
  }
  return out;
}

Computation replay(const Machine& m, const Input& w,
                   const std::vector<std::size_t>& transitions) {
  Computation c;
  c.input = w;
  c.configs.push_back(initialConfig(m));
  for (std::size_t t : transitions) {
    Config next;
    if (t >= m.transitions.size() ||
        !applyTransition(m, w, c.configs.back(), t, next))
      throw InvalidArgument("transition " + std::to_string(t) +
                            " not enabled during replay");
    c.configs.push_back(std::move(next));
  }
  c.transitions = transitions;
  c.addresses = addressesOf(m, transitions);
  return c;
}

ComputationMetrics metrics(const Machine& m, const Computation& c) {
  ComputationMetrics out;
  const auto& a = c.addresses;
  for (long x : a) ++out.visits[x];
  TurnCounter turns;
  for (std::size_t j = 1; j < a.size(); ++j) {
    long d = a[j] - a[j - 1];
    if (d != 0) ++out.crossings[std::min(a[j], a[j - 1])];
    turns.add(static_cast<int>(d));
  }
  out.turns = turns.turns;
  for (auto& [r, n] : out.visits) out.maxVisits = std::max(out.maxVisits, n);
  for (auto& [r, n] : out.crossings) out.maxCrossings = std::max(out.maxCrossings, n);
  std::vector<ReversalCounter> rev(m.counters);
  for (std::size_t t : c.transitions) {
    const Transition& tr = m.transitions.at(t);
    if (!tr.worktape()) rev[tr.counter - 1].add(tr.delta);
  }
  for (const auto& r : rev) out.counterReversals.push_back(r.reversals);
  return out;
}

std::vector<StoreConfig> storeConfigsOf(const Computation& c) {
  std::vector<StoreConfig> out;
  out.reserve(c.configs.size());
  for (const Config& x : c.configs) out.push_back(storeOf(x));
  return out;
}

SimResult simulate(const Machine& m, const Input& w, const SimLimits& limits) {
  if (limits.maxSteps == 0 || limits.maxTape == 0)
    throw InvalidArgument("simulation limits must be positive");
  struct Node {
    Config config;
    std::size_t parent;
    std::size_t transition;
    std::size_t depth;
  };
  std::vector<Node> nodes;
  std::unordered_map<Config, std::size_t, ConfigHash> seen;
  nodes.push_back({initialConfig(m), SIZE_MAX, SIZE_MAX, 0});
  seen.emplace(nodes[0].config, 0);
  SimResult res;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (isAccepting(m, w, nodes[i].config)) {
      std::vector<std::size_t> path;
      for (std::size_t k = i; nodes[k].parent != SIZE_MAX; k = nodes[k].parent)
        path.push_back(nodes[k].transition);
      std::reverse(path.begin(), path.end());
      res.accepting.push_back(replay(m, w, path));
    }
    auto succ = step(m, w, nodes[i].config);
    if (succ.empty()) continue;
    if (nodes[i].depth >= limits.maxSteps) {
      res.exhausted = true;
      continue;
    }
    for (auto& [cfg, t] : succ) {
      if (cfg.tape.size() > limits.maxTape) {
        res.exhausted = true;
        continue;
      }
      if (seen.count(cfg)) continue;
      seen.emplace(cfg, nodes.size());
      nodes.push_back({std::move(cfg), i, t, nodes[i].depth + 1});
    }
  }
  return res;
}

}  // namespace slt
