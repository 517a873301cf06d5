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

#include "slt/oracle/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "slt/error.hpp"
#include "slt/parallel.hpp"

namespace slt {

std::vector<Input> inputsUpTo(const Machine& m, std::size_t n) {
  std::vector<Input> out{{}};
  InSym k = static_cast<InSym>(m.inputAlphabet.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == n) continue;
    for (InSym a = 0; a < k; ++a) {
      Input w = out[i];
      w.push_back(a);
      out.push_back(std::move(w));
    }
  }
  return out;
}

namespace {

using EntryMap = std::map<StoreConfig, OracleEntry>;

void record(EntryMap& map, const StoreConfig& s, std::size_t cross,
            std::size_t turn, std::size_t visit, const Input& w,
            const std::vector<std::size_t>& path, std::size_t index) {
  auto it = map.find(s);
  if (it == map.end()) {
    map.emplace(s, OracleEntry{cross, turn, visit, {w, path, index}});
    return;
  }
  OracleEntry& e = it->second;
  if (cross < e.minCrossing) {
    e.minCrossing = cross;
    e.witness = {w, path, index};
  }
  e.minTurn = std::min(e.minTurn, turn);
  e.minVisit = std::min(e.minVisit, visit);
}

void merge(EntryMap& into, const EntryMap& from) {
  for (const auto& [s, e] : from) {
    auto it = into.find(s);
    if (it == into.end()) {
      into.emplace(s, e);
      continue;
    }
    OracleEntry& d = it->second;
    if (e.minCrossing < d.minCrossing) {
      d.minCrossing = e.minCrossing;
      d.witness = e.witness;
    }
    d.minTurn = std::min(d.minTurn, e.minTurn);
    d.minVisit = std::min(d.minVisit, e.minVisit);
  }
}

// Depth-first enumeration of every computation prefix on one input.
bool exploreInput(const Machine& m, const Input& w, std::size_t stepBound,
                  std::size_t maxNodes, const AcceptVisitor& onAccept) {
  const long offset = static_cast<long>(stepBound) + 2;
  std::vector<std::size_t> visits(2 * offset + 2, 0), cross(2 * offset + 2, 0);
  struct Frame {
    Config config;
    long address;
    std::vector<std::pair<Config, std::size_t>> succ;
    std::size_t next = 0;
    std::size_t maxVisit, maxCross;
    TurnCounter turns;
  };
  std::vector<Frame> stack;
  std::vector<std::size_t> path;
  bool exhausted = false;
  std::size_t nodes = 0;

  auto enter = [&](Config c, long addr, const Frame* parent) {
    Frame f{std::move(c), addr, {}, 0, 0, 0, {}};
    std::size_t v = ++visits[addr + offset];
    f.maxVisit = std::max(parent ? parent->maxVisit : 0, v);
    f.maxCross = parent ? parent->maxCross : 0;
    if (parent) {
      f.turns = parent->turns;
      long d = addr - parent->address;
      f.turns.add(static_cast<int>(d));
      if (d != 0) {
        std::size_t x = ++cross[std::min(addr, parent->address) + offset];
        f.maxCross = std::max(f.maxCross, x);
      }
    }
    if (isAccepting(m, w, f.config)) {
      std::vector<const Config*> configs;
      for (const Frame& g : stack) configs.push_back(&g.config);
      configs.push_back(&f.config);
      onAccept({path, configs, f.maxCross, f.turns.turns, f.maxVisit});
    }
    if (stack.size() < stepBound) {
      f.succ = step(m, w, f.config);
    } else if (!step(m, w, f.config).empty()) {
      exhausted = true;
    }
    stack.push_back(std::move(f));
  };
  auto leave = [&]() {
    Frame& f = stack.back();
    --visits[f.address + offset];
    if (stack.size() > 1) {
      const Frame& p = stack[stack.size() - 2];
      if (p.address != f.address) --cross[std::min(p.address, f.address) + offset];
      path.pop_back();
    }
    stack.pop_back();
  };

  enter(initialConfig(m), 1, nullptr);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next >= f.succ.size()) {
      leave();
      continue;
    }
    if (++nodes > maxNodes) return true;
    auto& [cfg, t] = f.succ[f.next++];
    const Transition& tr = m.transitions[t];
    long addr = f.address + (tr.worktape() ? static_cast<long>(tr.move) : 0);
    path.push_back(t);
    Config c = cfg;
    enter(std::move(c), addr, &stack.back());
  }
  return exhausted;
}

}  // namespace

bool forEachAccepting(const Machine& m, const Input& w, std::size_t stepBound,
                      const AcceptVisitor& f, std::size_t maxNodes) {
  return exploreInput(m, w, stepBound, maxNodes, f);
}

OracleReport enumerateStore(const Machine& m, std::size_t inputBound,
                            std::size_t stepBound, const OracleOptions& opt) {
  if (stepBound == 0) throw InvalidArgument("oracle step bound must be positive");
  OracleReport rep;
  rep.inputBound = inputBound;
  rep.stepBound = stepBound;
  std::vector<Input> inputs = inputsUpTo(m, inputBound);
  std::vector<EntryMap> local(inputs.size());
  std::vector<char> ex(inputs.size(), 0);
  std::exception_ptr failure;
  int threads = opt.serial ? 1 : threadCount();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    try {
      const Input& w = inputs[i];
      EntryMap& out = local[i];
      ex[i] = exploreInput(m, w, stepBound, opt.maxNodes,
                           [&](const AcceptedPath& a) {
        for (std::size_t j = 0; j < a.configs.size(); ++j) {
          record(out, storeOf(*a.configs[j]), a.maxCrossing, a.turns,
                 a.maxVisit, w, a.transitions, j);
        }
      });
    } catch (...) {
#pragma omp critical(slt_oracle_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    merge(rep.entries, local[i]);
    rep.exhausted |= ex[i] != 0;
  }
  return rep;
}

std::vector<std::string> reportLines(const Machine& m, const OracleReport& r) {
  std::vector<std::string> out;
  for (const auto& [s, e] : r.entries) {
    out.push_back(toText(m, s) + " " + std::to_string(e.minTurn) + " " +
                  std::to_string(e.minVisit) + " " + std::to_string(e.minCrossing));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool isNormalized(const Machine& m, const StoreConfig& s) {
  if (s.tape.empty() || s.head >= s.tape.size()) return false;
  std::size_t n = s.tape.size();
  if (s.tape[0] == m.blank && s.head != 0) return false;
  if (s.tape[n - 1] == m.blank && s.head != n - 1) return false;
  return true;
}

std::vector<StoreConfig> normalizedConfigs(const Machine& m, std::size_t maxTape) {
  std::vector<StoreConfig> out;
  std::size_t g = m.tapeAlphabet.size();
  for (MState q = 0; q < m.stateCount(); ++q) {
    for (std::size_t n = 1; n <= maxTape; ++n) {
      std::vector<TapeSym> tape(n, 0);
      for (;;) {
        for (std::uint32_t h = 0; h < n; ++h) {
          StoreConfig s{q, tape, h, std::vector<std::uint32_t>(m.counters, 0)};
          if (isNormalized(m, s)) out.push_back(std::move(s));
        }
        std::size_t i = 0;
        while (i < n && ++tape[i] == g) tape[i++] = 0;
        if (i == n) break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct ReachNode {
  StoreConfig s;
  bool ended;
  std::uint32_t letters;
  bool operator==(const ReachNode&) const = default;
};

struct ReachNodeHash {
  std::size_t operator()(const ReachNode& n) const {
    return StoreConfigHash()(n.s) * 31 + n.ended * 7 + n.letters;
  }
};

// Breadth-first forward closure from the seeds; calls stop(s) on each new
// configuration and halts early when it returns true.
template <class Stop>
bool forwardClosure(const Machine& m, const std::vector<StoreConfig>& seeds,
                    std::size_t inputBound, std::size_t stepBound,
                    std::size_t maxNodes, std::set<StoreConfig>* out,
                    bool* exhausted, Stop stop) {
  std::unordered_set<ReachNode, ReachNodeHash> seen;
  std::deque<std::pair<ReachNode, std::size_t>> queue;
  for (const StoreConfig& s : seeds) {
    ReachNode n{s, false, 0};
    if (seen.insert(n).second) queue.emplace_back(n, 0);
    if (out) out->insert(s);
    if (stop(s)) return true;
  }
  const Input none;
  while (!queue.empty()) {
    auto [node, depth] = queue.front();
    queue.pop_front();
    Config c = withStore(node.s, 0);
    for (std::size_t t = 0; t < m.transitions.size(); ++t) {
      const Transition& tr = m.transitions[t];
      if (tr.from != node.s.state) continue;
      ReachNode next{{}, node.ended, node.letters};
      Input w;
      if (tr.input == kEndMarker) {
        if (node.ended) continue;
        next.ended = true;
      } else if (tr.input != kLambda) {
        if (node.ended || node.letters >= inputBound) continue;
        w = {tr.input};
        ++next.letters;
      }
      Config nc;
      if (!applyTransition(m, w.empty() ? none : w, c, t, nc)) continue;
      if (depth >= stepBound) {
        *exhausted = true;
        continue;
      }
      next.s = storeOf(nc);
      if (!seen.insert(next).second) continue;
      if (seen.size() > maxNodes) {
        *exhausted = true;
        return false;
      }
      if (out) out->insert(next.s);
      if (stop(next.s)) return true;
      queue.emplace_back(std::move(next), depth + 1);
    }
  }
  return false;
}

}  // namespace

ReachResult oracleReach(const Machine& m, const std::vector<StoreConfig>& seeds,
                        std::size_t inputBound, std::size_t stepBound,
                        Direction dir, const ReachOptions& opt) {
  for (const StoreConfig& s : seeds) {
    if (s.state >= m.stateCount() || s.counters.size() != m.counters ||
        s.head >= s.tape.size())
      throw InvalidArgument("malformed seed configuration");
    for (TapeSym x : s.tape)
      if (x >= m.tapeAlphabet.size()) throw InvalidArgument("malformed seed tape");
  }
  ReachResult res;
  if (dir == Direction::Forward) {
    forwardClosure(m, seeds, inputBound, stepBound, opt.maxNodes, &res.configs,
                   &res.exhausted, [](const StoreConfig&) { return false; });
    return res;
  }
  if (seeds.empty()) return res;
  std::set<StoreConfig> targets(seeds.begin(), seeds.end());
  std::vector<StoreConfig> cands = normalizedConfigs(m, opt.tapeBound);
  std::vector<char> hit(cands.size(), 0), ex(cands.size(), 0);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threadCount())
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool e = false;
    hit[i] = forwardClosure(m, {cands[i]}, inputBound, stepBound, opt.maxNodes,
                            nullptr, &e, [&](const StoreConfig& s) {
                              return targets.count(s) > 0;
                            });
    ex[i] = e;
  }
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (hit[i]) res.configs.insert(cands[i]);
    if (ex[i] && !hit[i]) res.exhausted = true;
  }
  return res;
}

bool acceptsInput(const Machine& m, const Input& w, const SimLimits& limits) {
  std::unordered_set<Config, ConfigHash> seen;
  std::vector<std::pair<Config, std::size_t>> stack{{initialConfig(m), 0}};
  seen.insert(stack[0].first);
  while (!stack.empty()) {
    auto [c, d] = std::move(stack.back());
    stack.pop_back();
    if (isAccepting(m, w, c)) return true;
    if (d >= limits.maxSteps) continue;
    for (auto& [n, t] : step(m, w, c)) {
      if (n.tape.size() > limits.maxTape) continue;
      if (seen.insert(n).second) stack.emplace_back(std::move(n), d + 1);
    }
  }
  return false;
}

namespace {

// Whether some v in L(rgx), |v| <= bound, completes an accepting run from c.
// c has just read all of a real input. Letters of v are guessed one at a
// time; a 0-1 search keeps the shortest guess per configuration.
bool completes(const Machine& m, const Nfa& rgx, const Config& c,
               std::size_t bound, const SimLimits& limits) {
  struct Node {
    Config c;
    std::vector<StateId> set;
    bool done;
    bool operator<(const Node& o) const {
      return std::tie(c, set, done) < std::tie(o.c, o.set, o.done);
    }
  };
  auto finalIn = [&](const std::vector<StateId>& set) {
    return std::any_of(set.begin(), set.end(),
                       [&](StateId q) { return rgx.isFinal(q); });
  };
  std::map<Node, std::size_t> cost;
  std::deque<std::pair<Node, std::size_t>> todo;
  auto push = [&](Node n, std::size_t d, bool front) {
    if (n.c.tape.size() > limits.maxTape) return;
    auto it = cost.find(n);
    if (it != cost.end() && it->second <= d) return;
    cost[n] = d;
    if (front) todo.emplace_front(std::move(n), d);
    else todo.emplace_back(std::move(n), d);
  };
  Config start = c;
  start.pos = 0;
  push({start, epsilonClosure(rgx, rgx.initialStates()), false}, 0, true);
  const Input none;
  while (!todo.empty()) {
    auto [n, d] = todo.front();
    todo.pop_front();
    if (cost[n] < d) continue;
    if (n.done) {
      if (m.isFinal(n.c.state)) return true;
      for (auto& [x, t] : step(m, none, n.c)) push({x, n.set, true}, d, true);
      continue;
    }
    for (auto& [x, t] : step(m, none, n.c)) {
      if (x.pos == 0) push({x, n.set, false}, d, true);
      else if (finalIn(n.set)) push({x, n.set, true}, d, true);
    }
    if (d == bound) continue;
    for (InSym a = 0; a < static_cast<InSym>(m.inputAlphabet.size()); ++a) {
      std::vector<StateId> next = stepSet(rgx, n.set, static_cast<SymId>(a));
      if (next.empty()) continue;
      for (auto& [x, t] : step(m, Input{a}, n.c)) {
        if (x.pos != 1 || m.transitions[t].input == kEndMarker) continue;
        x.pos = 0;
        push({x, next, false}, d + 1, false);
      }
    }
  }
  return false;
}

}  // namespace

std::set<Input> oracleQuotient(const Machine& m, const Nfa& rgx,
                               std::size_t bound, const SimLimits& limits) {
  if (rgx.alphabet() != m.inputAlphabet)
    throw AlphabetMismatch("quotient automaton must be over the input alphabet");
  std::vector<Input> words = inputsUpTo(m, bound);
  std::vector<char> in(words.size(), 0);
#pragma omp parallel for schedule(dynamic, 4) num_threads(threadCount())
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Input& u = words[i];
    // Configurations that have read all of u, end marker pending.
    std::set<Config> seen{initialConfig(m)};
    std::vector<std::pair<Config, std::size_t>> stack{{initialConfig(m), 0}};
    while (!stack.empty() && !in[i]) {
      auto [c, depth] = std::move(stack.back());
      stack.pop_back();
      if (c.pos == u.size() && completes(m, rgx, c, bound, limits)) in[i] = 1;
      if (depth >= limits.maxSteps) continue;
      for (auto& [n, t] : step(m, u, c)) {
        if (n.pos > u.size() || n.tape.size() > limits.maxTape) continue;
        if (seen.insert(n).second) stack.emplace_back(std::move(n), depth + 1);
      }
    }
  }
  std::set<Input> out;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (in[i]) out.insert(words[i]);
  return out;
}

}  // namespace slt
