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

#include <algorithm>
#include <deque>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "slt/error.hpp"
#include "slt/fsm/regex.hpp"
#include "slt/machine/config.hpp"
#include "slt/oracle/oracle.hpp"
#include "slt/verify/verify.hpp"

using namespace slt;
using namespace slt::testing;

namespace {

// Writes x for every a, then stops at the end marker.
constexpr const char* kStamp = R"(machine stamp
counters 0
input-alphabet a
tape-alphabet x _
blank _
states q0 q1
initial q0
final q1
t q0 a _ -> q0 x R
t q0 $end _ -> q1 _ S
)";

// Accepts the empty input with a single stay.
constexpr const char* kStay = R"(machine stay
counters 0
input-alphabet a
tape-alphabet _
blank _
states q0 q1
initial q0
final q1
t q0 $end _ -> q1 _ S
)";

// Final state unreachable.
constexpr const char* kDead = R"(machine dead
counters 0
input-alphabet a
tape-alphabet _
blank _
states q0 q1
initial q0
final q1
t q0 a _ -> q0 _ R
)";

// Copy half of ex1 over {a} only, sharing the state q1.
constexpr const char* kEx1OnlyA = R"(machine ex1a
counters 0
input-alphabet a $
tape-alphabet a _
blank _
states p0 q1 p2 p3 p4
initial p0
final p4
t p0 a _ -> q1 a R
t q1 a _ -> q1 a R
t q1 $ _ -> p2 _ L
t p2 @ a -> p2 a L
t p2 @ _ -> p3 _ R
t p3 a a -> p3 a R
t p3 $end _ -> p4 _ S
)";

const SimLimits kLimits{400, 40};

struct Minima {
  std::size_t turns, visits, crossings;
  bool any = false;
};

Minima minima(const Machine& m, const Input& w, std::size_t steps = 60) {
  Minima r{~0ul, ~0ul, ~0ul};
  forEachAccepting(m, w, steps, [&](const AcceptedPath& p) {
    r.any = true;
    r.turns = std::min(r.turns, p.turns);
    r.visits = std::min(r.visits, p.maxVisit);
    r.crossings = std::min(r.crossings, p.maxCrossing);
  });
  return r;
}

std::size_t minimum(const Minima& x, BoundMode mode) {
  switch (mode) {
    case BoundMode::Turn:
      return x.turns;
    case BoundMode::Visit:
      return x.visits;
    case BoundMode::Crossing:
      return x.crossings;
  }
  return 0;
}

StoreConfig normalize(const Machine& m, StoreConfig s) {
  while (s.tape.size() > 1 && s.head > 0 && s.tape.front() == m.blank) {
    s.tape.erase(s.tape.begin());
    --s.head;
  }
  while (s.tape.size() > s.head + 1 && s.tape.back() == m.blank)
    s.tape.pop_back();
  return s;
}

// Normalised store configurations m can be in after reading all of x from s.
std::set<StoreConfig> afterReading(const Machine& m, const StoreConfig& s,
                                   const Input& x) {
  std::set<StoreConfig> out;
  std::set<Config> seen;
  std::deque<Config> todo{withStore(s, 0)};
  seen.insert(todo.front());
  while (!todo.empty() && seen.size() < 20000) {
    Config c = todo.front();
    todo.pop_front();
    if (c.pos >= x.size()) out.insert(normalize(m, storeOf(c)));
    for (auto& [n, t] : step(m, x, c)) {
      if (n.tape.size() > 12) continue;
      if (seen.insert(n).second) todo.push_back(n);
    }
  }
  return out;
}

bool loadedAccepts(const Machine& m, const LoadedMachine& l,
                   const StoreConfig& s, const Input& x) {
  std::vector<std::string> letters;
  for (InSym a : x) letters.push_back(m.inputAlphabet[a]);
  Input w = encodeInput(l.machine, loadedInput(m, l, s, letters));
  return acceptsInput(l.machine, w, kLimits);
}

std::set<std::vector<std::string>> wordsOf(const Nfa& a, std::size_t n) {
  std::set<std::vector<std::string>> out;
  for (const Word& w : wordsUpTo(a, n, 1'000'000)) out.insert(a.decode(w));
  return out;
}

std::set<std::vector<std::string>> truncated(const Machine& m,
                                             const std::set<StoreConfig>& s,
                                             std::size_t n) {
  std::set<std::vector<std::string>> out;
  for (const StoreConfig& c : s) {
    std::vector<std::string> t = storeTokens(m, c);
    if (t.size() <= n && isNormalized(m, c)) out.insert(t);
  }
  return out;
}

ConfigSet regexSet(const Machine& m, const std::string& rgx) {
  return compileRegex(rgx, m.storeAlphabet());
}

}  // namespace

TEST_CASE("bound filters agree with the oracle") {
  for (const char* name : {"ex1", "ex2", "ex3"}) {
    Machine m = fixture(name);
    std::vector<Input> inputs = inputsUpTo(m, 3);
    std::vector<Minima> mins;
    for (const Input& w : inputs) mins.push_back(minima(m, w));
    for (BoundMode mode : {BoundMode::Turn, BoundMode::Visit, BoundMode::Crossing}) {
      for (std::size_t k = 0; k <= 3; ++k) {
        CAPTURE(name);
        CAPTURE(boundModeName(mode));
        CAPTURE(k);
        Machine f = boundFilter(m, k, mode);
        REQUIRE(f.declaredBound);
        CHECK(f.declaredBound->mode == mode);
        if (mode != BoundMode::Turn)
          CHECK(f.declaredBound->bound == filterCrossingBound(k, mode));
        for (std::size_t i = 0; i < inputs.size(); ++i) {
          bool want = mins[i].any && minimum(mins[i], mode) <= k;
          CHECK(acceptsInput(f, inputs[i], kLimits) == want);
        }
      }
    }
  }
}

TEST_CASE("filter machines keep their declared crossing bound") {
  Machine m = fixture("ex1");
  for (BoundMode mode : {BoundMode::Turn, BoundMode::Visit, BoundMode::Crossing}) {
    Machine f = boundFilter(m, 3, mode);
    for (const Input& w : inputsUpTo(m, 3)) {
      forEachAccepting(f, w, 80, [&](const AcceptedPath& p) {
        CHECK(p.maxCrossing <= filterCrossingBound(3, mode));
      });
    }
  }
}

TEST_CASE("filter examples") {
  Machine ex1 = fixture("ex1");
  Machine f = boundFilter(ex1, 3, BoundMode::Crossing);
  for (const Input& w : inputsUpTo(ex1, 5))
    CHECK(acceptsInput(f, w, kLimits) == acceptsInput(ex1, w, kLimits));

  Machine ex3 = fixture("ex3");
  // Copying one letter already needs five crossings.
  Machine g2 = boundFilter(ex3, 2, BoundMode::Crossing);
  Machine g5 = boundFilter(ex3, 5, BoundMode::Crossing);
  for (const Input& w : inputsUpTo(ex3, 3)) {
    CHECK_FALSE(acceptsInput(g2, w, kLimits));
    CHECK(acceptsInput(g5, w, kLimits) == (w.size() == 1));
  }

  Machine stay = parseMachineText(kStay);
  CHECK(acceptsInput(boundFilter(stay, 0, BoundMode::Crossing), {}, kLimits));
  CHECK(acceptsInput(boundFilter(stay, 0, BoundMode::Turn), {}, kLimits));
}

TEST_CASE("filters are monotone in k") {
  for (const char* name : {"ex1", "ex2"}) {
    Machine m = fixture(name);
    for (BoundMode mode : {BoundMode::Turn, BoundMode::Visit, BoundMode::Crossing}) {
      for (std::size_t k = 0; k < 3; ++k) {
        Machine a = boundFilter(m, k, mode), b = boundFilter(m, k + 1, mode);
        for (const Input& w : inputsUpTo(m, 3))
          if (acceptsInput(a, w, kLimits)) CHECK(acceptsInput(b, w, kLimits));
      }
    }
  }
}

TEST_CASE("k-bounded existence") {
  Machine ex1 = fixture("ex1");
  CHECK(existsKBounded(ex1, 3, BoundMode::Crossing));
  CHECK_FALSE(existsKBounded(ex1, 0, BoundMode::Crossing));
  CHECK_FALSE(existsKBounded(ex1, 2, BoundMode::Crossing));
  CHECK(existsKBounded(ex1, 2, BoundMode::Turn));
  CHECK_FALSE(existsKBounded(ex1, 1, BoundMode::Turn));
  Machine dead = parseMachineText(kDead);
  for (BoundMode mode : {BoundMode::Turn, BoundMode::Visit, BoundMode::Crossing})
    CHECK_FALSE(existsKBounded(dead, 2, mode));
  CHECK(existsKBounded(parseMachineText(kStay), 0, BoundMode::Crossing));
}

TEST_CASE("loaded machines") {
  Machine m = fixture("ex1");
  StoreConfig s0 = storeOf(initialConfig(m));
  LoadedMachine l = loadedMachine(m, singletonConfig(m, s0));
  CHECK(l.separator == "$$");
  CHECK(l.overhead == 2);
  CHECK(loadedAccepts(m, l, s0, parseInput(m, "a")));
  CHECK(loadedAccepts(m, l, s0, {}));
  // Only the loaded configuration is accepted as a prefix.
  CHECK_FALSE(loadedAccepts(m, l, parseStoreConfig(m, "q1 a_^"), {}));

  LoadedMachine none = loadedMachine(m, emptyNfa(m.storeAlphabet()));
  CHECK_FALSE(loadedAccepts(m, none, s0, parseInput(m, "a")));
  CHECK(isEmpty(storeNfa(none.machine, 3)));

  StoreConfig s = parseStoreConfig(m, "q2 _^a");
  LoadedMachine l2 = loadedMachine(m, singletonConfig(m, s));
  for (const Input& x : inputsUpTo(m, 3)) {
    CAPTURE(renderInput(m, x));
    CHECK(loadedAccepts(m, l2, s, x) == !afterReading(m, s, x).empty());
  }
}

TEST_CASE("unloaded machines") {
  Machine m = fixture("ex1");
  StoreConfig s0 = storeOf(initialConfig(m));
  LoadedMachine u = unloadedMachine(m, singletonConfig(m, s0));
  CHECK(u.overhead == 4);
  CHECK(loadedAccepts(m, u, s0, {}));
  CHECK_FALSE(loadedAccepts(m, u, s0, parseInput(m, "a")));

  LoadedMachine none = unloadedMachine(m, emptyNfa(m.storeAlphabet()));
  CHECK_FALSE(loadedAccepts(m, none, s0, {}));

  StoreConfig target = parseStoreConfig(m, "q2 _^a");
  LoadedMachine u2 = unloadedMachine(m, singletonConfig(m, target));
  std::size_t hits = 0;
  for (const StoreConfig& s : normalizedConfigs(m, 2)) {
    for (const Input& x : inputsUpTo(m, 2)) {
      bool want = afterReading(m, s, x).count(target) > 0;
      hits += want;
      CAPTURE(toText(m, s));
      CAPTURE(renderInput(m, x));
      CHECK(loadedAccepts(m, u2, s, x) == want);
    }
  }
  CHECK(hits > 0);
}

TEST_CASE("reversed machines undo each step") {
  Machine m = fixture("ex1");
  Machine rev = reversedMachine(m);
  CHECK(rev.counters == 0);
  for (const std::string& q : m.states) CHECK(rev.stateIndex(q));
  for (const Transition& t : rev.transitions) CHECK(t.input == kLambda);
  CHECK_THROWS_AS(reversedMachine(parseMachineText(R"(machine c
counters 1
input-alphabet a
tape-alphabet _
blank _
states p
initial p
final p
c p a 1 z -> p +1
)")),
                  InvalidArgument);
}

TEST_CASE("post-star on a stamping machine") {
  Machine m = parseMachineText(kStamp);
  StoreConfig s0 = storeOf(initialConfig(m));
  ConfigSet post = postStar(m, 1, singletonConfig(m, s0));
  ReachResult want = oracleReach(m, {s0}, 6, 30, Direction::Forward);
  CHECK(wordsOf(post, 6) == truncated(m, want.configs, 6));
  CHECK(accepts(post, storeTokens(m, s0)));
  CHECK(isEmpty(postStar(m, 1, emptyNfa(m.storeAlphabet()))));
  // A fixed point.
  CHECK(equivalent(postStar(m, 1, post), post));
}

TEST_CASE("pre-star on a stamping machine") {
  Machine m = parseMachineText(kStamp);
  ConfigSet c = regexSet(m, "q1 x x _ ^");
  ConfigSet pre = preStar(m, 1, c);
  std::vector<StoreConfig> seeds{parseStoreConfig(m, "q1 xx_^")};
  ReachResult want = oracleReach(m, seeds, 6, 30, Direction::Backward);
  CHECK(wordsOf(pre, 6) == truncated(m, want.configs, 6));
  CHECK(accepts(pre, storeTokens(m, parseStoreConfig(m, "q0 _^"))));
  CHECK(accepts(pre, storeTokens(m, parseStoreConfig(m, "q0 x_^"))));
  CHECK_FALSE(accepts(pre, storeTokens(m, parseStoreConfig(m, "q1 x_^"))));
  // Words that are not configurations reach nothing.
  CHECK(isEmpty(preStar(m, 1, regexSet(m, "x q0 ^"))));
}

TEST_CASE("pre-star and post-star are dual") {
  Machine m = parseMachineText(kStamp);
  std::vector<StoreConfig> configs;
  for (const StoreConfig& s : normalizedConfigs(m, 3))
    if (storeTokens(m, s).size() <= 5) configs.push_back(s);
  REQUIRE(configs.size() >= 5);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < configs.size() && pairs < 20; i += 2) {
    ConfigSet post = postStar(m, 1, singletonConfig(m, configs[i]));
    for (std::size_t j = 1; j < configs.size() && pairs < 20; j += 3, ++pairs) {
      ConfigSet pre = preStar(m, 1, singletonConfig(m, configs[j]));
      CAPTURE(toText(m, configs[i]));
      CAPTURE(toText(m, configs[j]));
      CHECK(accepts(post, storeTokens(m, configs[j])) ==
            accepts(pre, storeTokens(m, configs[i])));
    }
  }
}

TEST_CASE("reachability examples on the copying machine") {
  Machine m = fixture("ex1");
  StoreConfig s0 = storeOf(initialConfig(m));
  ConfigSet post = postStar(m, 1, singletonConfig(m, s0));
  CHECK(accepts(post, storeTokens(m, parseStoreConfig(m, "q1 a_^"))));
  CHECK(accepts(post, storeTokens(m, s0)));
  ConfigSet pre = preStar(m, 1, singletonConfig(m, s0));
  CHECK(accepts(pre, storeTokens(m, s0)));
}

TEST_CASE("common configurations") {
  Machine ex1 = fixture("ex1");
  CommonResult self = commonConfigs(ex1, 3, ex1, 3);
  CHECK(self.answer);
  REQUIRE_FALSE(self.witness.empty());
  Nfa s = storeNfa(ex1, 3);
  CHECK(accepts(s, self.witness));
  CHECK(self.witness != storeTokens(ex1, storeOf(initialConfig(ex1))));

  Machine ex2 = fixture("ex2");
  for (std::size_t q = 0; q < ex2.stateCount(); ++q) ex2.states[q] = "p" + std::to_string(q);
  CommonResult renamed = commonConfigs(ex1, 3, ex2, 3);
  CHECK_FALSE(renamed.answer);
  CHECK(renamed.witness.empty());

  Machine a = parseMachineText(kEx1OnlyA);
  CommonResult shared = commonConfigs(ex1, 3, a, 3);
  CHECK(shared.answer);
  CHECK(shared.witness == std::vector<std::string>{"q1", "a", "_", "^"});
}

TEST_CASE("right quotient") {
  Machine m = fixture("ex1");
  Nfa plus = compileRegex("(a|b)+", m.inputAlphabet);
  Machine q = rightQuotientMachine(m, plus);
  // Guessed suffixes grow the tape freely.
  const SimLimits small{200, 8};
  CHECK(acceptsInput(q, parseInput(m, "ab$"), small));
  CHECK(acceptsInput(q, parseInput(m, "ab$a"), small));
  CHECK_FALSE(acceptsInput(q, parseInput(m, "ab"), small));
  CHECK_FALSE(acceptsInput(q, parseInput(m, "ab$ab"), small));

  Nfa lambda = compileRegex("()", m.inputAlphabet);
  Machine same = rightQuotientMachine(m, lambda);
  for (const Input& w : inputsUpTo(m, 5))
    CHECK(acceptsInput(same, w, small) == acceptsInput(m, w, small));

  Machine dead = parseMachineText(kDead);
  Machine none = rightQuotientMachine(dead, compileRegex("a*", dead.inputAlphabet));
  for (const Input& w : inputsUpTo(dead, 4)) CHECK_FALSE(acceptsInput(none, w, small));

  std::set<Input> want = oracleQuotient(m, plus, 5);
  for (const Input& w : inputsUpTo(m, 3))
    CHECK(acceptsInput(q, w, small) == (want.count(w) > 0));
}

TEST_CASE("duality on sampled configurations of the copying machine") {
  Machine m = fixture("ex1");
  StoreConfig s0 = storeOf(initialConfig(m));
  ReachResult r = oracleReach(m, {s0}, 3, 20, Direction::Forward);
  std::vector<StoreConfig> pool;
  for (const StoreConfig& s : r.configs)
    if (isNormalized(m, s) && storeTokens(m, s).size() <= 5) pool.push_back(s);
  REQUIRE(pool.size() >= 9);
  std::vector<StoreConfig> from{s0}, to;
  for (std::size_t i = 1; from.size() < 4; i += pool.size() / 4) from.push_back(pool[i]);
  for (std::size_t i = 0; to.size() < 5; i += pool.size() / 5) to.push_back(pool[i]);
  std::vector<ConfigSet> post, pre;
  for (const StoreConfig& s : from) post.push_back(postStar(m, 1, singletonConfig(m, s)));
  for (const StoreConfig& s : to) pre.push_back(preStar(m, 1, singletonConfig(m, s)));
  std::size_t reached = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    for (std::size_t j = 0; j < to.size(); ++j) {
      bool fwd = accepts(post[i], storeTokens(m, to[j]));
      reached += fwd;
      CAPTURE(toText(m, from[i]));
      CAPTURE(toText(m, to[j]));
      CHECK(fwd == accepts(pre[j], storeTokens(m, from[i])));
    }
  }
  CHECK(reached > 0);
}
