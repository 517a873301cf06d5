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

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "history_samples.hpp"
#include "published.hpp"
#include "slt/error.hpp"
#include "slt/fsm/regex.hpp"
#include "slt/machine/computation.hpp"
#include "slt/oracle/oracle.hpp"
#include "slt/store/history.hpp"

using namespace slt;
using namespace slt::testing;

namespace {

// The worked 13-step computation, snapshot after ten steps.
struct Figure1 {
  Machine m = fixture("figure1");
  Computation c = simulate(m, {}, {}).accepting.at(0);
  HistoryWord w = encodeHistory(m, c, 10, 4);
};

HistoryNode node(const Machine& m, const char* sym, Dir sd, int st, Dir pd,
                 int pt) {
  HistoryNode n;
  n.sym = *m.tapeIndex(sym);
  n.succDir = sd;
  n.succTrack = static_cast<std::uint8_t>(st);
  n.predDir = pd;
  n.predTrack = static_cast<std::uint8_t>(pt);
  return n;
}

std::vector<LinkEvent> asLeft(const ColumnSymbol& prev) {
  std::vector<LinkEvent> out;
  for (const LinkEvent& e : sideEvents(prev, Dir::R)) {
    out.push_back({!e.out, e.far, e.own});
  }
  return out;
}

Computation findRun(const Machine& m, const std::string& input) {
  Input w = parseInput(m, input);
  return simulate(m, w, {}).accepting.at(0);
}

}  // namespace

TEST_CASE("figure one columns") {
  Figure1 f;
  const Machine& m = f.m;
  REQUIRE(f.w.size() == 6);
  CHECK(f.w[0] == ColumnSymbol::stateCell(*m.stateIndex("s10")));

  ColumnSymbol c1 = ColumnSymbol::tapeCell(*m.tapeIndex("x8"), false);
  c1.tracks = {node(m, "x0", Dir::R, 1, Dir::S, 0),
               node(m, "x8", Dir::R, 4, Dir::R, 3)};
  ColumnSymbol c2 = ColumnSymbol::tapeCell(*m.tapeIndex("x9"), false);
  c2.tracks = {node(m, "x1", Dir::R, 1, Dir::L, 1),
               node(m, "x5", Dir::R, 3, Dir::R, 2),
               node(m, "x7", Dir::L, 2, Dir::R, 3),
               node(m, "x9", Dir::R, 4, Dir::L, 2)};
  CHECK(f.w[1] == c1);
  CHECK(f.w[2] == c2);
  CHECK(f.w[3].marked);
  CHECK(f.w[3].tracks.back().marked);
  CHECK(f.w[5].kind == Track0::Pad);

  ColumnSource src(m, 4, 6);
  for (std::size_t i = 0; i < 4; ++i) CHECK(src.contains(f.w[i]));
  for (std::size_t i = 1; i < 4; ++i) {
    ColumnPattern p;
    p.left = asLeft(f.w[i - 1]);
    bool found = false;
    src.enumerate(p, [&](const ColumnSymbol& c) { found |= c == f.w[i]; });
    CHECK_MESSAGE(found, src.name(f.w[i]));
  }
  CHECK(historyAccepts(HistoryTwoNfa(m, 4, 6), f.w));
  CHECK(extract(m, f.w) ==
        std::vector<std::string>{"s10", "x8", "x9", "x6", "^", "x3"});
}

TEST_CASE("column names round trip") {
  Figure1 f;
  ColumnSource src(f.m, 4, 6);
  for (const ColumnSymbol& c : f.w) CHECK(src.parse(src.name(c)) == c);
  CHECK(parseHistoryText(src, historyText(src, f.w)) == f.w);
  CHECK(src.name(f.w[2]) == "x9|x1:>1:<1|x5:>3:>2|x7:<2:>3|x9:>4:<2");
  CHECK_THROWS_AS(src.parse("x9|x1:>1"), ParseError);
  CHECK_THROWS_AS(src.parse("[nope]"), ParseError);
}

TEST_CASE("single-column checks") {
  Machine m = fixture("ex1");
  ColumnSource src(m, 3, 1);
  CHECK_THROWS_AS(ColumnSource(m, 0, 0), InvalidArgument);

  CHECK(src.contains(ColumnSymbol::stateCell(m.initial)));
  bool stateSeen = false;
  src.enumerate({}, [&](const ColumnSymbol& c) {
    stateSeen |= c == ColumnSymbol::stateCell(m.initial);
  });
  CHECK(stateSeen);

  // Track 2 used after an unused track 1.
  ColumnSymbol gap = ColumnSymbol::tapeCell(m.blank, true);
  HistoryNode unused;
  unused.used = false;
  HistoryNode end = node(m, "_", Dir::S, 0, Dir::S, 0);
  end.marked = true;
  gap.tracks = {unused, end};
  CHECK_FALSE(src.contains(gap));
  gap.tracks = {end};
  CHECK(src.contains(gap));

  // Unmarked track 0 must show the last unmarked write.
  ColumnSymbol stale = ColumnSymbol::tapeCell(*m.tapeIndex("b"), false);
  HistoryNode wrote = node(m, "a", Dir::R, 1, Dir::S, 0);
  stale.tracks = {wrote};
  CHECK_FALSE(src.contains(stale));
  stale.value = *m.tapeIndex("a");
  CHECK(src.contains(stale));

  // Every enumerated column is contained, and patterns narrow the set.
  std::size_t all = 0, narrowed = 0;
  src.enumerate({}, [&](const ColumnSymbol& c) {
    CHECK(src.contains(c));
    ++all;
  });
  ColumnPattern p;
  p.tracks.push_back({.track = 1, .succDir = Dir::R, .succTrack = 1});
  src.enumerate(p, [&](const ColumnSymbol& c) {
    REQUIRE_FALSE(c.tracks.empty());
    CHECK(c.tracks[0].succDir == Dir::R);
    CHECK(c.tracks[0].succTrack == 1);
    ++narrowed;
  });
  CHECK(narrowed > 0);
  CHECK(narrowed < all);
}

TEST_CASE("encoding at the initial configuration") {
  Machine m = fixture("ex1");
  Computation c = findRun(m, "a$a");
  HistoryWord w = encodeHistory(m, c, 0, 7);
  REQUIRE(w.size() >= 3);
  CHECK(w[0] == ColumnSymbol::stateCell(m.initial));
  // The run visits the cell left of the start, which is padding here.
  CHECK(w[1].kind == Track0::Pad);
  CHECK(w[2].kind == Track0::Tape);
  CHECK(w[2].value == m.blank);
  CHECK(w[2].marked);
  CHECK(extract(m, w) == std::vector<std::string>{"q0", "_", "^"});
  CHECK_THROWS_AS(encodeHistory(m, c, c.configs.size(), 7), InvalidArgument);
  CHECK_THROWS_AS(encodeHistory(m, c, 0, 1), SojournOverflow);
}

TEST_CASE("extraction of a snapshot") {
  Machine m = fixture("ex1");
  Computation c = findRun(m, "a$a");
  StoreConfig target = parseStoreConfig(m, "q2 _^a");
  std::size_t j = 0;
  while (j < c.configs.size() && storeOf(c.configs[j]) != target) ++j;
  REQUIRE(j < c.configs.size());
  HistoryWord w = encodeHistory(m, c, j, 7);
  CHECK(extract(m, w) == storeTokens(m, target));
  CHECK(historyAccepts(HistoryTwoNfa(m, 7, 3), w));

  // The gsm agrees with the direct extraction.
  ColumnSource src(m, 7, 3);
  std::vector<std::string> names;
  for (const ColumnSymbol& s : w) names.push_back(src.name(s));
  std::vector<std::string> alphabet = names;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  Nfa one = singletonNfa(alphabet, Nfa(alphabet).encode(names));
  Nfa img = gsmImage(one, extractionGsm(m));
  CHECK(accepts(img, storeTokens(m, target)));
  CHECK(wordsUpTo(img, 10).size() == 1);

  // Pad columns produce nothing; a marked first cell puts the head second.
  HistoryWord pads = {ColumnSymbol::stateCell(*m.stateIndex("q1")),
                      ColumnSymbol::tapeCell(*m.tapeIndex("a"), true),
                      ColumnSymbol::pad(), ColumnSymbol::pad()};
  CHECK(extract(m, pads) == std::vector<std::string>{"q1", "a", "^"});
}

TEST_CASE("history round trips") {
  for (const char* name : {"ex1", "ex2", "ex4"}) {
    CAPTURE(name);
    Machine m = fixture(name);
    auto samples = sampleHistories(m, 5, 200, 40, 7, 17);
    REQUIRE(samples.size() >= 20);
    for (const HistorySample& s : samples) {
      std::size_t r = std::max<std::size_t>(s.crossings, 1);
      std::size_t k = std::max(s.sojourns, 2 * r + 1);
      HistoryWord w = encodeHistory(m, s.computation, s.index, k);
      HistoryTwoNfa h(m, k, r);
      CHECK(historyAccepts(h, w));
      CHECK(extract(m, w) ==
            storeTokens(m, storeOf(s.computation.configs[s.index])));
      if (r > 1) {
        HistoryTwoNfa tight(m, k, r - 1);
        CHECK_FALSE(historyAccepts(tight, w));
      }
    }
  }
}

TEST_CASE("corrupted histories are rejected") {
  Machine m = fixture("ex1");
  const std::size_t k = 7;
  HistoryTwoNfa h(m, k, 3);
  ColumnSource src(m, k, 3);
  std::set<std::string> genuine = allHistoryTexts(m, src, 4, 200);
  auto samples = sampleHistories(m, 3, 200, 30, k, 5);
  std::mt19937 rng(11);
  std::size_t rejected = 0, trials = 0;
  for (const HistorySample& s : samples) {
    HistoryWord w = encodeHistory(m, s.computation, s.index, k);
    for (int i = 0; i < 5; ++i) {
      HistoryWord bad = mutateLink(w, k, rng);
      ++trials;
      if (!historyAccepts(h, bad)) {
        ++rejected;
      } else {
        CHECK(genuine.count(historyText(src, bad)) > 0);
      }
    }
    // A second marked cell.
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i].kind != Track0::Tape || w[i].marked) continue;
      HistoryWord two = w;
      two[i].marked = true;
      CHECK_FALSE(historyAccepts(h, two));
      break;
    }
    // A column dropped.
    if (w.size() > 2) {
      HistoryWord shorter = w;
      shorter.erase(shorter.begin() + 1);
      if (historyAccepts(h, shorter)) {
        CHECK(genuine.count(historyText(src, shorter)) > 0);
      }
    }
  }
  CHECK(rejected * 100 >= trials * 95);
}

TEST_CASE("linked lists with cycles are rejected") {
  Machine m = fixture("ex1");
  const std::size_t k = 3;
  HistoryTwoNfa h(m, k, 1);
  const ColumnSource& src = h.source();
  std::mt19937 rng(3);
  std::size_t cycles = 0;
  for (int trial = 0; trial < 400 && cycles < 40; ++trial) {
    HistoryWord w = {ColumnSymbol::stateCell(
        static_cast<MState>(rng() % m.stateCount()))};
    bool closed = false;
    while (w.size() < 6 && !closed) {
      ColumnPattern p;
      p.left = w.size() == 1 ? std::vector<LinkEvent>{} : asLeft(w.back());
      p.track0 = kAllowTape | kAllowMarked | kAllowBlankEdge | kAllowPad;
      std::vector<ColumnSymbol> options;
      src.enumerate(p, [&](const ColumnSymbol& c) { options.push_back(c); });
      if (options.empty()) break;
      w.push_back(options[rng() % options.size()]);
      closed = w.size() > 2 && sideEvents(w.back(), Dir::R).empty();
    }
    if (!closed || !hasCycle(w)) continue;
    ++cycles;
    CHECK_MESSAGE(!historyAccepts(h, w), historyText(src, w));
  }
  CHECK(cycles >= 10);
}

TEST_CASE("store automaton for example one") {
  Machine m = fixture("ex1");
  Nfa got = storeNfa(m, 3);
  Nfa pub = compileRegex(kEx1Store, m.storeAlphabet());
  CHECK(equivalent(got, pub));
  CHECK(accepts(got, storeTokens(m, parseStoreConfig(m, "q2 _^a"))));
  CHECK_FALSE(accepts(got, storeTokens(m, parseStoreConfig(m, "q4 _^"))));
  CHECK(equivalent(got, loadNfa(fixturePath("ex1-store.nfa"))));
}

TEST_CASE("store automaton for example two") {
  Machine m = fixture("ex2");
  Nfa got = storeNfa(m, 3);
  CHECK(equivalent(got, compileRegex(kEx2Store, m.storeAlphabet())));
  CHECK(equivalent(got, loadNfa(fixturePath("ex2-store.nfa"))));
}

TEST_CASE("serial and parallel constructions agree") {
  Machine m = fixture("ex2");
  StoreNfaOptions serial;
  serial.conversion.serial = true;
  StoreNfaOptions parallel;
  parallel.conversion.threads = 4;
  CHECK(toText(storeNfa(m, 3, serial)) == toText(storeNfa(m, 3, parallel)));
}

TEST_CASE("store automaton soundness against the oracle") {
  for (auto [name, r] : {std::pair{"ex1", 3}, {"ex2", 3}, {"ex4", 4}}) {
    CAPTURE(name);
    Machine m = fixture(name);
    Nfa got = storeNfa(m, r);
    OracleReport rep = enumerateStore(m, 4, 300);
    std::size_t checked = 0;
    for (const auto& [s, e] : rep.entries) {
      if (e.minCrossing > static_cast<std::size_t>(r)) continue;
      ++checked;
      CHECK_MESSAGE(accepts(got, storeTokens(m, s)), toText(m, s));
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("store automaton errors and trivial cases") {
  Machine m = fixture("ex1");
  CHECK_THROWS_AS(storeNfa(m, 0), InvalidArgument);
  Machine dead = parseMachineText(
      "machine dead\ncounters 0\ninput-alphabet a\ntape-alphabet _\nblank _\n"
      "states p f\ninitial p\nfinal f\nt p a _ -> p _ R\n");
  for (std::size_t r : {1, 2}) CHECK(isEmpty(storeNfa(dead, r)));
  Machine counted = parseMachineText(
      "machine c\ncounters 1\ninput-alphabet a\ntape-alphabet _\nblank _\n"
      "states p\ninitial p\nfinal p\nc p a 1 z -> p +1\n");
  CHECK_THROWS_AS(storeNfa(counted, 1), InvalidArgument);
}
