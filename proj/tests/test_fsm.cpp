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

#include <random>
#include <sstream>

#include "doctest.h"
#include "slt/error.hpp"
#include "slt/fsm/gsm.hpp"
#include "slt/fsm/nfa.hpp"
#include "slt/fsm/regex.hpp"
#include "slt/fsm/two_nfa.hpp"

using namespace slt;

namespace {

const std::vector<std::string> kAB{"a", "b"};

Nfa randomNfa(std::mt19937& rng, std::size_t states,
              const std::vector<std::string>& alphabet) {
  Nfa n(alphabet);
  n.addStates(states);
  std::uniform_int_distribution<int> coin(0, 3);
  for (StateId s = 0; s < states; ++s) {
    n.setInitial(s, s == 0 || coin(rng) == 0);
    n.setFinal(s, coin(rng) == 0);
    for (SymId c = 0; c <= alphabet.size(); ++c) {
      for (StateId t = 0; t < states; ++t) {
        if (coin(rng) == 0)
          n.addArc(s, c == alphabet.size() ? kEpsilon : c, t);
      }
    }
  }
  return n;
}

std::vector<Word> allWords(std::size_t k, std::size_t maxLen) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == maxLen) continue;
    for (SymId c = 0; c < k; ++c) {
      Word w = out[i];
      w.push_back(c);
      out.push_back(w);
    }
  }
  return out;
}

ExplicitTwoNfa randomTwoNfa(std::mt19937& rng) {
  std::uniform_int_distribution<int> nstates(1, 4);
  std::size_t n = nstates(rng);
  std::uniform_int_distribution<int> coin(0, 2);
  std::vector<bool> finals(n);
  for (std::size_t i = 0; i < n; ++i) finals[i] = coin(rng) == 0;
  ExplicitTwoNfa m(kAB, n, 0, finals);
  std::uniform_int_distribution<TwoState> st(0, n - 1);
  std::uniform_int_distribution<int> dir(-1, 1);
  std::uniform_int_distribution<int> count(0, 2);
  for (TwoState s = 0; s < n; ++s) {
    for (SymId c : {SymId(0), SymId(1), SymId(ExplicitTwoNfa::kLeft),
                    SymId(ExplicitTwoNfa::kRight)}) {
      int k = count(rng);
      for (int i = 0; i < k; ++i) m.add(s, c, st(rng), static_cast<Dir>(dir(rng)));
    }
  }
  return m;
}

// Accepts words over {a,b} whose first and last symbols agree.
ExplicitTwoNfa firstEqualsLast() {
  std::vector<bool> finals(7, false);
  finals[6] = true;
  ExplicitTwoNfa m(kAB, 7, 0, finals);
  m.add(0, ExplicitTwoNfa::kLeft, 1, Dir::R);
  for (SymId x : {0u, 1u}) {
    m.add(1, x, 2 + x, Dir::R);
    for (SymId y : {0u, 1u}) m.add(2 + x, y, 2 + x, Dir::R);
    m.add(2 + x, ExplicitTwoNfa::kRight, 4 + x, Dir::L);
    m.add(4 + x, x, 6, Dir::R);
  }
  m.add(6, ExplicitTwoNfa::kRight, 6, Dir::R);
  return m;
}

}  // namespace

TEST_CASE("nfa text round trip") {
  Nfa n = compileRegex("a (a|b)* b", kAB);
  Nfa back = parseNfaText(toText(n));
  CHECK(toText(back) == toText(n));
  CHECK(equivalent(back, n));
  CHECK_THROWS_AS(parseNfaText("nfa 1\nalphabet a\nt 0 c 0\n"), ParseError);
  CHECK_THROWS_AS(parseNfaText("nfa 1\nalphabet a\nt 0 a 3\n"), ParseError);
}

TEST_CASE("regex and membership") {
  Nfa n = compileRegex("a* b+ ()", kAB);
  CHECK(accepts(n, std::vector<std::string>{"b"}));
  CHECK(accepts(n, std::vector<std::string>{"a", "a", "b", "b"}));
  CHECK_FALSE(accepts(n, std::vector<std::string>{"a"}));
  Nfa neg = compileRegex("[^a]", kAB);
  CHECK(accepts(neg, std::vector<std::string>{"b"}));
  CHECK_FALSE(accepts(neg, std::vector<std::string>{"a"}));
  std::vector<std::string> store{"q0", "q1", "_", "a", "^"};
  Nfa s = compileRegex("q1 a+ _^", store);
  CHECK(accepts(s, tokenize(store, "q1 aa_^")));
}

TEST_CASE("intersect") {
  Nfa as = compileRegex("a*", kAB);
  Nfa asbs = compileRegex("a* b*", kAB);
  CHECK(equivalent(intersect(as, asbs), as));
  CHECK(isEmpty(intersect(as, emptyNfa(kAB))));
  Nfa other = compileRegex("a*", {"a"});
  CHECK_THROWS_AS(intersect(as, other), AlphabetMismatch);
}

TEST_CASE("determinize") {
  Nfa ends;
  {
    Nfa n(kAB);
    n.addStates(2);
    n.setInitial(0);
    n.setFinal(1);
    n.addArc(0, 0, 0);
    n.addArc(0, 1, 0);
    n.addArc(0, 0, 1);
    ends = n;
  }
  Nfa d = determinize(ends);
  CHECK(d.isDeterministic());
  CHECK(trim(d).stateCount() == 2);
  CHECK(equivalent(d, ends));
  std::mt19937 rng(7);
  for (int seed = 0; seed < 30; ++seed) {
    Nfa n = randomNfa(rng, 4, kAB);
    Nfa dn = determinize(n);
    CHECK(dn.isDeterministic());
    for (const Word& w : allWords(2, 8)) CHECK(accepts(dn, w) == accepts(n, w));
  }
}

TEST_CASE("emptiness and equivalence") {
  Nfa n(kAB);
  n.addState(true, false);
  CHECK(isEmpty(n));
  std::mt19937 rng(11);
  for (int i = 0; i < 10; ++i) {
    Nfa r = randomNfa(rng, 3, kAB);
    CHECK(isEmpty(intersect(r, complement(r))));
    CHECK(equivalent(r, r));
  }
  Nfa star = compileRegex("a*", kAB);
  Nfa plus = compileRegex("a+", kAB);
  CHECK_FALSE(equivalent(star, plus));
  auto sep = separatingWord(star, plus);
  REQUIRE(sep.has_value());
  CHECK(sep->empty());
}

TEST_CASE("product properties on random automata") {
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    Nfa a = randomNfa(rng, 3, kAB);
    Nfa b = randomNfa(rng, 3, kAB);
    Nfa ab = intersect(a, b);
    Nfa u = unite(a, b);
    Nfa diff = difference(a, b);
    for (const Word& w : allWords(2, 6)) {
      CHECK(accepts(ab, w) == (accepts(a, w) && accepts(b, w)));
      CHECK(accepts(u, w) == (accepts(a, w) || accepts(b, w)));
      CHECK(accepts(diff, w) == (accepts(a, w) && !accepts(b, w)));
    }
  }
}

TEST_CASE("quotients") {
  Nfa abs = compileRegex("a b*", kAB);
  CHECK(equivalent(leftQuotientByWord(abs, {}), abs));
  CHECK(isEmpty(leftQuotientByWord(abs, {1})));
  CHECK_THROWS_AS(leftQuotientByWord(abs, {5}), UnknownSymbol);
  Nfa asbs = compileRegex("a* b*", kAB);
  CHECK(equivalent(rightQuotientByRegular(asbs, compileRegex("b+", kAB)), asbs));
  CHECK(equivalent(rightQuotientByRegular(asbs, compileRegex("()", kAB)), asbs));

  std::mt19937 rng(5);
  auto words = allWords(2, 6);
  for (int i = 0; i < 15; ++i) {
    Nfa a = randomNfa(rng, 3, kAB);
    Nfa r = randomNfa(rng, 2, kAB);
    Nfa q = rightQuotientByRegular(a, r);
    for (const Word& u : words) {
      bool brute = false;
      for (const Word& v : words) {
        if (!accepts(r, v)) continue;
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        if (accepts(a, uv)) {
          brute = true;
          break;
        }
      }
      // Witness suffixes are bounded, so brute force can only miss members.
      if (brute) CHECK(accepts(q, u));
    }
  }
}

TEST_CASE("gsm image") {
  Nfa n = compileRegex("a (a|b)* b", kAB);
  CHECK(equivalent(gsmImage(n, Gsm::identity(kAB)), n));
  Gsm erase = Gsm::tabular(1, 0, {true}, kAB, kAB,
                           {{0, "a", 0, {}}, {0, "b", 0, {}}});
  Nfa img = gsmImage(n, erase);
  CHECK(accepts(img, Word{}));
  CHECK_FALSE(accepts(img, Word{0}));
  Gsm bad = Gsm::tabular(1, 0, {true}, {"a"}, kAB, {});
  CHECK_THROWS_AS(gsmImage(n, bad), AlphabetMismatch);
}

TEST_CASE("words up to") {
  Nfa n = compileRegex("a b* | b", kAB);
  auto ws = wordsUpTo(n, 3);
  std::vector<std::string> got;
  for (auto& w : ws) got.push_back(n.render(w, ""));
  CHECK(got == std::vector<std::string>{"a", "b", "ab", "abb"});
}

TEST_CASE("two-way membership and conversion") {
  ExplicitTwoNfa fl = firstEqualsLast();
  Nfa expect = compileRegex("a | b | a (a|b)* a | b (a|b)* b", kAB);
  for (const Word& w : allWords(2, 6)) {
    CHECK(twoNfaMembership(fl, w) == accepts(expect, w));
  }
  Nfa conv = widenAlphabet(twoNfaToNfa(fl), kAB);
  CHECK(equivalent(conv, expect));

  // Never moving left gives back the embedded one-way automaton.
  ExplicitTwoNfa oneWay(kAB, 2, 0, {false, true});
  oneWay.add(0, ExplicitTwoNfa::kLeft, 0, Dir::R);
  oneWay.add(0, 0, 0, Dir::R);
  oneWay.add(0, 1, 1, Dir::R);
  oneWay.add(1, 1, 1, Dir::R);
  oneWay.add(1, ExplicitTwoNfa::kRight, 1, Dir::R);
  CHECK(equivalent(widenAlphabet(twoNfaToNfa(oneWay), kAB),
                   compileRegex("a* b+", kAB)));

  // Bounces forever and has no final states.
  ExplicitTwoNfa loop(kAB, 2, 0, {false, false});
  loop.add(0, ExplicitTwoNfa::kLeft, 0, Dir::R);
  for (SymId c : {0u, 1u}) {
    loop.add(0, c, 0, Dir::R);
    loop.add(1, c, 1, Dir::L);
  }
  loop.add(0, ExplicitTwoNfa::kRight, 1, Dir::L);
  loop.add(1, ExplicitTwoNfa::kLeft, 0, Dir::R);
  for (const Word& w : allWords(2, 4)) CHECK_FALSE(twoNfaMembership(loop, w));
  CHECK(isEmpty(twoNfaToNfa(loop)));
}

TEST_CASE("random two-way conversions agree with membership") {
  std::mt19937 rng(2024);
  auto words = allWords(2, 6);
  for (int i = 0; i < 50; ++i) {
    ExplicitTwoNfa m = randomTwoNfa(rng);
    Nfa serial = twoNfaToNfa(m, {.serial = true});
    Nfa par = twoNfaToNfa(m);
    CHECK(toText(serial) == toText(par));
    Nfa conv = widenAlphabet(serial, kAB);
    for (const Word& w : words) CHECK(accepts(conv, w) == twoNfaMembership(m, w));
  }
}
