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

#ifndef SLT_FSM_NFA_HPP_
#define SLT_FSM_NFA_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace slt {

using StateId = std::uint32_t;
using SymId = std::uint32_t;
using Word = std::vector<SymId>;

inline constexpr SymId kEpsilon = std::numeric_limits<SymId>::max();

struct Arc {
  SymId sym;
  StateId to;
  bool operator==(const Arc&) const = default;
};

// One-way nondeterministic automaton over an ordered alphabet of string
// tokens. Arcs may carry kEpsilon.
class Nfa {
 public:
  Nfa() = default;
  explicit Nfa(std::vector<std::string> alphabet);

  StateId addState(bool initial = false, bool final = false);
  void addStates(std::size_t n);
  void addArc(StateId from, SymId sym, StateId to);
  void setInitial(StateId s, bool v = true) { initial_.at(s) = v; }
  void setFinal(StateId s, bool v = true) { final_.at(s) = v; }

  std::size_t stateCount() const { return arcs_.size(); }
  std::size_t arcCount() const;
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<Arc>& arcs(StateId s) const { return arcs_[s]; }
  bool isInitial(StateId s) const { return initial_[s]; }
  bool isFinal(StateId s) const { return final_[s]; }
  std::vector<StateId> initialStates() const;
  std::vector<StateId> finalStates() const;

  std::optional<SymId> symbol(const std::string& name) const;
  // Throws UnknownSymbol.
  SymId symbolOrThrow(const std::string& name) const;
  Word encode(const std::vector<std::string>& tokens) const;
  std::vector<std::string> decode(const Word& w) const;
  std::string render(const Word& w, const std::string& sep = " ") const;

  bool isDeterministic() const;

 private:
  std::vector<std::string> alphabet_;
  std::unordered_map<std::string, SymId> index_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<bool> initial_;
  std::vector<bool> final_;
};

std::vector<StateId> epsilonClosure(const Nfa& a, std::vector<StateId> set);
std::vector<StateId> stepSet(const Nfa& a, const std::vector<StateId>& set,
                             SymId sym);

bool accepts(const Nfa& a, const Word& w);
bool accepts(const Nfa& a, const std::vector<std::string>& tokens);

// Throws AlphabetMismatch unless both alphabets are identical.
void requireSameAlphabet(const Nfa& a, const Nfa& b);

Nfa intersect(const Nfa& a, const Nfa& b);
Nfa determinize(const Nfa& a);
Nfa complement(const Nfa& a);
Nfa difference(const Nfa& a, const Nfa& b);
Nfa unite(const Nfa& a, const Nfa& b);
Nfa concat(const Nfa& a, const Nfa& b);
Nfa star(const Nfa& a);
Nfa trim(const Nfa& a);

bool isEmpty(const Nfa& a);
std::optional<Word> shortestWord(const Nfa& a);
bool equivalent(const Nfa& a, const Nfa& b);
// Shortest word in the symmetric difference, shortlex-least among those.
std::optional<Word> separatingWord(const Nfa& a, const Nfa& b);

Nfa leftQuotientByWord(const Nfa& a, const Word& w);
Nfa rightQuotientByRegular(const Nfa& a, const Nfa& r);

// Keeps only arcs whose symbol is listed, and reindexes to that order.
Nfa restrictAlphabet(const Nfa& a, const std::vector<std::string>& keep);
// Relabels onto a superset alphabet. Throws AlphabetMismatch if a symbol of
// a is missing from the target.
Nfa widenAlphabet(const Nfa& a, const std::vector<std::string>& target);

// Accepted words of length at most maxLen, shortlex order.
std::vector<Word> wordsUpTo(const Nfa& a, std::size_t maxLen,
                            std::size_t cap = std::numeric_limits<std::size_t>::max());

Nfa singletonNfa(const std::vector<std::string>& alphabet, const Word& w);
Nfa universalNfa(const std::vector<std::string>& alphabet);
Nfa emptyNfa(const std::vector<std::string>& alphabet);

std::string toText(const Nfa& a);
Nfa parseNfa(std::istream& in);
Nfa parseNfaText(const std::string& text);
Nfa loadNfa(const std::string& path);
void saveNfa(const Nfa& a, const std::string& path);
std::string toDot(const Nfa& a);

// Splits on whitespace, then greedily tokenizes each chunk by longest match
// against the alphabet.
std::vector<std::string> tokenize(const std::vector<std::string>& alphabet,
                                  const std::string& text);

}  // namespace slt

#endif  // SLT_FSM_NFA_HPP_
