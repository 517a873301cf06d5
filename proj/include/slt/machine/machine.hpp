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

#ifndef SLT_MACHINE_MACHINE_HPP_
#define SLT_MACHINE_MACHINE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace slt {

using MState = std::uint32_t;
using TapeSym = std::uint8_t;
using InSym = std::int32_t;

inline constexpr InSym kLambda = -1;
inline constexpr InSym kEndMarker = -2;

enum class Move : std::int8_t { L = -1, S = 0, R = 1 };
enum class BoundMode { Turn, Visit, Crossing };

const char* boundModeName(BoundMode m);
BoundMode parseBoundMode(const std::string& s);

// counter == 0 selects the worktape (read/write/move); counter i >= 1
// selects counter i (zero/delta).
struct Transition {
  MState from = 0;
  InSym input = kLambda;
  std::uint32_t counter = 0;
  TapeSym read = 0;
  TapeSym write = 0;
  Move move = Move::S;
  bool nonzero = false;
  int delta = 0;
  MState to = 0;

  bool worktape() const { return counter == 0; }
  bool operator==(const Transition&) const = default;
};

struct DeclaredBound {
  BoundMode mode;
  std::size_t bound;
  bool operator==(const DeclaredBound&) const = default;
};

struct Machine {
  std::string name = "M";
  std::vector<std::string> states;
  std::vector<std::string> inputAlphabet;
  std::vector<std::string> tapeAlphabet;
  TapeSym blank = 0;
  std::uint32_t counters = 0;
  std::vector<Transition> transitions;
  MState initial = 0;
  std::vector<bool> final;
  std::optional<DeclaredBound> declaredBound;

  std::size_t stateCount() const { return states.size(); }
  bool isFinal(MState q) const { return final.at(q); }

  std::optional<MState> stateIndex(const std::string& s) const;
  std::optional<InSym> inputIndex(const std::string& s) const;
  std::optional<TapeSym> tapeIndex(const std::string& s) const;

  MState addState(const std::string& name, bool isFinal = false);

  // Store-configuration alphabet: states, tape symbols, "^", C1..Ct.
  std::vector<std::string> storeAlphabet() const;

  // Throws InvalidArgument on a broken invariant.
  void validate() const;
};

inline const std::string kHeadToken = "^";

bool isDeterministic(const Machine& m);

Machine parseMachine(std::istream& in);
Machine parseMachineText(const std::string& text);
Machine loadMachine(const std::string& path);
std::string serializeMachine(const Machine& m);

// Tape symbols some transition can write, plus the blank.
std::vector<bool> writableSymbols(const Machine& m);

}  // namespace slt

#endif  // SLT_MACHINE_MACHINE_HPP_
