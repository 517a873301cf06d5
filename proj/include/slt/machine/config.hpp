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

#ifndef SLT_MACHINE_CONFIG_HPP_
#define SLT_MACHINE_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slt/machine/machine.hpp"

namespace slt {

using Input = std::vector<InSym>;

// Runtime configuration. The worktape is tape[0..] with the head on
// tape[head]; the remaining input is input[pos..] followed by the
// end-marker while pos <= |input|, and empty once pos == |input| + 1.
struct Config {
  MState state = 0;
  std::uint32_t pos = 0;
  std::vector<TapeSym> tape;
  std::uint32_t head = 0;
  std::vector<std::uint32_t> counters;

  bool operator==(const Config&) const = default;
  auto operator<=>(const Config&) const = default;
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const;
};

struct StoreConfig {
  MState state = 0;
  std::vector<TapeSym> tape;
  std::uint32_t head = 0;
  std::vector<std::uint32_t> counters;

  bool operator==(const StoreConfig&) const = default;
  auto operator<=>(const StoreConfig&) const = default;
};

struct StoreConfigHash {
  std::size_t operator()(const StoreConfig& c) const;
};

Config initialConfig(const Machine& m);
StoreConfig storeOf(const Config& c);
// Config with the given store part and remaining input input[pos..].
Config withStore(const StoreConfig& s, std::uint32_t pos);
bool isAccepting(const Machine& m, const Input& w, const Config& c);

// Successors of c under each enabled transition, in transition order.
std::vector<std::pair<Config, std::size_t>> step(const Machine& m,
                                                 const Input& w,
                                                 const Config& c);
// Applies one transition; false if it is not enabled.
bool applyTransition(const Machine& m, const Input& w, const Config& c,
                     std::size_t transition, Config& out);

Input encodeInput(const Machine& m, const std::vector<std::string>& tokens);
// Whitespace/greedy tokenization of an input word against Σ.
Input parseInput(const Machine& m, const std::string& text);
std::string renderInput(const Machine& m, const Input& w);

// "q2 _^a" plus counter values when the machine has counters.
std::string toText(const Machine& m, const StoreConfig& s);
StoreConfig parseStoreConfig(const Machine& m, const std::string& text);

// Token form over m.storeAlphabet().
std::vector<std::string> storeTokens(const Machine& m, const StoreConfig& s);
StoreConfig storeFromTokens(const Machine& m,
                            const std::vector<std::string>& tokens);

}  // namespace slt

#endif  // SLT_MACHINE_CONFIG_HPP_
