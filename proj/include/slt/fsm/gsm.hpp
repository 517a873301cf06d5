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

#ifndef SLT_FSM_GSM_HPP_
#define SLT_FSM_GSM_HPP_

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "slt/fsm/nfa.hpp"

namespace slt {

struct GsmMove {
  StateId to;
  std::vector<std::string> output;
};

// A finite-state transducer whose input alphabet may be too large to list;
// transitions are given by a step function over input tokens.
class Gsm {
 public:
  using Step = std::function<std::vector<GsmMove>(StateId, const std::string&)>;
  using Accepts = std::function<bool(const std::string&)>;

  Gsm(std::size_t stateCount, StateId initial, std::vector<bool> finals,
      std::vector<std::string> outputAlphabet, Step step, Accepts inputOk);

  // Builds a gsm from an explicit table over a listed input alphabet.
  static Gsm tabular(std::size_t stateCount, StateId initial,
                     std::vector<bool> finals,
                     std::vector<std::string> inputAlphabet,
                     std::vector<std::string> outputAlphabet,
                     std::vector<std::tuple<StateId, std::string, StateId,
                                            std::vector<std::string>>> table);

  static Gsm identity(const std::vector<std::string>& alphabet);

  std::size_t stateCount() const { return stateCount_; }
  StateId initial() const { return initial_; }
  bool isFinal(StateId s) const { return finals_.at(s); }
  const std::vector<std::string>& outputAlphabet() const { return output_; }
  std::vector<GsmMove> step(StateId s, const std::string& in) const {
    return step_(s, in);
  }
  bool acceptsInput(const std::string& in) const { return inputOk_(in); }

 private:
  std::size_t stateCount_;
  StateId initial_;
  std::vector<bool> finals_;
  std::vector<std::string> output_;
  Step step_;
  Accepts inputOk_;
};

// Image of L(a) under g. Throws AlphabetMismatch if g rejects a symbol of
// a's alphabet or emits a token outside its declared output alphabet.
Nfa gsmImage(const Nfa& a, const Gsm& g);

}  // namespace slt

#endif  // SLT_FSM_GSM_HPP_
