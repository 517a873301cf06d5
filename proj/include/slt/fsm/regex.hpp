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

#ifndef SLT_FSM_REGEX_HPP_
#define SLT_FSM_REGEX_HPP_

#include <string>
#include <vector>

#include "slt/fsm/nfa.hpp"

namespace slt {

// Compiles a token regex over the given alphabet.
//
//   alt  := cat ('|' cat)*
//   cat  := post*
//   post := atom ('*' | '+' | '?')*
//   atom := '(' alt ')' | '[' tokens ']' | '[^' tokens ']' | token
//
// Outside brackets, runs of non-meta characters are split into tokens by
// longest match against the alphabet. A leading "^" inside brackets
// negates the set. '()' denotes the empty word. A
// backslash makes the next character literal.
Nfa compileRegex(const std::string& pattern,
                 const std::vector<std::string>& alphabet);

}  // namespace slt

#endif  // SLT_FSM_REGEX_HPP_
