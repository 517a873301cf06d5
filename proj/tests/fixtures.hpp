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

#ifndef SLT_TESTS_FIXTURES_HPP_
#define SLT_TESTS_FIXTURES_HPP_

#include <string>

#include "slt/machine/machine.hpp"

namespace slt::testing {

inline std::string fixturePath(const std::string& name) {
  return std::string(SLT_DATA_DIR) + "/fixtures/" + name;
}

inline Machine fixture(const std::string& name) {
  return loadMachine(fixturePath(name + ".ntm"));
}

}  // namespace slt::testing

#endif  // SLT_TESTS_FIXTURES_HPP_
