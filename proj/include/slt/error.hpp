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

#ifndef SLT_ERROR_HPP_
#define SLT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slt {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A bounded search or construction ran past its configured limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// encodeHistory: some cell has more sojourns than there are tracks.
class SojournOverflow : public Error {
 public:
  SojournOverflow(long cell, std::size_t sojourns)
      : Error("cell at address " + std::to_string(cell) + " has " +
              std::to_string(sojourns) + " sojourns"),
        cell_(cell) {}
  long cell() const { return cell_; }

 private:
  long cell_;
};

}  // namespace slt

#endif  // SLT_ERROR_HPP_
