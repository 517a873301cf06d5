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

#include "slt/fsm/regex.hpp"

#include <algorithm>
#include <cctype>

#include "slt/error.hpp"

namespace slt {

namespace {

bool isMeta(char c) {
  return c == '(' || c == ')' || c == '|' || c == '*' || c == '+' ||
         c == '?' || c == '[' || c == ']';
}

class Parser {
 public:
  Parser(const std::string& p, const std::vector<std::string>& alphabet)
      : p_(p), alphabet_(alphabet), proto_(alphabet) {}

  Nfa run() {
    Nfa out = alt();
    skipSpace();
    if (pos_ != p_.size()) fail("unexpected '" + std::string(1, p_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, "regex at offset " + std::to_string(pos_) + ": " + what);
  }

  void skipSpace() {
    while (pos_ < p_.size() && std::isspace(static_cast<unsigned char>(p_[pos_])))
      ++pos_;
  }

  Nfa epsilon() const { return singletonNfa(alphabet_, {}); }

  Nfa symbolSet(const std::vector<SymId>& syms) const {
    Nfa out(alphabet_);
    StateId a = out.addState(true, false);
    StateId b = out.addState(false, true);
    for (SymId s : syms) out.addArc(a, s, b);
    return out;
  }

  Nfa alt() {
    Nfa out = cat();
    skipSpace();
    while (pos_ < p_.size() && p_[pos_] == '|') {
      ++pos_;
      out = unite(out, cat());
      skipSpace();
    }
    return out;
  }

  Nfa cat() {
    Nfa out = epsilon();
    for (;;) {
      skipSpace();
      if (pos_ >= p_.size() || p_[pos_] == '|' || p_[pos_] == ')') break;
      out = concat(out, post());
    }
    return out;
  }

  Nfa post() {
    Nfa out = atom();
    for (;;) {
      skipSpace();
      if (pos_ >= p_.size()) break;
      char c = p_[pos_];
      if (c == '*') {
        out = star(out);
      } else if (c == '+') {
        out = concat(out, star(out));
      } else if (c == '?') {
        out = unite(out, epsilon());
      } else {
        break;
      }
      ++pos_;
    }
    return out;
  }

  // Reads one token: either an escaped character run or the longest
  // alphabet match at the cursor.
  SymId token() {
    if (p_[pos_] == '\\') {
      if (pos_ + 1 >= p_.size()) fail("dangling escape");
      std::string s(1, p_[pos_ + 1]);
      pos_ += 2;
      auto id = proto_.symbol(s);
      if (!id) fail("unknown symbol '" + s + "'");
      return *id;
    }
    std::size_t best = 0;
    SymId bestId = 0;
    for (SymId i = 0; i < alphabet_.size(); ++i) {
      const std::string& s = alphabet_[i];
      if (s.size() > best && p_.compare(pos_, s.size(), s) == 0) {
        best = s.size();
        bestId = i;
      }
    }
    if (best == 0) fail("no alphabet symbol matches");
    pos_ += best;
    return bestId;
  }

  Nfa atom() {
    char c = p_[pos_];
    if (c == '(') {
      ++pos_;
      Nfa inner = alt();
      skipSpace();
      if (pos_ >= p_.size() || p_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '[') {
      ++pos_;
      bool negate = pos_ < p_.size() && p_[pos_] == '^';
      if (negate) ++pos_;
      std::vector<SymId> syms;
      for (;;) {
        skipSpace();
        if (pos_ >= p_.size()) fail("missing ']'");
        if (p_[pos_] == ']') break;
        syms.push_back(token());
      }
      ++pos_;
      if (negate) {
        std::vector<SymId> all;
        for (SymId i = 0; i < alphabet_.size(); ++i)
          if (std::find(syms.begin(), syms.end(), i) == syms.end())
            all.push_back(i);
        syms = all;
      }
      return symbolSet(syms);
    }
    if (isMeta(c)) fail("unexpected '" + std::string(1, c) + "'");
    return symbolSet({token()});
  }

  const std::string& p_;
  const std::vector<std::string>& alphabet_;
  Nfa proto_;
  std::size_t pos_ = 0;
};

}  // namespace

Nfa compileRegex(const std::string& pattern,
                 const std::vector<std::string>& alphabet) {
  return trim(Parser(pattern, alphabet).run());
}

}  // namespace slt
