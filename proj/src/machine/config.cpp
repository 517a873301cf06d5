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

#include "slt/machine/config.hpp"

#include <sstream>

#include "slt/error.hpp"
#include "slt/fsm/nfa.hpp"

namespace slt {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return (h ^ v) * 1099511628211ull;
}

}  // namespace

std::size_t ConfigHash::operator()(const Config& c) const {
  std::size_t h = 1469598103934665603ull;
  h = mix(h, c.state);
  h = mix(h, c.pos);
  h = mix(h, c.head);
  for (TapeSym s : c.tape) h = mix(h, s + 1);
  for (auto z : c.counters) h = mix(h, z + 7);
  return h;
}

std::size_t StoreConfigHash::operator()(const StoreConfig& c) const {
  std::size_t h = 1469598103934665603ull;
  h = mix(h, c.state);
  h = mix(h, c.head);
  for (TapeSym s : c.tape) h = mix(h, s + 1);
  for (auto z : c.counters) h = mix(h, z + 7);
  return h;
}

Config initialConfig(const Machine& m) {
  Config c;
  c.state = m.initial;
  c.pos = 0;
  c.tape = {m.blank};
  c.head = 0;
  c.counters.assign(m.counters, 0);
  return c;
}

StoreConfig storeOf(const Config& c) {
  return {c.state, c.tape, c.head, c.counters};
}

Config withStore(const StoreConfig& s, std::uint32_t pos) {
  return {s.state, pos, s.tape, s.head, s.counters};
}

bool isAccepting(const Machine& m, const Input& w, const Config& c) {
  return m.isFinal(c.state) && c.pos == w.size() + 1;
}

bool applyTransition(const Machine& m, const Input& w, const Config& c,
                     std::size_t index, Config& out) {
  const Transition& t = m.transitions[index];
  if (t.from != c.state) return false;
  std::uint32_t pos = c.pos;
  if (t.input == kEndMarker) {
    if (pos != w.size()) return false;
    ++pos;
  } else if (t.input != kLambda) {
    if (pos >= w.size() || w[pos] != t.input) return false;
    ++pos;
  }
  if (!t.worktape()) {
    std::uint32_t z = c.counters[t.counter - 1];
    if ((z != 0) != t.nonzero) return false;
    if (t.delta < 0 && z == 0) return false;
    out = c;
    out.state = t.to;
    out.pos = pos;
    out.counters[t.counter - 1] = z + t.delta;
    return true;
  }
  if (c.tape[c.head] != t.read) return false;
  out.state = t.to;
  out.pos = pos;
  out.counters = c.counters;
  const std::vector<TapeSym>& tp = c.tape;
  std::size_t h = c.head;
  TapeSym d = t.write;
  switch (t.move) {
    case Move::S:
      out.tape = tp;
      out.tape[h] = d;
      out.head = c.head;
      break;
    case Move::L: {
      // x = tp[0..h), y = tp(h..].
      bool yEmpty = h + 1 == tp.size();
      out.tape.clear();
      if (h == 0)
        out.tape.push_back(m.blank);
      else
        out.tape.assign(tp.begin(), tp.begin() + h);
      out.head = static_cast<std::uint32_t>(out.tape.size() - 1);
      if (!(yEmpty && d == m.blank)) out.tape.push_back(d);
      out.tape.insert(out.tape.end(), tp.begin() + h + 1, tp.end());
      break;
    }
    case Move::R: {
      out.tape.assign(tp.begin(), tp.begin() + h);
      if (!(h == 0 && d == m.blank)) out.tape.push_back(d);
      if (h + 1 == tp.size()) {
        out.tape.push_back(m.blank);
      } else {
        out.tape.insert(out.tape.end(), tp.begin() + h + 1, tp.end());
      }
      out.head = static_cast<std::uint32_t>(h == 0 && d == m.blank ? 0 : h + 1);
      break;
    }
  }
  return true;
}

std::vector<std::pair<Config, std::size_t>> step(const Machine& m,
                                                 const Input& w,
                                                 const Config& c) {
  std::vector<std::pair<Config, std::size_t>> out;
  Config next;
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    if (applyTransition(m, w, c, i, next)) out.emplace_back(next, i);
  }
  return out;
}

Input encodeInput(const Machine& m, const std::vector<std::string>& tokens) {
  Input w;
  for (const auto& t : tokens) {
    auto a = m.inputIndex(t);
    if (!a) throw UnknownSymbol("input symbol '" + t + "' not in alphabet");
    w.push_back(*a);
  }
  return w;
}

Input parseInput(const Machine& m, const std::string& text) {
  return encodeInput(m, tokenize(m.inputAlphabet, text));
}

std::string renderInput(const Machine& m, const Input& w) {
  std::string out;
  for (InSym a : w) out += m.inputAlphabet.at(a);
  return out;
}

std::vector<std::string> storeTokens(const Machine& m, const StoreConfig& s) {
  std::vector<std::string> out{m.states.at(s.state)};
  for (std::size_t i = 0; i < s.tape.size(); ++i) {
    out.push_back(m.tapeAlphabet.at(s.tape[i]));
    if (i == s.head) out.push_back(kHeadToken);
  }
  for (std::size_t i = 0; i < s.counters.size(); ++i)
    for (std::uint32_t k = 0; k < s.counters[i]; ++k)
      out.push_back("C" + std::to_string(i + 1));
  return out;
}

StoreConfig storeFromTokens(const Machine& m,
                            const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw ParseError(1, "empty store configuration");
  StoreConfig s;
  auto q = m.stateIndex(tokens[0]);
  if (!q) throw ParseError(1, "unknown state '" + tokens[0] + "'");
  s.state = *q;
  s.counters.assign(m.counters, 0);
  bool headSeen = false;
  std::size_t i = 1;
  for (; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t == kHeadToken) {
      if (headSeen || s.tape.empty()) throw ParseError(1, "misplaced head marker");
      headSeen = true;
      s.head = static_cast<std::uint32_t>(s.tape.size() - 1);
      continue;
    }
    auto a = m.tapeIndex(t);
    if (!a) break;
    s.tape.push_back(*a);
  }
  if (!headSeen) throw ParseError(1, "missing head marker");
  std::uint32_t last = 0;
  for (; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    std::uint32_t k = 0;
    for (std::uint32_t j = 1; j <= m.counters; ++j)
      if (t == "C" + std::to_string(j)) k = j;
    if (k == 0 || k < last) throw ParseError(1, "unexpected token '" + t + "'");
    last = k;
    ++s.counters[k - 1];
  }
  return s;
}

std::string toText(const Machine& m, const StoreConfig& s) {
  std::string out = m.states.at(s.state) + " ";
  for (std::size_t i = 0; i < s.tape.size(); ++i) {
    out += m.tapeAlphabet.at(s.tape[i]);
    if (i == s.head) out += kHeadToken;
  }
  for (auto z : s.counters) out += " " + std::to_string(z);
  return out;
}

StoreConfig parseStoreConfig(const Machine& m, const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> f;
  for (std::string t; is >> t;) f.push_back(t);
  if (f.size() != 2 + m.counters)
    throw ParseError(1, "store configuration needs state, tape and " +
                            std::to_string(m.counters) + " counters");
  std::vector<std::string> tapeAlpha = m.tapeAlphabet;
  tapeAlpha.push_back(kHeadToken);
  std::vector<std::string> tokens{f[0]};
  try {
    auto tape = tokenize(tapeAlpha, f[1]);
    tokens.insert(tokens.end(), tape.begin(), tape.end());
  } catch (const UnknownSymbol& e) {
    throw ParseError(1, e.what());
  }
  StoreConfig s = storeFromTokens(m, tokens);
  for (std::uint32_t i = 0; i < m.counters; ++i) {
    try {
      std::size_t pos = 0;
      s.counters[i] = static_cast<std::uint32_t>(std::stoul(f[2 + i], &pos));
      if (pos != f[2 + i].size()) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
      throw ParseError(1, "bad counter value '" + f[2 + i] + "'");
    }
  }
  return s;
}

}  // namespace slt
