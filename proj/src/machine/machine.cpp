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

#include "slt/machine/machine.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "slt/error.hpp"

namespace slt {

const char* boundModeName(BoundMode m) {
  switch (m) {
    case BoundMode::Turn:
      return "turn";
    case BoundMode::Visit:
      return "visit";
    case BoundMode::Crossing:
      return "crossing";
  }
  return "?";
}

BoundMode parseBoundMode(const std::string& s) {
  if (s == "turn") return BoundMode::Turn;
  if (s == "visit") return BoundMode::Visit;
  if (s == "crossing") return BoundMode::Crossing;
  throw InvalidArgument("unknown bound mode '" + s + "'");
}

namespace {

template <class T>
std::optional<T> find(const std::vector<std::string>& v, const std::string& s) {
  auto it = std::find(v.begin(), v.end(), s);
  if (it == v.end()) return std::nullopt;
  return static_cast<T>(it - v.begin());
}

}  // namespace

std::optional<MState> Machine::stateIndex(const std::string& s) const {
  return find<MState>(states, s);
}

std::optional<InSym> Machine::inputIndex(const std::string& s) const {
  return find<InSym>(inputAlphabet, s);
}

std::optional<TapeSym> Machine::tapeIndex(const std::string& s) const {
  return find<TapeSym>(tapeAlphabet, s);
}

MState Machine::addState(const std::string& n, bool isFinal) {
  states.push_back(n);
  final.push_back(isFinal);
  return static_cast<MState>(states.size() - 1);
}

std::vector<std::string> Machine::storeAlphabet() const {
  std::vector<std::string> out = states;
  out.insert(out.end(), tapeAlphabet.begin(), tapeAlphabet.end());
  out.push_back(kHeadToken);
  for (std::uint32_t i = 1; i <= counters; ++i) out.push_back("C" + std::to_string(i));
  return out;
}

void Machine::validate() const {
  auto fail = [](const std::string& w) { throw InvalidArgument(w); };
  if (states.empty()) fail("machine has no states");
  if (final.size() != states.size()) fail("final flags do not match states");
  if (initial >= states.size()) fail("initial state out of range");
  if (tapeAlphabet.empty() || tapeAlphabet.size() > 255) fail("bad tape alphabet size");
  if (blank >= tapeAlphabet.size()) fail("blank not in tape alphabet");
  std::set<std::string> seen;
  auto token = [&](const std::string& s, const char* what) {
    if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos ||
        s.find(kHeadToken) != std::string::npos || s == "@" || s == "$end" ||
        s.rfind("//", 0) == 0)
      fail(std::string("bad ") + what + " name '" + s + "'");
  };
  for (const auto& s : states) {
    token(s, "state");
    if (!seen.insert(s).second) fail("duplicate store token '" + s + "'");
  }
  for (const auto& s : tapeAlphabet) {
    token(s, "tape symbol");
    if (!seen.insert(s).second) fail("duplicate store token '" + s + "'");
  }
  for (std::uint32_t i = 1; i <= counters; ++i) {
    if (seen.count("C" + std::to_string(i)))
      fail("store token C" + std::to_string(i) + " is reserved");
  }
  std::set<std::string> in;
  for (const auto& s : inputAlphabet) {
    token(s, "input symbol");
    if (!in.insert(s).second) fail("duplicate input symbol '" + s + "'");
  }
  for (const Transition& t : transitions) {
    if (t.from >= states.size() || t.to >= states.size())
      fail("transition state out of range");
    if (t.input != kLambda && t.input != kEndMarker &&
        (t.input < 0 || static_cast<std::size_t>(t.input) >= inputAlphabet.size()))
      fail("transition input out of range");
    if (t.counter > counters) fail("transition counter out of range");
    if (t.worktape()) {
      if (t.read >= tapeAlphabet.size() || t.write >= tapeAlphabet.size())
        fail("transition tape symbol out of range");
    } else if (t.delta < -1 || t.delta > 1) {
      fail("counter delta out of range");
    }
  }
}

bool isDeterministic(const Machine& m) {
  const auto& ts = m.transitions;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      const Transition& a = ts[i];
      const Transition& b = ts[j];
      if (a.from != b.from) continue;
      bool inputClash =
          a.input == b.input || a.input == kLambda || b.input == kLambda;
      if (!inputClash) continue;
      bool storeClash;
      if (a.worktape() && b.worktape())
        storeClash = a.read == b.read;
      else if (a.counter == b.counter)
        storeClash = a.nonzero == b.nonzero;
      else
        storeClash = true;
      if (storeClash) return false;
    }
  }
  return true;
}

std::vector<bool> writableSymbols(const Machine& m) {
  std::vector<bool> out(m.tapeAlphabet.size(), false);
  out[m.blank] = true;
  for (const Transition& t : m.transitions)
    if (t.worktape()) out[t.write] = true;
  return out;
}

namespace {

std::string inputName(const Machine& m, InSym a) {
  if (a == kLambda) return "@";
  if (a == kEndMarker) return "$end";
  return m.inputAlphabet.at(a);
}

}  // namespace

std::string serializeMachine(const Machine& m) {
  std::ostringstream os;
  auto list = [&](const char* kw, const std::vector<std::string>& v) {
    os << kw;
    for (const auto& s : v) os << ' ' << s;
    os << '\n';
  };
  os << "machine " << m.name << '\n';
  os << "counters " << m.counters << '\n';
  list("input-alphabet", m.inputAlphabet);
  list("tape-alphabet", m.tapeAlphabet);
  os << "blank " << m.tapeAlphabet.at(m.blank) << '\n';
  list("states", m.states);
  os << "initial " << m.states.at(m.initial) << '\n';
  os << "final";
  for (MState q = 0; q < m.states.size(); ++q)
    if (m.final[q]) os << ' ' << m.states[q];
  os << '\n';
  if (m.declaredBound) {
    os << "declared-bound " << boundModeName(m.declaredBound->mode) << ' '
       << m.declaredBound->bound << '\n';
  }
  for (const Transition& t : m.transitions) {
    if (t.worktape()) {
      os << "t " << m.states[t.from] << ' ' << inputName(m, t.input) << ' '
         << m.tapeAlphabet[t.read] << " -> " << m.states[t.to] << ' '
         << m.tapeAlphabet[t.write] << ' '
         << (t.move == Move::L ? 'L' : t.move == Move::R ? 'R' : 'S') << '\n';
    } else {
      os << "c " << m.states[t.from] << ' ' << inputName(m, t.input) << ' '
         << t.counter << ' ' << (t.nonzero ? 'p' : 'z') << " -> "
         << m.states[t.to] << ' ' << (t.delta > 0 ? "+1" : t.delta < 0 ? "-1" : "0")
         << '\n';
    }
  }
  return os.str();
}

Machine parseMachine(std::istream& in) {
  Machine m;
  m.states.clear();
  std::string raw;
  std::size_t line = 0;
  bool sawStates = false, sawTape = false, sawInput = false, sawBlank = false,
       sawInitial = false, sawMachine = false, sawCounters = false;
  std::string blankName, initialName;
  std::vector<std::string> finalNames;
  struct Pending {
    std::size_t line;
    std::vector<std::string> f;
  };
  std::vector<Pending> pending;
  auto need = [&](bool cond, const std::string& what) {
    if (!cond) throw ParseError(line, what);
  };
  while (std::getline(in, raw)) {
    ++line;
    if (auto c = raw.find("//"); c != std::string::npos) raw.resize(c);
    std::istringstream ls(raw);
    std::vector<std::string> f;
    for (std::string tok; ls >> tok;) f.push_back(tok);
    if (f.empty()) continue;
    const std::string& kw = f[0];
    std::vector<std::string> rest(f.begin() + 1, f.end());
    if (kw == "machine") {
      need(!sawMachine && rest.size() == 1, "bad machine line");
      m.name = rest[0];
      sawMachine = true;
    } else if (kw == "counters") {
      need(!sawCounters && rest.size() == 1, "bad counters line");
      try {
        std::size_t pos = 0;
        m.counters = static_cast<std::uint32_t>(std::stoul(rest[0], &pos));
        need(pos == rest[0].size(), "bad counter count");
      } catch (const std::logic_error&) {
        throw ParseError(line, "bad counter count");
      }
      sawCounters = true;
    } else if (kw == "input-alphabet") {
      need(!sawInput, "duplicate input-alphabet");
      m.inputAlphabet = rest;
      sawInput = true;
    } else if (kw == "tape-alphabet") {
      need(!sawTape && !rest.empty(), "bad tape-alphabet");
      m.tapeAlphabet = rest;
      sawTape = true;
    } else if (kw == "blank") {
      need(!sawBlank && rest.size() == 1, "bad blank line");
      blankName = rest[0];
      sawBlank = true;
    } else if (kw == "states") {
      need(!sawStates && !rest.empty(), "bad states line");
      for (const auto& s : rest) m.addState(s);
      sawStates = true;
    } else if (kw == "initial") {
      need(!sawInitial && rest.size() == 1, "bad initial line");
      initialName = rest[0];
      sawInitial = true;
    } else if (kw == "final") {
      finalNames.insert(finalNames.end(), rest.begin(), rest.end());
    } else if (kw == "declared-bound") {
      need(rest.size() == 2, "declared-bound needs mode and bound");
      try {
        m.declaredBound = DeclaredBound{parseBoundMode(rest[0]),
                                        static_cast<std::size_t>(std::stoul(rest[1]))};
      } catch (const std::exception&) {
        throw ParseError(line, "bad declared-bound");
      }
    } else if (kw == "t" || kw == "c") {
      need(f.size() == 8 && f[kw == "t" ? 4 : 5] == "->",
           "bad transition arity");
      pending.push_back({line, f});
    } else {
      throw ParseError(line, "unknown keyword '" + kw + "'");
    }
  }
  line = 0;
  need(sawStates && sawTape && sawBlank && sawInitial && sawInput,
       "missing machine header field");
  auto st = [&](const std::string& s) {
    auto q = m.stateIndex(s);
    if (!q) throw ParseError(line, "undeclared state '" + s + "'");
    return *q;
  };
  auto sym = [&](const std::string& s) {
    auto a = m.tapeIndex(s);
    if (!a) throw ParseError(line, "undeclared tape symbol '" + s + "'");
    return *a;
  };
  auto inp = [&](const std::string& s) -> InSym {
    if (s == "@") return kLambda;
    if (s == "$end") return kEndMarker;
    auto a = m.inputIndex(s);
    if (!a) throw ParseError(line, "undeclared input symbol '" + s + "'");
    return *a;
  };
  m.blank = sym(blankName);
  m.initial = st(initialName);
  for (const auto& s : finalNames) m.final[st(s)] = true;
  for (const Pending& p : pending) {
    line = p.line;
    const auto& f = p.f;
    Transition t;
    t.from = st(f[1]);
    t.input = inp(f[2]);
    if (f[0] == "t") {
      t.read = sym(f[3]);
      t.to = st(f[5]);
      t.write = sym(f[6]);
      if (f[7] == "L")
        t.move = Move::L;
      else if (f[7] == "S")
        t.move = Move::S;
      else if (f[7] == "R")
        t.move = Move::R;
      else
        throw ParseError(line, "bad move '" + f[7] + "'");
    } else {
      try {
        std::size_t pos = 0;
        t.counter = static_cast<std::uint32_t>(std::stoul(f[3], &pos));
        need(pos == f[3].size(), "bad counter index");
      } catch (const std::logic_error&) {
        throw ParseError(line, "bad counter index");
      }
      need(t.counter >= 1 && t.counter <= m.counters, "counter index out of range");
      need(f[4] == "z" || f[4] == "p", "counter test must be z or p");
      t.nonzero = f[4] == "p";
      t.to = st(f[6]);
      if (f[7] == "-1")
        t.delta = -1;
      else if (f[7] == "0")
        t.delta = 0;
      else if (f[7] == "+1" || f[7] == "1")
        t.delta = 1;
      else
        throw ParseError(line, "bad counter delta '" + f[7] + "'");
    }
    m.transitions.push_back(t);
  }
  try {
    m.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(0, e.what());
  }
  return m;
}

Machine parseMachineText(const std::string& text) {
  std::istringstream in(text);
  return parseMachine(in);
}

Machine loadMachine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return parseMachine(in);
}

}  // namespace slt
