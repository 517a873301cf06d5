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

#include "slt/verify/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "slt/error.hpp"
#include "slt/fsm/gsm.hpp"
#include "slt/machine/config.hpp"

namespace slt {

namespace {

// Incremental machine construction with collision-free names.
class Builder {
 public:
  explicit Builder(const std::string& name) { m_.name = name; }

  void reserve(const std::string& s) { taken_.insert(s); }

  std::string fresh(std::string base) {
    while (taken_.count(base)) base += "'";
    taken_.insert(base);
    return base;
  }

  // The state for `key`, created on first use.
  MState state(const std::string& key, bool isFinal = false) {
    auto it = states_.find(key);
    if (it != states_.end()) return it->second;
    MState q = m_.addState(fresh(key), isFinal);
    states_.emplace(key, q);
    return q;
  }
  // A state whose name was reserved for it.
  MState exact(const std::string& name, bool isFinal = false) {
    auto it = exact_.find(name);
    if (it != exact_.end()) return it->second;
    MState q = m_.addState(name, isFinal);
    exact_.emplace(name, q);
    return q;
  }

  // A new state that no key refers to.
  MState unique(const std::string& base, bool isFinal = false) {
    return m_.addState(fresh(base), isFinal);
  }

  TapeSym symbol(const std::string& base) {
    m_.tapeAlphabet.push_back(fresh(base));
    return static_cast<TapeSym>(m_.tapeAlphabet.size() - 1);
  }

  InSym input(const std::string& s) {
    auto it = std::find(m_.inputAlphabet.begin(), m_.inputAlphabet.end(), s);
    if (it != m_.inputAlphabet.end())
      return static_cast<InSym>(it - m_.inputAlphabet.begin());
    m_.inputAlphabet.push_back(s);
    return static_cast<InSym>(m_.inputAlphabet.size() - 1);
  }

  void tape(MState from, InSym in, TapeSym read, TapeSym write, Move mv,
            MState to) {
    Transition t;
    t.from = from;
    t.input = in;
    t.read = read;
    t.write = write;
    t.move = mv;
    t.to = to;
    m_.transitions.push_back(t);
  }
  void add(Transition t) { m_.transitions.push_back(t); }

  Machine& machine() { return m_; }
  Machine finish() {
    m_.validate();
    return std::move(m_);
  }

 private:
  Machine m_;
  std::set<std::string> taken_;
  std::map<std::string, MState> states_, exact_;
};

// Deterministic transition table of an Nfa.
struct Dfa {
  std::vector<std::map<std::string, StateId>> next;
  std::vector<bool> final;
  StateId start = 0;
  bool empty = true;

  explicit Dfa(const Nfa& a) {
    Nfa d = trim(determinize(a));
    if (d.stateCount() == 0) return;
    empty = false;
    start = d.initialStates().at(0);
    next.resize(d.stateCount());
    final.resize(d.stateCount());
    for (StateId s = 0; s < d.stateCount(); ++s) {
      final[s] = d.isFinal(s);
      for (const Arc& arc : d.arcs(s)) next[s][d.alphabet()[arc.sym]] = arc.to;
    }
  }
  std::optional<StateId> step(StateId s, const std::string& x) const {
    auto it = next[s].find(x);
    if (it == next[s].end()) return std::nullopt;
    return it->second;
  }
};

std::string key(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += '.';
    out += p;
  }
  return out;
}

std::string num(std::size_t n) { return std::to_string(n); }

void requireCounterFree(const Machine& m, const char* what) {
  if (m.counters != 0)
    throw InvalidArgument(std::string(what) + " needs a counter-free machine");
}

// Every accepted word has the form q x* a ^ x*.
Nfa configShape(const Machine& m) {
  Nfa a(m.storeAlphabet());
  StateId s0 = a.addState(true), s1 = a.addState(), s2 = a.addState(),
          s3 = a.addState(false, true);
  for (const auto& q : m.states) a.addArc(s0, *a.symbol(q), s1);
  for (const auto& x : m.tapeAlphabet) {
    a.addArc(s1, *a.symbol(x), s2);
    a.addArc(s2, *a.symbol(x), s2);
    a.addArc(s3, *a.symbol(x), s3);
  }
  a.addArc(s2, *a.symbol(kHeadToken), s3);
  return a;
}

Nfa relabel(const Nfa& a, const std::vector<std::string>& alphabet,
            const std::map<std::string, std::string>& rename) {
  Nfa out(alphabet);
  out.addStates(a.stateCount());
  for (StateId s = 0; s < a.stateCount(); ++s) {
    out.setInitial(s, a.isInitial(s));
    out.setFinal(s, a.isFinal(s));
    for (const Arc& arc : a.arcs(s)) {
      if (arc.sym == kEpsilon) {
        out.addArc(s, kEpsilon, arc.to);
        continue;
      }
      const std::string& n = a.alphabet()[arc.sym];
      auto it = rename.find(n);
      out.addArc(s, out.symbolOrThrow(it == rename.end() ? n : it->second),
                 arc.to);
    }
  }
  return out;
}

std::string separatorFor(const Machine& m) {
  std::set<std::string> used(m.inputAlphabet.begin(), m.inputAlphabet.end());
  for (const auto& s : m.storeAlphabet()) used.insert(s);
  std::string sep = "$";
  while (used.count(sep)) sep += "$";
  return sep;
}

// Alphabets and m's simulation shared by the loaded and unloaded machines.
// Before m reads its end marker its states keep their names; afterwards
// they are primed copies. m's end marker is the second separator.
struct Loader {
  const Machine& m;
  Builder b;
  LoadedMachine out;
  InSym sep = 0;
  std::vector<TapeSym> marked;
  std::vector<MState> before, after;

  Loader(const Machine& src, const std::string& name) : m(src), b(name) {
    requireCounterFree(m, "loading");
    for (const auto& s : m.storeAlphabet()) b.reserve(s);
    Machine& x = b.machine();
    x.inputAlphabet = m.inputAlphabet;
    x.tapeAlphabet = m.tapeAlphabet;
    x.blank = m.blank;
    std::set<std::string> used(m.inputAlphabet.begin(), m.inputAlphabet.end());
    for (const auto& s : m.storeAlphabet()) used.insert(s);
    out.headLetter = "head";
    while (used.count(out.headLetter)) out.headLetter += "'";
    for (const auto& s : m.storeAlphabet())
      b.input(s == kHeadToken ? out.headLetter : s);
    out.separator = separatorFor(m);
    sep = b.input(out.separator);
    for (const auto& s : m.tapeAlphabet) marked.push_back(b.symbol(s + "'"));
    for (const auto& q : m.states) before.push_back(b.exact(q));
    for (const auto& q : m.states) after.push_back(b.unique(q + "'"));
    for (MState q : before) out.before.push_back(b.machine().states[q]);
    for (MState q : after) out.after.push_back(b.machine().states[q]);
  }

  InSym letter(const std::string& s) {
    return b.input(s == kHeadToken ? out.headLetter : s);
  }
  TapeSym tapeSyms() const { return static_cast<TapeSym>(m.tapeAlphabet.size()); }

  // Copies m's transitions into both phases. `arrive` picks the state a
  // moving transition lands in, given the phase and m's target.
  template <class Arrive>
  void simulate(Arrive arrive) {
    for (const Transition& t : m.transitions) {
      Transition u = t;
      auto target = [&](bool late) {
        MState q = late ? after[t.to] : before[t.to];
        return t.move == Move::S ? q : arrive(late, t.to);
      };
      if (t.input == kEndMarker) {
        u.input = sep;
        u.from = before[t.from];
        u.to = target(true);
        b.add(u);
        continue;
      }
      u.from = before[t.from];
      u.to = target(false);
      b.add(u);
      if (t.input == kLambda) {
        u.from = after[t.from];
        u.to = target(true);
        b.add(u);
      }
    }
  }

  // The accepting tail: `done` reads the real end marker.
  MState acceptTail() {
    MState done = b.state("done");
    MState fin = b.state("accept", true);
    for (TapeSym y = 0; y < b.machine().tapeAlphabet.size(); ++y)
      b.tape(done, kEndMarker, y, y, Move::S, fin);
    return done;
  }
};

}  // namespace

Machine boundFilter(const Machine& m, std::size_t k, BoundMode mode) {
  Builder b(m.name + "-" + boundModeName(mode) + num(k));
  Machine& x = b.machine();
  x.inputAlphabet = m.inputAlphabet;
  x.counters = m.counters;
  for (const auto& s : m.storeAlphabet()) b.reserve(s);

  if (mode == BoundMode::Turn) {
    x.tapeAlphabet = m.tapeAlphabet;
    x.blank = m.blank;
    // (q, turns so far, last direction: 0 none, 1 left, 2 right)
    auto st = [&](MState q, std::size_t t, int d) {
      return b.state(key({m.states[q], "t" + num(t), "d" + num(d)}),
                     m.isFinal(q));
    };
    x.initial = st(m.initial, 0, 0);
    for (MState q = 0; q < m.stateCount(); ++q)
      for (std::size_t t = 0; t <= k; ++t)
        for (int d = 0; d < 3; ++d) st(q, t, d);
    for (const Transition& tr : m.transitions) {
      for (std::size_t t = 0; t <= k; ++t) {
        for (int d = 0; d < 3; ++d) {
          Transition u = tr;
          u.from = st(tr.from, t, d);
          if (!tr.worktape() || tr.move == Move::S) {
            u.to = st(tr.to, t, d);
          } else {
            int nd = tr.move == Move::L ? 1 : 2;
            std::size_t nt = t + (d != 0 && d != nd ? 1 : 0);
            if (nt > k) continue;
            u.to = st(tr.to, nt, nd);
          }
          b.add(u);
        }
      }
    }
    x.declaredBound = DeclaredBound{BoundMode::Turn, k};
    return b.finish();
  }

  // Annotated tape: (symbol, count) with counts 0..k.
  std::vector<std::vector<TapeSym>> ann(m.tapeAlphabet.size());
  for (TapeSym y = 0; y < m.tapeAlphabet.size(); ++y)
    for (std::size_t c = 0; c <= k; ++c)
      ann[y].push_back(b.symbol(m.tapeAlphabet[y] + "/" + num(c)));
  x.blank = ann[m.blank][0];
  std::vector<MState> base;
  for (const auto& q : m.states) base.push_back(b.exact(q));
  for (MState q = 0; q < m.stateCount(); ++q) x.final[base[q]] = m.isFinal(q);

  // bump.q raises the count of the scanned cell, then continues in q.
  std::map<MState, MState> bumped;
  auto bumpTo = [&](MState q) {
    auto it = bumped.find(q);
    if (it != bumped.end()) return it->second;
    MState s = b.state("bump." + m.states[q]);
    bumped.emplace(q, s);
    for (TapeSym y = 0; y < m.tapeAlphabet.size(); ++y)
      for (std::size_t c = 0; c < k; ++c)
        b.tape(s, kLambda, ann[y][c], ann[y][c + 1], Move::S, base[q]);
    return s;
  };

  if (mode == BoundMode::Visit) {
    // Counts are visits; the initial cell is visited by the first config.
    MState init = b.state("init");
    x.initial = init;
    if (k >= 1) b.tape(init, kLambda, ann[m.blank][0], ann[m.blank][1], Move::S,
                       base[m.initial]);
    for (const Transition& tr : m.transitions) {
      if (!tr.worktape()) {
        Transition u = tr;
        u.from = base[tr.from];
        u.to = bumpTo(tr.to);
        b.add(u);
        continue;
      }
      for (std::size_t c = 1; c <= k; ++c) {
        Transition u = tr;
        u.from = base[tr.from];
        u.read = ann[tr.read][c];
        if (tr.move == Move::S) {
          if (c == k) continue;
          u.write = ann[tr.write][c + 1];
          u.to = base[tr.to];
        } else {
          u.write = ann[tr.write][c];
          u.to = bumpTo(tr.to);
        }
        b.add(u);
      }
    }
    x.declaredBound = DeclaredBound{BoundMode::Visit, 2 * k};
    return b.finish();
  }

  // Crossing mode: a cell counts crossings of its right boundary.
  x.initial = base[m.initial];
  for (const Transition& tr : m.transitions) {
    if (!tr.worktape()) {
      Transition u = tr;
      u.from = base[tr.from];
      u.to = base[tr.to];
      b.add(u);
      continue;
    }
    for (std::size_t c = 0; c <= k; ++c) {
      Transition u = tr;
      u.from = base[tr.from];
      u.read = ann[tr.read][c];
      u.write = ann[tr.write][c];
      u.to = base[tr.to];
      if (tr.move == Move::R) {
        if (c == k) continue;
        u.write = ann[tr.write][c + 1];
      } else if (tr.move == Move::L) {
        u.to = bumpTo(tr.to);
      }
      b.add(u);
    }
  }
  x.declaredBound = DeclaredBound{BoundMode::Crossing, k};
  return b.finish();
}

std::size_t filterCrossingBound(std::size_t k, BoundMode mode) {
  switch (mode) {
    case BoundMode::Turn:
      return k + 1;
    case BoundMode::Visit:
      return 2 * k;
    case BoundMode::Crossing:
      return k;
  }
  return k;
}

bool existsKBounded(const Machine& m, std::size_t k, BoundMode mode,
                    const StoreNfaOptions& opt) {
  if (mode == BoundMode::Crossing && k >= 1) return !isEmpty(storeNfa(m, k, opt));
  Machine f = boundFilter(m, k, mode);
  std::size_t r = std::max<std::size_t>(1, filterCrossingBound(k, mode));
  return !isEmpty(storeNfa(f, r, opt));
}

LoadedMachine loadedMachine(const Machine& m, const ConfigSet& c) {
  Loader l(m, m.name + "-loaded");
  Builder& b = l.b;
  Dfa d(intersect(widenAlphabet(c, m.storeAlphabet()), configShape(m)));
  MState start = b.state("load");
  b.machine().initial = start;
  MState done = l.acceptTail();

  if (!d.empty) {
    // load.d.q.p.h: DFA state d, state token q, pending symbol p (or none)
    // not yet written, h once the head token has been read.
    const std::size_t none = m.tapeAlphabet.size();
    using Key = std::tuple<StateId, MState, std::size_t, bool>;
    std::map<Key, MState> ids;
    std::vector<Key> todo;
    auto st = [&](const Key& k) {
      auto it = ids.find(k);
      if (it != ids.end()) return it->second;
      auto [dd, q, p, h] = k;
      MState s = b.state(key({"load", num(dd), m.states[q],
                              p == none ? "-" : m.tapeAlphabet[p], h ? "h" : "n"}));
      ids.emplace(k, s);
      todo.push_back(k);
      return s;
    };
    for (MState q = 0; q < m.stateCount(); ++q) {
      if (auto dq = d.step(d.start, m.states[q])) {
        b.tape(start, l.letter(m.states[q]), m.blank, m.blank, Move::S,
               st({*dq, q, none, false}));
      }
    }
    std::vector<MState> seek(m.stateCount());
    for (MState q = 0; q < m.stateCount(); ++q) {
      seek[q] = b.state("seek." + m.states[q]);
      for (TapeSym y = 0; y < l.tapeSyms(); ++y) {
        b.tape(seek[q], kLambda, y, y, Move::L, seek[q]);
        b.tape(seek[q], kLambda, l.marked[y], y, Move::S, l.before[q]);
      }
    }
    while (!todo.empty()) {
      Key k = todo.back();
      todo.pop_back();
      auto [dd, q, p, h] = k;
      MState s = ids.at(k);
      for (TapeSym z = 0; z < l.tapeSyms(); ++z) {
        auto dz = d.step(dd, m.tapeAlphabet[z]);
        if (!dz) continue;
        InSym in = l.letter(m.tapeAlphabet[z]);
        MState to = st({*dz, q, z, h});
        if (p == none) {
          b.tape(s, in, m.blank, m.blank, Move::S, to);
        } else {
          b.tape(s, in, m.blank, static_cast<TapeSym>(p), Move::R, to);
        }
      }
      if (!h && p != none) {
        if (auto dh = d.step(dd, kHeadToken)) {
          b.tape(s, l.letter(kHeadToken), m.blank, l.marked[p], Move::R,
                 st({*dh, q, none, true}));
        }
      }
      if (h && d.final[dd]) {
        if (p == none) {
          b.tape(s, l.sep, m.blank, m.blank, Move::S, seek[q]);
        } else {
          b.tape(s, l.sep, m.blank, static_cast<TapeSym>(p), Move::R, seek[q]);
        }
      }
    }
  }

  l.simulate([&](bool late, MState q) { return late ? l.after[q] : l.before[q]; });
  for (MState q = 0; q < m.stateCount(); ++q) {
    for (TapeSym y = 0; y < l.tapeSyms(); ++y) {
      b.tape(l.before[q], l.sep, y, y, Move::S, done);
      b.tape(l.after[q], kLambda, y, y, Move::S, done);
    }
  }
  l.out.overhead = 2;
  l.out.machine = b.finish();
  return std::move(l.out);
}

LoadedMachine unloadedMachine(const Machine& m, const ConfigSet& c) {
  Loader l(m, m.name + "-unloaded");
  Builder& b = l.b;
  TapeSym left = b.symbol("<<"), right = b.symbol(">>");
  l.out.leftEnd = b.machine().tapeAlphabet[left];
  l.out.rightEnd = b.machine().tapeAlphabet[right];
  const TapeSym n = l.tapeSyms();
  MState done = l.acceptTail();

  // Load: end marker, then the configuration with a pending symbol.
  MState start = b.state("load");
  MState first = b.state("load.state");
  b.machine().initial = start;
  b.tape(start, kLambda, m.blank, left, Move::R, first);
  const std::size_t none = n;
  auto ld = [&](MState q, std::size_t p, bool h) {
    return b.state(key({"load", m.states[q], p == none ? "-" : m.tapeAlphabet[p],
                        h ? "h" : "n"}));
  };
  for (MState q = 0; q < m.stateCount(); ++q) {
    MState close = b.state("close." + m.states[q]);
    MState seek = b.state("seek." + m.states[q]);
    b.tape(first, l.letter(m.states[q]), m.blank, m.blank, Move::S,
           ld(q, none, false));
    for (int h = 0; h < 2; ++h) {
      for (std::size_t p = 0; p <= none; ++p) {
        MState s = ld(q, p, h);
        for (TapeSym z = 0; z < n; ++z) {
          InSym in = l.letter(m.tapeAlphabet[z]);
          if (p == none)
            b.tape(s, in, m.blank, m.blank, Move::S, ld(q, z, h));
          else
            b.tape(s, in, m.blank, static_cast<TapeSym>(p), Move::R, ld(q, z, h));
        }
        if (!h && p != none)
          b.tape(s, l.letter(kHeadToken), m.blank, l.marked[p], Move::R,
                 ld(q, none, true));
        if (h) {
          if (p == none)
            b.tape(s, l.sep, m.blank, m.blank, Move::S, close);
          else
            b.tape(s, l.sep, m.blank, static_cast<TapeSym>(p), Move::R, close);
        }
      }
    }
    b.tape(close, kLambda, m.blank, right, Move::L, seek);
    for (TapeSym y = 0; y < n; ++y) {
      b.tape(seek, kLambda, y, y, Move::L, seek);
      b.tape(seek, kLambda, l.marked[y], y, Move::S, l.before[q]);
    }
  }

  // Moves land in an arrival state that pushes an end marker outwards
  // when the head reaches it.
  std::set<std::pair<bool, MState>> built;
  auto arrive = [&](bool late, MState q) {
    std::string phase = late ? "late" : "early";
    MState a = b.state(key({"arrive", phase, m.states[q]}));
    MState to = late ? l.after[q] : l.before[q];
    if (built.insert({late, q}).second) {
      for (TapeSym y = 0; y < n; ++y) b.tape(a, kLambda, y, y, Move::S, to);
      MState xl = b.state(key({"grow-left", phase, m.states[q]}));
      MState xr = b.state(key({"grow-right", phase, m.states[q]}));
      b.tape(a, kLambda, left, m.blank, Move::L, xl);
      b.tape(xl, kLambda, m.blank, left, Move::R, to);
      b.tape(a, kLambda, right, m.blank, Move::R, xr);
      b.tape(xr, kLambda, m.blank, right, Move::L, to);
    }
    return a;
  };
  l.simulate(arrive);

  // Check: mark the head, return to the left marker, then feed the
  // normalised configuration word to the DFA of L(c).
  Dfa d(intersect(widenAlphabet(c, m.storeAlphabet()), configShape(m)));
  enum Phase { kLead, kMid, kBlank, kTrail };
  using Key = std::pair<StateId, int>;
  std::map<Key, MState> ids;
  std::vector<Key> todo;
  auto sc = [&](StateId dd, int ph) {
    Key k{dd, ph};
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    MState s = b.state(key({"scan", num(dd), num(static_cast<std::size_t>(ph))}));
    ids.emplace(k, s);
    todo.push_back(k);
    return s;
  };
  if (!d.empty) {
    for (MState q = 0; q < m.stateCount(); ++q) {
      auto dq = d.step(d.start, m.states[q]);
      if (!dq) continue;
      MState back = b.state("rewind." + m.states[q]);
      for (TapeSym y = 0; y < n; ++y) {
        b.tape(l.before[q], l.sep, y, l.marked[y], Move::L, back);
        b.tape(l.after[q], kLambda, y, l.marked[y], Move::L, back);
        b.tape(back, kLambda, y, y, Move::L, back);
      }
      b.tape(back, kLambda, left, left, Move::R, sc(*dq, kLead));
    }
    while (!todo.empty()) {
      auto [dd, ph] = todo.back();
      todo.pop_back();
      MState s = ids.at({dd, ph});
      for (TapeSym y = 0; y < n; ++y) {
        const std::string& name = m.tapeAlphabet[y];
        auto dy = d.step(dd, name);
        // Marked cell: the symbol and the head token.
        if (ph != kTrail && dy) {
          if (auto dh = d.step(*dy, kHeadToken))
            b.tape(s, kLambda, l.marked[y], y, Move::R, sc(*dh, kMid));
        }
        if (y == m.blank) {
          if (ph == kLead) b.tape(s, kLambda, y, y, Move::R, s);
          if ((ph == kMid || ph == kBlank) && dy)
            b.tape(s, kLambda, y, y, Move::R, sc(*dy, kBlank));
          if (ph == kMid) b.tape(s, kLambda, y, y, Move::R, sc(dd, kTrail));
          if (ph == kTrail) b.tape(s, kLambda, y, y, Move::R, s);
        } else if (ph != kTrail && dy) {
          b.tape(s, kLambda, y, y, Move::R, sc(*dy, kMid));
        }
      }
      if ((ph == kMid || ph == kTrail) && d.final[dd])
        b.tape(s, kLambda, right, right, Move::S, done);
    }
  }
  l.out.overhead = 4;
  l.out.machine = b.finish();
  return std::move(l.out);
}

std::vector<std::string> loadedInput(const Machine& m, const LoadedMachine& l,
                                     const StoreConfig& c,
                                     const std::vector<std::string>& x) {
  std::vector<std::string> out = storeTokens(m, c);
  for (auto& t : out)
    if (t == kHeadToken) t = l.headLetter;
  out.push_back(l.separator);
  out.insert(out.end(), x.begin(), x.end());
  out.push_back(l.separator);
  return out;
}

ConfigSet postStar(const Machine& m, std::size_t r, const ConfigSet& c,
                   const StoreNfaOptions& opt) {
  LoadedMachine l = loadedMachine(m, c);
  Nfa s = storeNfa(l.machine, r + l.overhead, opt);
  std::vector<std::string> keep = l.before;
  keep.insert(keep.end(), l.after.begin(), l.after.end());
  keep.insert(keep.end(), m.tapeAlphabet.begin(), m.tapeAlphabet.end());
  keep.push_back(kHeadToken);
  std::map<std::string, std::string> rename;
  for (MState q = 0; q < m.stateCount(); ++q) rename[l.after[q]] = m.states[q];
  return trim(relabel(restrictAlphabet(s, keep), m.storeAlphabet(), rename));
}

Machine reversedMachine(const Machine& m) {
  requireCounterFree(m, "reversal");
  Builder b(m.name + ".rev");
  for (const auto& s : m.storeAlphabet()) b.reserve(s);
  Machine& x = b.machine();
  x.inputAlphabet = m.inputAlphabet;
  x.tapeAlphabet = m.tapeAlphabet;
  x.blank = m.blank;
  std::vector<MState> late, early;
  for (const auto& q : m.states) late.push_back(b.exact(q));
  for (const auto& q : m.states) early.push_back(b.unique(q + "'"));
  x.initial = late[m.initial];
  TapeSym g = static_cast<TapeSym>(m.tapeAlphabet.size());
  for (MState q = 0; q < m.stateCount(); ++q)
    for (TapeSym y = 0; y < g; ++y)
      b.tape(late[q], kLambda, y, y, Move::S, early[q]);
  auto undo = [&](const Transition& t, std::size_t i, MState from, MState to) {
    if (t.move == Move::S) {
      b.tape(from, kLambda, t.write, t.read, Move::S, to);
      return;
    }
    MState mid = b.state(key({"back", num(i), x.states[from]}));
    Move back = t.move == Move::L ? Move::R : Move::L;
    for (TapeSym y = 0; y < g; ++y) b.tape(from, kLambda, y, y, back, mid);
    b.tape(mid, kLambda, t.write, t.read, Move::S, to);
  };
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const Transition& t = m.transitions[i];
    if (t.input == kEndMarker) {
      undo(t, i, late[t.to], early[t.from]);
      continue;
    }
    undo(t, i, early[t.to], early[t.from]);
    if (t.input == kLambda) undo(t, i, late[t.to], late[t.from]);
  }
  return b.finish();
}

ConfigSet preStar(const Machine& m, std::size_t r, const ConfigSet& c,
                  const StoreNfaOptions& opt) {
  Machine rev = reversedMachine(m);
  Nfa s = postStar(rev, r, c, opt);
  std::vector<std::string> keep = m.storeAlphabet();
  std::map<std::string, std::string> rename;
  for (MState q = 0; q < m.stateCount(); ++q) {
    keep.push_back(rev.states[m.stateCount() + q]);
    rename[keep.back()] = m.states[q];
  }
  return trim(relabel(restrictAlphabet(s, keep), m.storeAlphabet(), rename));
}

CommonResult commonConfigs(const Machine& m1, std::size_t r1,
                           const Machine& m2, std::size_t r2,
                           const StoreNfaOptions& opt) {
  std::vector<std::string> alphabet = m1.storeAlphabet();
  for (const auto& s : m2.storeAlphabet()) {
    if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end())
      alphabet.push_back(s);
  }
  Nfa a = widenAlphabet(storeNfa(m1, r1, opt), alphabet);
  Nfa b = widenAlphabet(storeNfa(m2, r2, opt), alphabet);
  Nfa both = intersect(a, b);
  for (const Machine* m : {&m1, &m2}) {
    auto init = storeTokens(*m, storeOf(initialConfig(*m)));
    both = difference(both, singletonNfa(alphabet, Nfa(alphabet).encode(init)));
  }
  CommonResult out;
  if (auto w = shortestWord(both)) {
    out.answer = true;
    out.witness = both.decode(*w);
  }
  return out;
}

Machine rightQuotientMachine(const Machine& m, const Nfa& rgx) {
  Dfa d(widenAlphabet(rgx, m.inputAlphabet));
  Builder b(m.name + "-quotient");
  Machine& x = b.machine();
  x.inputAlphabet = m.inputAlphabet;
  x.tapeAlphabet = m.tapeAlphabet;
  x.blank = m.blank;
  x.counters = m.counters;
  for (const auto& s : m.storeAlphabet()) b.reserve(s);
  std::vector<MState> real, late;
  for (const auto& q : m.states) real.push_back(b.exact(q));
  for (MState q = 0; q < m.stateCount(); ++q)
    late.push_back(b.state(m.states[q] + "'", m.isFinal(q)));
  x.initial = real[m.initial];
  if (d.empty) return b.finish();

  // Guessed letters drive the DFA of rgx in ghost states.
  std::vector<std::vector<MState>> ghost(m.stateCount());
  for (MState q = 0; q < m.stateCount(); ++q)
    for (StateId s = 0; s < d.next.size(); ++s)
      ghost[q].push_back(b.state(key({m.states[q], "g" + num(s)})));
  for (MState q = 0; q < m.stateCount(); ++q)
    for (TapeSym y = 0; y < m.tapeAlphabet.size(); ++y)
      b.tape(real[q], kLambda, y, y, Move::S, ghost[q][d.start]);

  for (const Transition& t : m.transitions) {
    Transition u = t;
    if (t.input != kEndMarker) {
      u.from = real[t.from];
      u.to = real[t.to];
      b.add(u);
    }
    if (t.input == kLambda) {
      u.from = late[t.from];
      u.to = late[t.to];
      b.add(u);
    }
    for (StateId s = 0; s < d.next.size(); ++s) {
      u = t;
      u.from = ghost[t.from][s];
      if (t.input == kLambda) {
        u.to = ghost[t.to][s];
      } else if (t.input == kEndMarker) {
        if (!d.final[s]) continue;
        u.to = late[t.to];
      } else {
        auto n = d.step(s, m.inputAlphabet[t.input]);
        if (!n) continue;
        u.input = kLambda;
        u.to = ghost[t.to][*n];
      }
      b.add(u);
    }
  }
  if (m.declaredBound && m.declaredBound->mode == BoundMode::Crossing)
    x.declaredBound = m.declaredBound;
  return b.finish();
}

ConfigSet singletonConfig(const Machine& m, const StoreConfig& s) {
  std::vector<std::string> alphabet = m.storeAlphabet();
  return singletonNfa(alphabet, Nfa(alphabet).encode(storeTokens(m, s)));
}

}  // namespace slt
