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

#ifndef SLT_FSM_TWO_NFA_HPP_
#define SLT_FSM_TWO_NFA_HPP_

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "slt/error.hpp"
#include "slt/fsm/nfa.hpp"
#include "slt/parallel.hpp"

namespace slt {

enum class Dir : std::int8_t { L = -1, S = 0, R = 1 };

using TwoState = std::uint64_t;

struct TwoMove {
  TwoState to;
  Dir dir;
  bool operator==(const TwoMove&) const = default;
};

// A tape cell of a two-way run: left end-marker, input symbol, or right
// end-marker.
template <class Sym>
struct Letter {
  enum Kind : std::uint8_t { kLeftEnd, kSymbol, kRightEnd };
  Kind kind;
  const Sym* sym = nullptr;

  static Letter leftEnd() { return {kLeftEnd, nullptr}; }
  static Letter rightEnd() { return {kRightEnd, nullptr}; }
  static Letter of(const Sym& s) { return {kSymbol, &s}; }
};

template <class Sym, class Hint>
class SymbolSource {
 public:
  virtual ~SymbolSource() = default;
  virtual bool finite() const = 0;
  virtual bool contains(const Sym& s) const = 0;
  // Calls f on every member compatible with the hint, each exactly once, in a
  // fixed order. A default-constructed hint must admit every member.
  virtual void enumerate(const Hint& hint,
                         const std::function<void(const Sym&)>& f) const = 0;
  // Whitespace-free token naming the symbol.
  virtual std::string name(const Sym& s) const = 0;
};

template <class Sym, class Hint>
class TwoNfa {
 public:
  using LetterT = Letter<Sym>;
  virtual ~TwoNfa() = default;

  virtual TwoState initial() const = 0;
  virtual bool isFinal(TwoState s) const = 0;
  virtual void moves(TwoState s, const LetterT& at,
                     std::vector<TwoMove>& out) const = 0;
  virtual const SymbolSource<Sym, Hint>& source() const = 0;

  // Restricts enumeration of the next symbol to ones worth trying when the
  // given states may stand on it.
  virtual Hint hint(const std::vector<TwoState>& live) const {
    (void)live;
    return Hint{};
  }

  // A superset of the states in which the head can arrive on this letter
  // from its right neighbour.
  virtual std::vector<TwoState> reentry(const LetterT& at) const = 0;

  // As above, given the states in which the head leaves this letter to the
  // right when arriving from the left; may be a tighter superset.
  virtual std::vector<TwoState> reentry(const LetterT& at,
                                        const std::vector<TwoState>& exits) const {
    (void)exits;
    return reentry(at);
  }

  // Necessary condition for a prefix to extend to an accepted word, given
  // its rightward exits and the sorted re-entry states from which the head
  // comes back out to the right. Prefixes failing it are dropped during
  // conversion.
  virtual bool prefixViable(const std::vector<TwoState>& exits,
                            const std::vector<TwoState>& returning) const {
    (void)exits;
    (void)returning;
    return true;
  }
};

// Reachability over (state, head position) on the delimited word.
template <class Sym, class Hint>
bool twoNfaMembership(const TwoNfa<Sym, Hint>& m, const std::vector<Sym>& w) {
  for (const Sym& s : w) {
    if (!m.source().contains(s))
      throw UnknownSymbol("symbol '" + m.source().name(s) + "' not in source");
  }
  using LetterT = Letter<Sym>;
  std::size_t n = w.size();
  auto letter = [&](std::size_t pos) {
    if (pos == 0) return LetterT::leftEnd();
    if (pos == n + 1) return LetterT::rightEnd();
    return LetterT::of(w[pos - 1]);
  };
  std::vector<std::unordered_set<TwoState>> seen(n + 2);
  std::vector<std::pair<TwoState, std::size_t>> stack{{m.initial(), 0}};
  seen[0].insert(m.initial());
  std::vector<TwoMove> buf;
  while (!stack.empty()) {
    auto [s, pos] = stack.back();
    stack.pop_back();
    buf.clear();
    m.moves(s, letter(pos), buf);
    for (const TwoMove& mv : buf) {
      if (pos == n + 1 && mv.dir == Dir::R) {
        if (m.isFinal(s)) return true;
        continue;
      }
      if (pos == 0 && mv.dir == Dir::L) continue;
      std::size_t np = pos + static_cast<int>(mv.dir);
      if (seen[np].insert(mv.to).second) stack.emplace_back(mv.to, np);
    }
  }
  return false;
}

struct ConversionOptions {
  std::size_t maxBehaviors = 50'000'000;
  int threads = 0;  // 0 = threadCount()
  bool serial = false;
  std::function<void(std::size_t explored, std::size_t interned)> progress;
};

struct ConversionStats {
  std::size_t behaviors = 0;
  std::size_t symbolsTried = 0;
  std::size_t arcs = 0;
};

namespace detail {

// Crossing behaviour of a prefix ▷u: the states of the first rightward exit
// when started at ▷, and for each state re-entering u's last cell from the
// right the set of states of the next rightward exit.
struct Behavior {
  std::vector<TwoState> exits;
  std::vector<TwoState> keys;
  std::vector<std::vector<TwoState>> table;

  std::string serialize() const {
    std::vector<TwoState> flat;
    flat.push_back(exits.size());
    flat.insert(flat.end(), exits.begin(), exits.end());
    flat.push_back(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      flat.push_back(keys[i]);
      flat.push_back(table[i].size());
      flat.insert(flat.end(), table[i].begin(), table[i].end());
    }
    std::string out(flat.size() * sizeof(TwoState), '\0');
    std::memcpy(out.data(), flat.data(), out.size());
    return out;
  }

  const std::vector<TwoState>* lookup(TwoState s) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), s);
    if (it == keys.end() || *it != s) return nullptr;
    return &table[it - keys.begin()];
  }

  std::vector<TwoState> live() const {
    std::vector<TwoState> out = exits;
    for (const auto& v : table) out.insert(out.end(), v.begin(), v.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

template <class Sym, class Hint>
class Converter {
 public:
  using LetterT = Letter<Sym>;

  explicit Converter(const TwoNfa<Sym, Hint>& m) : m_(m) {}

  // Runs the head from `start` on letter `at` until it leaves rightwards;
  // leftward excursions are resolved through `prev`. Sets *accepted when a
  // final state falls off the right end-marker.
  std::vector<TwoState> closure(const LetterT& at,
                                const std::vector<TwoState>& start,
                                const Behavior* prev, bool* accepted) const {
    std::vector<TwoState> exits;
    thread_local std::vector<TwoState> stack, seen;
    thread_local std::vector<TwoMove> buf;
    stack.clear();
    seen.clear();
    auto visit = [&](TwoState s) {
      if (std::find(seen.begin(), seen.end(), s) != seen.end()) return;
      seen.push_back(s);
      stack.push_back(s);
    };
    for (TwoState s : start) visit(s);
    while (!stack.empty()) {
      TwoState s = stack.back();
      stack.pop_back();
      buf.clear();
      m_.moves(s, at, buf);
      for (const TwoMove& mv : buf) {
        switch (mv.dir) {
          case Dir::R:
            if (at.kind == LetterT::kRightEnd) {
              if (m_.isFinal(s) && accepted) *accepted = true;
            } else {
              exits.push_back(mv.to);
            }
            break;
          case Dir::S:
            visit(mv.to);
            break;
          case Dir::L: {
            if (!prev) break;
            // Absent keys have no rightward exit.
            if (const std::vector<TwoState>* back = prev->lookup(mv.to))
              for (TwoState t : *back) visit(t);
            break;
          }
        }
      }
    }
    std::sort(exits.begin(), exits.end());
    exits.erase(std::unique(exits.begin(), exits.end()), exits.end());
    return exits;
  }

  Behavior extend(const Behavior* prev, const LetterT& at) const {
    Behavior b;
    std::vector<TwoState> start =
        prev ? prev->exits : std::vector<TwoState>{m_.initial()};
    b.exits = closure(at, start, prev, nullptr);
    if (b.exits.empty()) return b;
    b.keys = m_.reentry(at, b.exits);
    std::sort(b.keys.begin(), b.keys.end());
    b.keys.erase(std::unique(b.keys.begin(), b.keys.end()), b.keys.end());
    std::vector<TwoState> keys;
    for (TwoState k : b.keys) {
      std::vector<TwoState> v = closure(at, {k}, prev, nullptr);
      if (v.empty()) continue;
      keys.push_back(k);
      b.table.push_back(std::move(v));
    }
    b.keys = std::move(keys);
    return b;
  }

  bool acceptsAtEnd(const Behavior& b) const {
    bool acc = false;
    closure(LetterT::rightEnd(), b.exits, &b, &acc);
    return acc;
  }

  // Successors of one behaviour: (symbol name, successor) in enumeration
  // order, dead successors dropped.
  std::vector<std::pair<std::string, Behavior>> successors(
      const Behavior& b, std::size_t* tried) const {
    std::vector<std::pair<std::string, Behavior>> out;
    Hint h = m_.hint(b.live());
    m_.source().enumerate(h, [&](const Sym& s) {
      ++*tried;
      Behavior nb = extend(&b, LetterT::of(s));
      if (nb.exits.empty() || !m_.prefixViable(nb.exits, nb.keys)) return;
      out.emplace_back(m_.source().name(s), std::move(nb));
    });
    return out;
  }

 private:
  const TwoNfa<Sym, Hint>& m_;
};

}  // namespace detail

// One-way automaton equivalent to m. States are the crossing behaviours of
// reachable prefixes, numbered in breadth-first discovery order.
template <class Sym, class Hint>
Nfa twoNfaToNfa(const TwoNfa<Sym, Hint>& m, const ConversionOptions& opt = {},
                ConversionStats* stats = nullptr) {
  if (!m.source().finite())
    throw InvalidArgument("symbol source is not finite");
  using LetterT = Letter<Sym>;
  detail::Converter<Sym, Hint> conv(m);

  std::vector<detail::Behavior> behaviors;
  std::unordered_map<std::string, StateId> ids;
  std::vector<std::string> alphabet;
  std::unordered_map<std::string, SymId> symIds;
  std::vector<std::tuple<StateId, SymId, StateId>> arcs;

  auto intern = [&](detail::Behavior&& b) -> StateId {
    std::string key = b.serialize();
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (behaviors.size() >= opt.maxBehaviors)
      throw LimitExceeded("behaviour limit exceeded");
    StateId id = static_cast<StateId>(behaviors.size());
    ids.emplace(std::move(key), id);
    behaviors.push_back(std::move(b));
    return id;
  };
  auto symbolId = [&](const std::string& name) {
    auto [it, fresh] = symIds.emplace(name, alphabet.size());
    if (fresh) alphabet.push_back(name);
    return it->second;
  };

  std::size_t tried = 0;
  detail::Behavior start = conv.extend(nullptr, LetterT::leftEnd());
  bool live = !start.exits.empty();
  if (live) intern(std::move(start));

  int threads = opt.serial ? 1 : (opt.threads > 0 ? opt.threads : threadCount());
  std::size_t done = 0;
  while (done < behaviors.size()) {
    if (opt.serial) {
      auto succ = conv.successors(behaviors[done], &tried);
      for (auto& [name, b] : succ) {
        SymId c = symbolId(name);
        StateId to = intern(std::move(b));
        arcs.emplace_back(static_cast<StateId>(done), c, to);
      }
      ++done;
    } else {
      std::size_t lo = done, hi = behaviors.size();
      std::vector<std::vector<std::pair<std::string, detail::Behavior>>> succ(
          hi - lo);
      std::vector<std::size_t> counts(hi - lo, 0);
      std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
      for (std::size_t i = lo; i < hi; ++i) {
        try {
          succ[i - lo] = conv.successors(behaviors[i], &counts[i - lo]);
        } catch (...) {
#pragma omp critical(slt_two_nfa_failure)
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
      for (std::size_t i = lo; i < hi; ++i) {
        tried += counts[i - lo];
        for (auto& [name, b] : succ[i - lo]) {
          SymId c = symbolId(name);
          StateId to = intern(std::move(b));
          arcs.emplace_back(static_cast<StateId>(i), c, to);
        }
      }
      done = hi;
    }
    if (opt.progress) opt.progress(done, behaviors.size());
  }

  Nfa out(alphabet);
  if (!live) {
    out.addState(true, false);
    if (stats) *stats = {0, tried, 0};
    return out;
  }
  for (StateId i = 0; i < behaviors.size(); ++i) {
    out.addState(i == 0, conv.acceptsAtEnd(behaviors[i]));
  }
  for (auto& [from, c, to] : arcs) out.addArc(from, c, to);
  if (stats) *stats = {behaviors.size(), tried, arcs.size()};
  Nfa t = trim(out);
  if (t.stateCount() == 0) {
    Nfa empty(std::vector<std::string>{});
    empty.addState(true, false);
    return empty;
  }
  std::vector<bool> used(alphabet.size(), false);
  for (StateId s = 0; s < t.stateCount(); ++s)
    for (const Arc& a : t.arcs(s)) used[a.sym] = true;
  std::vector<std::string> keep;
  for (SymId c = 0; c < alphabet.size(); ++c)
    if (used[c]) keep.push_back(alphabet[c]);
  return keep.size() == alphabet.size() ? t : restrictAlphabet(t, keep);
}

// A two-way automaton given by an explicit table over a listed alphabet.
// Symbols are indices into the alphabet.
class ExplicitTwoNfa : public TwoNfa<SymId, std::monostate> {
 public:
  enum : SymId { kLeft = kEpsilon - 1, kRight = kEpsilon - 2 };

  ExplicitTwoNfa(std::vector<std::string> alphabet, std::size_t states,
                 TwoState initial, std::vector<bool> finals)
      : source_(std::move(alphabet)),
        states_(states),
        initial_(initial),
        finals_(std::move(finals)) {}

  // sym may be kLeft or kRight for the end-markers.
  void add(TwoState from, SymId sym, TwoState to, Dir d) {
    if (sym == kLeft && d == Dir::L) return;
    if (sym == kRight && d == Dir::R && !finals_.at(from)) return;
    table_[{from, sym}].push_back({to, d});
  }

  std::size_t stateCount() const { return states_; }
  const std::vector<std::string>& alphabet() const { return source_.names; }

  TwoState initial() const override { return initial_; }
  bool isFinal(TwoState s) const override { return finals_.at(s); }
  void moves(TwoState s, const LetterT& at,
             std::vector<TwoMove>& out) const override {
    SymId c = at.kind == LetterT::kLeftEnd   ? SymId(kLeft)
              : at.kind == LetterT::kRightEnd ? SymId(kRight)
                                               : *at.sym;
    auto it = table_.find({s, c});
    if (it != table_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }
  const SymbolSource<SymId, std::monostate>& source() const override {
    return source_;
  }
  using TwoNfa<SymId, std::monostate>::reentry;
  std::vector<TwoState> reentry(const LetterT&) const override {
    std::vector<TwoState> all(states_);
    for (std::size_t i = 0; i < states_; ++i) all[i] = i;
    return all;
  }

 private:
  struct Source : SymbolSource<SymId, std::monostate> {
    explicit Source(std::vector<std::string> n) : names(std::move(n)) {}
    bool finite() const override { return true; }
    bool contains(const SymId& s) const override { return s < names.size(); }
    void enumerate(const std::monostate&,
                   const std::function<void(const SymId&)>& f) const override {
      for (SymId i = 0; i < names.size(); ++i) f(i);
    }
    std::string name(const SymId& s) const override {
      return s < names.size() ? names[s] : "#" + std::to_string(s);
    }
    std::vector<std::string> names;
  };

  struct KeyHash {
    std::size_t operator()(const std::pair<TwoState, SymId>& k) const {
      return std::hash<TwoState>()(k.first * 1000003u + k.second);
    }
  };

  Source source_;
  std::size_t states_;
  TwoState initial_;
  std::vector<bool> finals_;
  std::unordered_map<std::pair<TwoState, SymId>, std::vector<TwoMove>, KeyHash>
      table_;
};

}  // namespace slt

#endif  // SLT_FSM_TWO_NFA_HPP_
