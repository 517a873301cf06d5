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

#include "slt/fsm/nfa.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include "slt/error.hpp"

namespace slt {

namespace {

using StateSet = std::vector<StateId>;

struct PairHash {
  std::size_t operator()(const std::pair<StateId, StateId>& p) const {
    return (static_cast<std::size_t>(p.first) << 32) ^ p.second;
  }
};

struct SetHash {
  std::size_t operator()(const StateSet& s) const {
    std::size_t h = 1469598103934665603ull;
    for (StateId x : s) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace

Nfa::Nfa(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
  for (SymId i = 0; i < alphabet_.size(); ++i) {
    const std::string& s = alphabet_[i];
    if (s.empty() || s == "@" ||
        s.find_first_of(" \t\r\n") != std::string::npos) {
      throw InvalidArgument("bad alphabet symbol '" + s + "'");
    }
    if (!index_.emplace(s, i).second) {
      throw InvalidArgument("duplicate alphabet symbol '" + s + "'");
    }
  }
}

StateId Nfa::addState(bool initial, bool final) {
  arcs_.emplace_back();
  initial_.push_back(initial);
  final_.push_back(final);
  return static_cast<StateId>(arcs_.size() - 1);
}

void Nfa::addStates(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) addState();
}

void Nfa::addArc(StateId from, SymId sym, StateId to) {
  if (from >= arcs_.size() || to >= arcs_.size()) {
    throw InvalidArgument("arc endpoint out of range");
  }
  if (sym != kEpsilon && sym >= alphabet_.size()) {
    throw InvalidArgument("arc symbol out of range");
  }
  arcs_[from].push_back({sym, to});
}

std::size_t Nfa::arcCount() const {
  std::size_t n = 0;
  for (const auto& v : arcs_) n += v.size();
  return n;
}

std::vector<StateId> Nfa::initialStates() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < initial_.size(); ++s)
    if (initial_[s]) out.push_back(s);
  return out;
}

std::vector<StateId> Nfa::finalStates() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < final_.size(); ++s)
    if (final_[s]) out.push_back(s);
  return out;
}

std::optional<SymId> Nfa::symbol(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SymId Nfa::symbolOrThrow(const std::string& name) const {
  auto s = symbol(name);
  if (!s) throw UnknownSymbol("symbol '" + name + "' not in alphabet");
  return *s;
}

Word Nfa::encode(const std::vector<std::string>& tokens) const {
  Word w;
  w.reserve(tokens.size());
  for (const auto& t : tokens) w.push_back(symbolOrThrow(t));
  return w;
}

std::vector<std::string> Nfa::decode(const Word& w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (SymId s : w) out.push_back(alphabet_.at(s));
  return out;
}

std::string Nfa::render(const Word& w, const std::string& sep) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += alphabet_.at(w[i]);
  }
  return out;
}

bool Nfa::isDeterministic() const {
  if (initialStates().size() != 1) return false;
  for (const auto& v : arcs_) {
    std::vector<SymId> seen;
    for (const Arc& a : v) {
      if (a.sym == kEpsilon) return false;
      seen.push_back(a.sym);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      return false;
  }
  return true;
}

std::vector<StateId> epsilonClosure(const Nfa& a, std::vector<StateId> set) {
  std::vector<bool> in(a.stateCount(), false);
  std::vector<StateId> stack;
  for (StateId s : set) {
    if (!in[s]) {
      in[s] = true;
      stack.push_back(s);
    }
  }
  std::vector<StateId> out;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (const Arc& arc : a.arcs(s)) {
      if (arc.sym == kEpsilon && !in[arc.to]) {
        in[arc.to] = true;
        stack.push_back(arc.to);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<StateId> stepSet(const Nfa& a, const std::vector<StateId>& set,
                             SymId sym) {
  std::vector<StateId> next;
  for (StateId s : set)
    for (const Arc& arc : a.arcs(s))
      if (arc.sym == sym) next.push_back(arc.to);
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return epsilonClosure(a, std::move(next));
}

bool accepts(const Nfa& a, const Word& w) {
  StateSet cur = epsilonClosure(a, a.initialStates());
  for (SymId s : w) {
    if (cur.empty()) return false;
    cur = stepSet(a, cur, s);
  }
  return std::any_of(cur.begin(), cur.end(),
                     [&](StateId s) { return a.isFinal(s); });
}

bool accepts(const Nfa& a, const std::vector<std::string>& tokens) {
  return accepts(a, a.encode(tokens));
}

void requireSameAlphabet(const Nfa& a, const Nfa& b) {
  if (a.alphabet() != b.alphabet()) {
    throw AlphabetMismatch("automata have different alphabets");
  }
}

Nfa intersect(const Nfa& a, const Nfa& b) {
  requireSameAlphabet(a, b);
  Nfa out(a.alphabet());
  std::unordered_map<std::pair<StateId, StateId>, StateId, PairHash> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto get = [&](StateId p, StateId q) {
    auto [it, fresh] = ids.emplace(std::make_pair(p, q), 0);
    if (fresh) {
      it->second = out.addState(false, a.isFinal(p) && b.isFinal(q));
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  for (StateId p : a.initialStates())
    for (StateId q : b.initialStates()) out.setInitial(get(p, q));
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    StateId from = ids.at({p, q});
    for (const Arc& x : a.arcs(p)) {
      if (x.sym == kEpsilon) {
        out.addArc(from, kEpsilon, get(x.to, q));
        continue;
      }
      for (const Arc& y : b.arcs(q))
        if (y.sym == x.sym) out.addArc(from, x.sym, get(x.to, y.to));
    }
    for (const Arc& y : b.arcs(q))
      if (y.sym == kEpsilon) out.addArc(from, kEpsilon, get(p, y.to));
  }
  return out;
}

Nfa determinize(const Nfa& a) {
  Nfa out(a.alphabet());
  std::unordered_map<StateSet, StateId, SetHash> ids;
  std::vector<StateSet> sets;
  auto get = [&](StateSet s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    bool fin = std::any_of(s.begin(), s.end(),
                           [&](StateId x) { return a.isFinal(x); });
    StateId id = out.addState(false, fin);
    ids.emplace(s, id);
    sets.push_back(std::move(s));
    return id;
  };
  out.setInitial(get(epsilonClosure(a, a.initialStates())));
  for (StateId i = 0; i < sets.size(); ++i) {
    for (SymId c = 0; c < a.alphabet().size(); ++c) {
      StateSet next = stepSet(a, sets[i], c);
      StateId to = get(std::move(next));
      out.addArc(i, c, to);
    }
  }
  return out;
}

Nfa complement(const Nfa& a) {
  Nfa d = determinize(a);
  for (StateId s = 0; s < d.stateCount(); ++s) d.setFinal(s, !d.isFinal(s));
  return d;
}

Nfa difference(const Nfa& a, const Nfa& b) {
  requireSameAlphabet(a, b);
  return intersect(a, complement(b));
}

namespace {

// Copies b's states into out, shifted by the current state count.
StateId appendCopy(Nfa& out, const Nfa& b) {
  StateId base = static_cast<StateId>(out.stateCount());
  out.addStates(b.stateCount());
  for (StateId s = 0; s < b.stateCount(); ++s) {
    for (const Arc& arc : b.arcs(s)) out.addArc(base + s, arc.sym, base + arc.to);
  }
  return base;
}

}  // namespace

Nfa unite(const Nfa& a, const Nfa& b) {
  requireSameAlphabet(a, b);
  Nfa out(a.alphabet());
  for (const Nfa* x : {&a, &b}) {
    StateId base = appendCopy(out, *x);
    for (StateId s = 0; s < x->stateCount(); ++s) {
      out.setInitial(base + s, x->isInitial(s));
      out.setFinal(base + s, x->isFinal(s));
    }
  }
  return out;
}

Nfa concat(const Nfa& a, const Nfa& b) {
  requireSameAlphabet(a, b);
  Nfa out(a.alphabet());
  StateId ba = appendCopy(out, a);
  StateId bb = appendCopy(out, b);
  for (StateId s = 0; s < a.stateCount(); ++s) {
    out.setInitial(ba + s, a.isInitial(s));
    if (a.isFinal(s))
      for (StateId t : b.initialStates()) out.addArc(ba + s, kEpsilon, bb + t);
  }
  for (StateId s = 0; s < b.stateCount(); ++s) out.setFinal(bb + s, b.isFinal(s));
  return out;
}

Nfa star(const Nfa& a) {
  Nfa out(a.alphabet());
  StateId hub = out.addState(true, true);
  StateId base = appendCopy(out, a);
  for (StateId t : a.initialStates()) out.addArc(hub, kEpsilon, base + t);
  for (StateId f : a.finalStates()) out.addArc(base + f, kEpsilon, hub);
  return out;
}

Nfa trim(const Nfa& a) {
  std::size_t n = a.stateCount();
  std::vector<bool> fwd(n, false), bwd(n, false);
  std::vector<std::vector<StateId>> rev(n);
  for (StateId s = 0; s < n; ++s)
    for (const Arc& arc : a.arcs(s)) rev[arc.to].push_back(s);
  std::vector<StateId> stack = a.initialStates();
  for (StateId s : stack) fwd[s] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc& arc : a.arcs(s))
      if (!fwd[arc.to]) {
        fwd[arc.to] = true;
        stack.push_back(arc.to);
      }
  }
  stack = a.finalStates();
  for (StateId s : stack) bwd[s] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : rev[s])
      if (!bwd[p]) {
        bwd[p] = true;
        stack.push_back(p);
      }
  }
  Nfa out(a.alphabet());
  std::vector<StateId> map(n, kEpsilon);
  for (StateId s = 0; s < n; ++s)
    if (fwd[s] && bwd[s]) map[s] = out.addState(a.isInitial(s), a.isFinal(s));
  for (StateId s = 0; s < n; ++s) {
    if (map[s] == kEpsilon) continue;
    for (const Arc& arc : a.arcs(s))
      if (map[arc.to] != kEpsilon) out.addArc(map[s], arc.sym, map[arc.to]);
  }
  return out;
}

bool isEmpty(const Nfa& a) { return !shortestWord(a).has_value(); }

std::optional<Word> shortestWord(const Nfa& a) {
  std::size_t n = a.stateCount();
  std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::pair<StateId, SymId>> parent(n, {kEpsilon, kEpsilon});
  std::deque<StateId> dq;
  for (StateId s : a.initialStates()) {
    dist[s] = 0;
    dq.push_back(s);
  }
  std::vector<bool> done(n, false);
  while (!dq.empty()) {
    StateId s = dq.front();
    dq.pop_front();
    if (done[s]) continue;
    done[s] = true;
    if (a.isFinal(s)) {
      Word w;
      for (StateId cur = s; parent[cur].first != kEpsilon;
           cur = parent[cur].first) {
        if (parent[cur].second != kEpsilon) w.push_back(parent[cur].second);
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (const Arc& arc : a.arcs(s)) {
      std::size_t d = dist[s] + (arc.sym == kEpsilon ? 0 : 1);
      if (d < dist[arc.to]) {
        dist[arc.to] = d;
        parent[arc.to] = {s, arc.sym};
        if (arc.sym == kEpsilon)
          dq.push_front(arc.to);
        else
          dq.push_back(arc.to);
      }
    }
  }
  return std::nullopt;
}

std::optional<Word> separatingWord(const Nfa& a, const Nfa& b) {
  requireSameAlphabet(a, b);
  Nfa da = determinize(a);
  Nfa db = determinize(b);
  std::size_t k = a.alphabet().size();
  auto next = [](const Nfa& d, StateId s, SymId c) {
    for (const Arc& arc : d.arcs(s))
      if (arc.sym == c) return arc.to;
    return kEpsilon;
  };
  using P = std::pair<StateId, StateId>;
  std::unordered_map<P, std::pair<P, SymId>, PairHash> parent;
  std::deque<P> queue;
  P start{da.initialStates()[0], db.initialStates()[0]};
  parent.emplace(start, std::make_pair(start, kEpsilon));
  queue.push_back(start);
  while (!queue.empty()) {
    P cur = queue.front();
    queue.pop_front();
    if (da.isFinal(cur.first) != db.isFinal(cur.second)) {
      Word w;
      for (P p = cur; p != start; p = parent.at(p).first)
        w.push_back(parent.at(p).second);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (SymId c = 0; c < k; ++c) {
      P nxt{next(da, cur.first, c), next(db, cur.second, c)};
      if (parent.emplace(nxt, std::make_pair(cur, c)).second)
        queue.push_back(nxt);
    }
  }
  return std::nullopt;
}

bool equivalent(const Nfa& a, const Nfa& b) {
  return !separatingWord(a, b).has_value();
}

Nfa leftQuotientByWord(const Nfa& a, const Word& w) {
  for (SymId s : w)
    if (s >= a.alphabet().size())
      throw UnknownSymbol("quotient word symbol out of range");
  StateSet cur = epsilonClosure(a, a.initialStates());
  for (SymId s : w) cur = stepSet(a, cur, s);
  Nfa out = a;
  for (StateId s = 0; s < out.stateCount(); ++s) out.setInitial(s, false);
  for (StateId s : cur) out.setInitial(s);
  return out;
}

Nfa rightQuotientByRegular(const Nfa& a, const Nfa& r) {
  requireSameAlphabet(a, r);
  std::size_t na = a.stateCount(), nr = r.stateCount();
  auto id = [nr](StateId p, StateId q) {
    return static_cast<std::size_t>(p) * nr + q;
  };
  // Reverse arcs of the full product graph.
  std::vector<std::vector<std::size_t>> rev(na * nr);
  for (StateId p = 0; p < na; ++p) {
    for (StateId q = 0; q < nr; ++q) {
      std::size_t from = id(p, q);
      for (const Arc& x : a.arcs(p)) {
        if (x.sym == kEpsilon) {
          rev[id(x.to, q)].push_back(from);
          continue;
        }
        for (const Arc& y : r.arcs(q))
          if (y.sym == x.sym) rev[id(x.to, y.to)].push_back(from);
      }
      for (const Arc& y : r.arcs(q))
        if (y.sym == kEpsilon) rev[id(p, y.to)].push_back(from);
    }
  }
  std::vector<bool> co(na * nr, false);
  std::vector<std::size_t> stack;
  for (StateId p : a.finalStates())
    for (StateId q : r.finalStates()) {
      co[id(p, q)] = true;
      stack.push_back(id(p, q));
    }
  while (!stack.empty()) {
    std::size_t s = stack.back();
    stack.pop_back();
    for (std::size_t p : rev[s])
      if (!co[p]) {
        co[p] = true;
        stack.push_back(p);
      }
  }
  StateSet rinit = epsilonClosure(r, r.initialStates());
  Nfa out = a;
  for (StateId p = 0; p < na; ++p) {
    bool fin = std::any_of(rinit.begin(), rinit.end(),
                           [&](StateId q) { return co[id(p, q)]; });
    out.setFinal(p, fin);
  }
  return out;
}

Nfa restrictAlphabet(const Nfa& a, const std::vector<std::string>& keep) {
  Nfa out(keep);
  std::vector<SymId> map(a.alphabet().size(), kEpsilon);
  for (SymId c = 0; c < a.alphabet().size(); ++c) {
    if (auto s = out.symbol(a.alphabet()[c])) map[c] = *s;
  }
  out.addStates(a.stateCount());
  for (StateId s = 0; s < a.stateCount(); ++s) {
    out.setInitial(s, a.isInitial(s));
    out.setFinal(s, a.isFinal(s));
    for (const Arc& arc : a.arcs(s)) {
      if (arc.sym == kEpsilon)
        out.addArc(s, kEpsilon, arc.to);
      else if (map[arc.sym] != kEpsilon)
        out.addArc(s, map[arc.sym], arc.to);
    }
  }
  return out;
}

Nfa widenAlphabet(const Nfa& a, const std::vector<std::string>& target) {
  Nfa out(target);
  for (const auto& s : a.alphabet()) {
    if (!out.symbol(s))
      throw AlphabetMismatch("symbol '" + s + "' missing from target alphabet");
  }
  return restrictAlphabet(a, target);
}

std::vector<Word> wordsUpTo(const Nfa& a, std::size_t maxLen, std::size_t cap) {
  Nfa d = trim(determinize(a));
  std::vector<Word> out;
  if (d.stateCount() == 0) return out;
  std::size_t n = d.stateCount();
  // can[m][s]: some final state is reachable from s in exactly m steps.
  std::vector<std::vector<bool>> can(maxLen + 1, std::vector<bool>(n, false));
  for (StateId s = 0; s < n; ++s) can[0][s] = d.isFinal(s);
  for (std::size_t m = 1; m <= maxLen; ++m)
    for (StateId s = 0; s < n; ++s)
      for (const Arc& arc : d.arcs(s))
        if (can[m - 1][arc.to]) can[m][s] = true;
  std::vector<std::vector<Arc>> sorted(n);
  for (StateId s = 0; s < n; ++s) {
    sorted[s] = d.arcs(s);
    std::sort(sorted[s].begin(), sorted[s].end(),
              [](const Arc& x, const Arc& y) { return x.sym < y.sym; });
  }
  StateId start = d.initialStates()[0];
  Word cur;
  std::vector<std::pair<StateId, std::size_t>> stack;
  for (std::size_t len = 0; len <= maxLen && out.size() < cap; ++len) {
    if (!can[len][start]) continue;
    // Iterative DFS over exact-length paths in lexicographic order.
    cur.clear();
    stack.assign(1, {start, 0});
    while (!stack.empty() && out.size() < cap) {
      auto& [s, idx] = stack.back();
      std::size_t depth = stack.size() - 1;
      if (depth == len) {
        out.push_back(cur);
        stack.pop_back();
        if (!cur.empty()) cur.pop_back();
        continue;
      }
      if (idx >= sorted[s].size()) {
        stack.pop_back();
        if (!cur.empty()) cur.pop_back();
        continue;
      }
      const Arc& arc = sorted[s][idx++];
      if (!can[len - depth - 1][arc.to]) continue;
      cur.push_back(arc.sym);
      stack.push_back({arc.to, 0});
    }
  }
  return out;
}

Nfa singletonNfa(const std::vector<std::string>& alphabet, const Word& w) {
  Nfa out(alphabet);
  StateId cur = out.addState(true, false);
  for (SymId s : w) {
    StateId nxt = out.addState();
    out.addArc(cur, s, nxt);
    cur = nxt;
  }
  out.setFinal(cur);
  return out;
}

Nfa universalNfa(const std::vector<std::string>& alphabet) {
  Nfa out(alphabet);
  StateId s = out.addState(true, true);
  for (SymId c = 0; c < alphabet.size(); ++c) out.addArc(s, c, s);
  return out;
}

Nfa emptyNfa(const std::vector<std::string>& alphabet) {
  Nfa out(alphabet);
  out.addState(true, false);
  return out;
}

std::string toText(const Nfa& a) {
  std::ostringstream os;
  os << "nfa " << a.stateCount() << "\n";
  os << "alphabet";
  for (const auto& s : a.alphabet()) os << ' ' << s;
  os << "\ninitial";
  for (StateId s : a.initialStates()) os << ' ' << s;
  os << "\nfinal";
  for (StateId s : a.finalStates()) os << ' ' << s;
  os << "\n";
  for (StateId s = 0; s < a.stateCount(); ++s) {
    for (const Arc& arc : a.arcs(s)) {
      os << "t " << s << ' '
         << (arc.sym == kEpsilon ? std::string("@") : a.alphabet()[arc.sym])
         << ' ' << arc.to << "\n";
    }
  }
  return os.str();
}

namespace {

StateId parseStateId(const std::string& tok, std::size_t n, std::size_t line) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "expected state id, got '" + tok + "'");
  }
  if (pos != tok.size()) throw ParseError(line, "bad state id '" + tok + "'");
  if (v >= n) throw ParseError(line, "state id " + tok + " out of range");
  return static_cast<StateId>(v);
}

}  // namespace

Nfa parseNfa(std::istream& in) {
  std::string raw;
  std::size_t lineNo = 0;
  std::optional<std::size_t> count;
  std::optional<Nfa> out;
  bool sawAlphabet = false;
  std::vector<StateId> pendingInit, pendingFinal;
  while (std::getline(in, raw)) {
    ++lineNo;
    if (auto c = raw.find("//"); c != std::string::npos) raw.resize(c);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;
    std::vector<std::string> rest;
    for (std::string t; ls >> t;) rest.push_back(t);
    if (kw == "nfa") {
      if (count || rest.size() != 1) throw ParseError(lineNo, "bad nfa header");
      count = parseStateId(rest[0], std::numeric_limits<StateId>::max(), lineNo);
    } else if (kw == "alphabet") {
      if (!count || sawAlphabet)
        throw ParseError(lineNo, "alphabet must follow the nfa header once");
      try {
        out.emplace(rest);
      } catch (const InvalidArgument& e) {
        throw ParseError(lineNo, e.what());
      }
      out->addStates(*count);
      sawAlphabet = true;
    } else if (kw == "initial" || kw == "final") {
      if (!out) throw ParseError(lineNo, kw + " before alphabet");
      for (const auto& t : rest) {
        StateId s = parseStateId(t, *count, lineNo);
        if (kw == "initial")
          out->setInitial(s);
        else
          out->setFinal(s);
      }
    } else if (kw == "t") {
      if (!out) throw ParseError(lineNo, "transition before alphabet");
      if (rest.size() != 3) throw ParseError(lineNo, "transition needs 3 fields");
      StateId from = parseStateId(rest[0], *count, lineNo);
      StateId to = parseStateId(rest[2], *count, lineNo);
      SymId sym = kEpsilon;
      if (rest[1] != "@") {
        auto s = out->symbol(rest[1]);
        if (!s) throw ParseError(lineNo, "undeclared symbol '" + rest[1] + "'");
        sym = *s;
      }
      out->addArc(from, sym, to);
    } else {
      throw ParseError(lineNo, "unknown keyword '" + kw + "'");
    }
  }
  if (!out) throw ParseError(lineNo, "missing nfa header or alphabet");
  return *out;
}

Nfa parseNfaText(const std::string& text) {
  std::istringstream in(text);
  return parseNfa(in);
}

Nfa loadNfa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return parseNfa(in);
}

void saveNfa(const Nfa& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << toText(a);
}

std::string toDot(const Nfa& a) {
  std::ostringstream os;
  os << "digraph nfa {\n  rankdir=LR;\n";
  for (StateId s = 0; s < a.stateCount(); ++s) {
    os << "  " << s << " [shape=" << (a.isFinal(s) ? "doublecircle" : "circle")
       << "];\n";
    if (a.isInitial(s)) os << "  init" << s << " [shape=point];\n  init" << s
                           << " -> " << s << ";\n";
  }
  for (StateId s = 0; s < a.stateCount(); ++s) {
    for (const Arc& arc : a.arcs(s)) {
      std::string lab = arc.sym == kEpsilon ? "eps" : a.alphabet()[arc.sym];
      std::string esc;
      for (char c : lab) {
        if (c == '"' || c == '\\') esc += '\\';
        esc += c;
      }
      os << "  " << s << " -> " << arc.to << " [label=\"" << esc << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::vector<std::string> tokenize(const std::vector<std::string>& alphabet,
                                  const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string chunk; is >> chunk;) {
    std::size_t pos = 0;
    while (pos < chunk.size()) {
      std::size_t best = 0;
      for (const auto& s : alphabet) {
        if (s.size() > best && chunk.compare(pos, s.size(), s) == 0)
          best = s.size();
      }
      if (best == 0) {
        throw UnknownSymbol("cannot tokenize '" + chunk.substr(pos) + "'");
      }
      out.push_back(chunk.substr(pos, best));
      pos += best;
    }
  }
  return out;
}

}  // namespace slt
