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

#include "slt/store/column.hpp"

#include <sstream>

#include "slt/error.hpp"

namespace slt {

namespace {

bool hasBegin(const ColumnSymbol& c) {
  return !c.tracks.empty() && c.tracks.front().predDir == Dir::S;
}

// Far-track choices for the next event on one side, given the previous one.
// Leaving after arriving lands on the neighbour's next sojourn; arriving
// after leaving comes from the same or a later one.
std::pair<int, int> farRange(const std::optional<LinkEvent>& last, bool out,
                             int k) {
  if (!last) return out ? std::pair{1, 1} : std::pair{1, k};
  if (last->out == out) return {1, 0};
  if (last->out) return {last->far, k};
  return {last->far + 1, last->far + 1};
}

bool sideOk(const std::vector<LinkEvent>& ev, std::size_t r, int k) {
  if (ev.size() > r) return false;
  std::optional<LinkEvent> last;
  for (const LinkEvent& e : ev) {
    auto [lo, hi] = farRange(last, e.out, k);
    if (e.far < lo || e.far > hi) return false;
    last = e;
  }
  return true;
}

std::string linkText(Dir d, int t) {
  if (d == Dir::S) return "-";
  return (d == Dir::R ? ">" : "<") + std::to_string(t);
}

}  // namespace

std::vector<LinkEvent> sideEvents(const ColumnSymbol& c, Dir side) {
  std::vector<LinkEvent> out;
  for (std::size_t j = 0; j < c.tracks.size(); ++j) {
    const HistoryNode& n = c.tracks[j];
    if (!n.used) continue;
    auto own = static_cast<std::uint8_t>(j + 1);
    if (n.predDir == side) out.push_back({false, own, n.predTrack});
    if (n.succDir == side) out.push_back({true, own, n.succTrack});
  }
  return out;
}

ColumnSource::ColumnSource(const Machine& m, std::size_t k,
                           std::size_t maxCrossings)
    : m_(m), k_(k), r_(maxCrossings) {
  if (k == 0) throw InvalidArgument("track count must be positive");
  if (k > 15) throw InvalidArgument("at most 15 tracks are supported");
  auto bad = [](const std::string& s) {
    return s.find_first_of("|:*[]") != std::string::npos || s == "." ||
           s == "~" || s == "-";
  };
  for (const auto& s : m.states)
    if (bad(s)) throw InvalidArgument("state name '" + s + "' not usable in columns");
  for (const auto& s : m.tapeAlphabet)
    if (bad(s)) throw InvalidArgument("tape symbol '" + s + "' not usable in columns");
  std::size_t g = m.tapeAlphabet.size();
  writeL_.assign(g, false);
  writeR_.assign(g, false);
  anySym_ = writableSymbols(m);
  anySym_[m.blank] = true;
  for (const Transition& t : m.transitions) {
    if (!t.worktape()) continue;
    if (t.move == Move::L) writeL_[t.write] = true;
    if (t.move == Move::R) writeR_[t.write] = true;
  }
  for (std::size_t a = 0; a < g; ++a)
    if (anySym_[a]) symList_.push_back(static_cast<TapeSym>(a));
}

bool ColumnSource::symAllowed(TapeSym a, Dir leave) const {
  if (a >= anySym_.size()) return false;
  if (leave == Dir::L) return writeL_[a];
  if (leave == Dir::R) return writeR_[a];
  return anySym_[a];
}

bool ColumnSource::contains(const ColumnSymbol& c) const {
  int k = static_cast<int>(k_);
  if (c.kind == Track0::State)
    return c.value < m_.stateCount() && !c.marked && c.tracks.empty();
  if (c.kind == Track0::Pad && (c.value != 0 || c.marked)) return false;
  if (c.kind == Track0::Tape && c.value >= m_.tapeAlphabet.size()) return false;
  std::size_t n = c.tracks.size();
  if (n > k_) return false;
  bool seenMarked = false;
  std::optional<TapeSym> content;
  for (std::size_t j = 0; j < n; ++j) {
    const HistoryNode& x = c.tracks[j];
    if (!x.used) return false;
    if ((x.predDir == Dir::S) != (x.predTrack == 0)) return false;
    if ((x.succDir == Dir::S) != (x.succTrack == 0)) return false;
    if (x.predTrack > k || x.succTrack > k) return false;
    if (x.predDir == Dir::S && j != 0) return false;
    if (x.succDir == Dir::S && j + 1 != n) return false;
    if (j + 1 < n && c.tracks[j + 1].predDir != x.succDir) return false;
    if (!symAllowed(x.sym, x.succDir)) return false;
    if (seenMarked && !x.marked) return false;
    seenMarked = seenMarked || x.marked;
    if (!x.marked) content = x.sym;
  }
  if (!sideOk(sideEvents(c, Dir::L), r_, k)) return false;
  if (!sideOk(sideEvents(c, Dir::R), r_, k)) return false;
  TapeSym cell = content.value_or(m_.blank);
  if (c.kind == Track0::Pad) return cell == m_.blank;
  if (c.marked) return seenMarked;
  return c.value == cell;
}

bool ColumnSource::matchesShape(const ColumnPattern& p,
                                const ColumnSymbol& c) const {
  std::uint8_t need;
  if (c.kind == Track0::State) need = kAllowState;
  else if (c.kind == Track0::Pad) need = kAllowPad;
  else if (c.marked) need = kAllowMarked;
  else if (c.value == m_.blank) need = kAllowBlankEdge;
  else need = kAllowTape;
  if (!(p.track0 & need)) return false;
  bool nodes = !c.tracks.empty();
  if (!p.allowNodes && nodes) return false;
  if (!p.allowBegin && hasBegin(c)) return false;
  if (!p.allowEnd && nodes && c.tracks.back().succDir == Dir::S) return false;
  std::vector<LinkEvent> left = sideEvents(c, Dir::L);
  if (p.left && left != *p.left) return false;
  if (p.beginLeft && nodes) {
    std::vector<LinkEvent> right = sideEvents(c, Dir::R);
    bool startHereOrLeft = *p.beginLeft || hasBegin(c);
    if (*p.beginLeft && left.empty()) return false;
    if (!startHereOrLeft && right.empty()) return false;
    if (!right.empty() && right.front().out != startHereOrLeft) return false;
  }
  for (const TrackConstraint& tc : p.tracks) {
    if (tc.track == 0 || tc.track > c.tracks.size()) return false;
    const HistoryNode& x = c.tracks[tc.track - 1];
    if (tc.sym && x.sym != *tc.sym) return false;
    if (tc.marked && x.marked != *tc.marked) return false;
    if (tc.succDir && x.succDir != *tc.succDir) return false;
    if (tc.succTrack && x.succTrack != *tc.succTrack) return false;
    if (tc.predDir && x.predDir != *tc.predDir) return false;
    if (tc.predTrack && x.predTrack != *tc.predTrack) return false;
  }
  return true;
}

bool ColumnSource::matches(const ColumnPattern& p, const ColumnSymbol& c) const {
  if (!matchesShape(p, c)) return false;
  if (p.nodeOk)
    for (std::size_t j = 0; j < c.tracks.size(); ++j)
      if (!p.nodeOk(c, j)) return false;
  return true;
}

void ColumnSource::fillTrack0(
    const ColumnPattern& p, ColumnSymbol& c,
    const std::function<void(const ColumnSymbol&)>& f) const {
  auto offer = [&](Track0 kind, std::uint32_t value, bool marked) {
    c.kind = kind;
    c.value = value;
    c.marked = marked;
    if (matchesShape(p, c) && contains(c)) f(c);
  };
  if (c.tracks.empty() && (p.track0 & kAllowState))
    for (MState q = 0; q < m_.stateCount(); ++q) offer(Track0::State, q, false);
  TapeSym cell = m_.blank;
  bool anyMarked = false;
  for (const HistoryNode& x : c.tracks) {
    if (!x.marked) cell = x.sym;
    anyMarked = anyMarked || x.marked;
  }
  offer(Track0::Tape, cell, false);
  if (cell == m_.blank) offer(Track0::Pad, 0, false);
  if (anyMarked && (p.track0 & kAllowMarked))
    for (TapeSym a : symList_) offer(Track0::Tape, a, true);
}

void ColumnSource::enumerate(
    const ColumnPattern& p,
    const std::function<void(const ColumnSymbol&)>& f) const {
  const std::vector<LinkEvent>* left = p.left ? &*p.left : nullptr;
  ColumnSymbol c;
  if (!left || left->empty()) fillTrack0(p, c, f);
  if (!p.allowNodes) return;

  struct Side {
    std::optional<LinkEvent> last;
    std::size_t count = 0;
  };
  // Depth-first over tracks. Each node fixes its directions, symbol and
  // mark first; link targets are only expanded for feasible nodes.
  struct Search {
    const ColumnSource& src;
    const ColumnPattern& p;
    const std::vector<LinkEvent>* left;
    ColumnSymbol& c;
    const std::function<void(const ColumnSymbol&)>& f;
    int k;

    bool leftDue(std::size_t li, std::size_t j, bool succ) const {
      if (!left || li >= left->size()) return false;
      const LinkEvent& e = (*left)[li];
      return e.own == j + 1 && e.out == succ;
    }

    using Next = std::function<void(std::size_t, Side, Side)>;
    void link(std::size_t j, bool succ, Dir d, std::size_t li, Side ls, Side rs,
              const Next& next) {
      HistoryNode& x = c.tracks[j];
      auto own = static_cast<std::uint8_t>(j + 1);
      auto set = [&](std::uint8_t far) {
        if (succ) x.succTrack = far;
        else x.predTrack = far;
      };
      if (d == Dir::S) {
        set(0);
        next(li, ls, rs);
        return;
      }
      Side& s = d == Dir::L ? ls : rs;
      if (s.count >= src.r_) return;
      if (d == Dir::L && left) {
        if (li >= left->size()) return;
        const LinkEvent& e = (*left)[li];
        if (e.out != succ || e.own != own) return;
        set(e.far);
        Side ns{e, s.count + 1};
        next(li + 1, ns, rs);
        return;
      }
      auto [lo, hi] = farRange(s.last, succ, k);
      for (int far = lo; far <= hi; ++far) {
        set(static_cast<std::uint8_t>(far));
        Side ns{LinkEvent{succ, own, static_cast<std::uint8_t>(far)}, s.count + 1};
        if (d == Dir::L) next(li, ns, rs);
        else next(li, ls, ns);
      }
    }

    void node(std::size_t j, std::size_t li, Side ls, Side rs) {
      c.tracks.emplace_back();
      std::vector<Dir> preds;
      if (j == 0) preds = {Dir::S, Dir::L, Dir::R};
      else preds = {c.tracks[j - 1].succDir};
      bool prevMarked = j > 0 && c.tracks[j - 1].marked;
      for (Dir pd : preds) {
        if (pd == Dir::S && !p.allowBegin) continue;
        if (pd != Dir::L && leftDue(li, j, false)) continue;
        std::size_t li2 = li + (pd == Dir::L && left ? 1 : 0);
        for (Dir sd : {Dir::L, Dir::R, Dir::S}) {
          if (sd == Dir::S && !p.allowEnd) continue;
          if (sd != Dir::L && leftDue(li2, j, true)) continue;
          for (TapeSym a : src.symList_) {
            if (!src.symAllowed(a, sd)) continue;
            for (int mk = prevMarked ? 1 : 0; mk <= 1; ++mk) {
              HistoryNode& x = c.tracks[j];
              x = HistoryNode{};
              x.predDir = pd;
              x.succDir = sd;
              x.sym = a;
              x.marked = mk == 1;
              if (p.nodeOk && !p.nodeOk(c, j)) continue;
              link(j, false, pd, li, ls, rs, [&](std::size_t l2, Side a2, Side b2) {
                link(j, true, sd, l2, a2, b2, [&](std::size_t l3, Side a3, Side b3) {
                  if (!left || l3 == left->size()) src.fillTrack0(p, c, f);
                  if (sd != Dir::S && static_cast<int>(j) + 1 < k)
                    node(j + 1, l3, a3, b3);
                });
              });
            }
          }
        }
      }
      c.tracks.pop_back();
    }
  };
  c.tracks.reserve(k_);
  Search{*this, p, left, c, f, static_cast<int>(k_)}.node(0, 0, Side{}, Side{});
}

std::string ColumnSource::name(const ColumnSymbol& c) const {
  std::string out;
  switch (c.kind) {
    case Track0::State:
      out = "[" + m_.states.at(c.value) + "]";
      break;
    case Track0::Pad:
      out = ".";
      break;
    case Track0::Tape:
      out = m_.tapeAlphabet.at(c.value) + (c.marked ? "*" : "");
      break;
  }
  for (const HistoryNode& x : c.tracks) {
    out += '|';
    if (!x.used) {
      out += '~';
      continue;
    }
    out += m_.tapeAlphabet.at(x.sym);
    if (x.marked) out += '*';
    out += ':' + linkText(x.succDir, x.succTrack) + ':' +
           linkText(x.predDir, x.predTrack);
  }
  return out;
}

ColumnSymbol ColumnSource::parse(const std::string& text) const {
  auto fail = [&](const std::string& why) -> ColumnSymbol {
    throw ParseError(0, "column '" + text + "': " + why);
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '|')) parts.push_back(part);
  if (!text.empty() && text.back() == '|') parts.push_back("");
  if (parts.empty()) return fail("empty");
  auto tape = [&](std::string s, bool& marked) -> TapeSym {
    marked = !s.empty() && s.back() == '*';
    if (marked) s.pop_back();
    auto a = m_.tapeIndex(s);
    if (!a) fail("unknown tape symbol '" + s + "'");
    return *a;
  };
  ColumnSymbol c;
  const std::string& t0 = parts[0];
  if (t0 == ".") {
    c = ColumnSymbol::pad();
  } else if (t0.size() >= 2 && t0.front() == '[' && t0.back() == ']') {
    auto q = m_.stateIndex(t0.substr(1, t0.size() - 2));
    if (!q) return fail("unknown state");
    c = ColumnSymbol::stateCell(*q);
  } else {
    bool mk;
    TapeSym a = tape(t0, mk);
    c = ColumnSymbol::tapeCell(a, mk);
  }
  auto linkOf = [&](const std::string& s, Dir& d, std::uint8_t& t) {
    if (s == "-") {
      d = Dir::S;
      t = 0;
      return;
    }
    if (s.size() < 2 || (s[0] != '<' && s[0] != '>')) fail("bad link '" + s + "'");
    d = s[0] == '>' ? Dir::R : Dir::L;
    try {
      int v = std::stoi(s.substr(1));
      if (v < 1 || v > 255) fail("bad track");
      t = static_cast<std::uint8_t>(v);
    } catch (const std::logic_error&) {
      fail("bad track");
    }
  };
  for (std::size_t i = 1; i < parts.size(); ++i) {
    HistoryNode x;
    if (parts[i] == "~") {
      x.used = false;
      c.tracks.push_back(x);
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ns(parts[i]);
    std::string g;
    while (std::getline(ns, g, ':')) f.push_back(g);
    if (f.size() != 3) return fail("node needs three fields");
    x.sym = tape(f[0], x.marked);
    linkOf(f[1], x.succDir, x.succTrack);
    linkOf(f[2], x.predDir, x.predTrack);
    c.tracks.push_back(x);
  }
  return c;
}

}  // namespace slt
