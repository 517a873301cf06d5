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

#include "slt/store/history.hpp"

#include <cstring>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "slt/error.hpp"

namespace slt {

namespace {

enum Kind : std::uint64_t { kSweep, kRewind, kReadQ, kSeek, kWalk, kAccept };

constexpr int kKindShift = 61;
constexpr std::uint64_t kNoState = 0xFFFF;
constexpr std::size_t kMaxEvents = 15;

Kind kindOf(TwoState s) { return static_cast<Kind>(s >> kKindShift); }
TwoState withKind(Kind k, std::uint64_t payload) {
  return (static_cast<std::uint64_t>(k) << kKindShift) | payload;
}

struct Walker {
  std::uint64_t qsnap = kNoState;  // kNoState once the snapshot is taken
  MState p = 0;
  unsigned track = 0;
  bool post = false;
  bool consumed = false;

  TwoState pack() const {
    return withKind(kWalk, qsnap | std::uint64_t(p) << 16 |
                               std::uint64_t(track) << 32 |
                               std::uint64_t(post) << 40 |
                               std::uint64_t(consumed) << 41);
  }
  static Walker unpack(TwoState s) {
    Walker w;
    w.qsnap = s & 0xFFFF;
    w.p = static_cast<MState>(s >> 16 & 0xFFFF);
    w.track = static_cast<unsigned>(s >> 32 & 0xFF);
    w.post = s >> 40 & 1;
    w.consumed = s >> 41 & 1;
    return w;
  }
};

const TwoState kRewindState = withKind(kRewind, 0);
const TwoState kReadQState = withKind(kReadQ, 0);
const TwoState kAcceptState = withKind(kAccept, 0);

}  // namespace

// Sweep state: what the left-to-right pass remembers about the prefix.
struct HistoryTwoNfa::Sweep {
  unsigned t0 = 0;  // 0 state column due, 1 leading pad, 2 tape, 3 trailing pad
  bool edgeBlank = false, markedSeen = false, beginSeen = false,
       endSeen = false, hadNodes = false, closed = false;
  std::uint64_t qsnap = kNoState;  // state of the state column
  std::vector<LinkEvent> right;    // right interface of the last column

  std::string key() const {
    std::string k;
    k += char(t0 | edgeBlank << 2 | markedSeen << 3 | beginSeen << 4 |
              endSeen << 5 | hadNodes << 6 | closed << 7);
    k.append(reinterpret_cast<const char*>(&qsnap), sizeof qsnap);
    for (const LinkEvent& e : right) {
      k += char(e.out);
      k += char(e.own);
      k += char(e.far);
    }
    return k;
  }

  static Sweep fromKey(const std::string& k) {
    Sweep w;
    auto f = static_cast<unsigned char>(k[0]);
    w.t0 = f & 3;
    w.edgeBlank = f >> 2 & 1;
    w.markedSeen = f >> 3 & 1;
    w.beginSeen = f >> 4 & 1;
    w.endSeen = f >> 5 & 1;
    w.hadNodes = f >> 6 & 1;
    w.closed = f >> 7 & 1;
    std::memcpy(&w.qsnap, k.data() + 1, sizeof w.qsnap);
    for (std::size_t i = 1 + sizeof w.qsnap; i + 2 < k.size() + 0; i += 3)
      w.right.push_back({k[i] != 0, static_cast<std::uint8_t>(k[i + 1]),
                         static_cast<std::uint8_t>(k[i + 2])});
    return w;
  }
};

TwoState HistoryTwoNfa::intern(const Sweep& w) const {
  std::string k = w.key();
  {
    std::shared_lock lock(mu_);
    auto it = sweepIds_.find(k);
    if (it != sweepIds_.end()) return it->second;
  }
  std::unique_lock lock(mu_);
  auto it = sweepIds_.find(k);
  if (it != sweepIds_.end()) return it->second;
  TwoState id = withKind(kSweep, sweeps_.size());
  sweeps_.push_back(k);
  sweepIds_.emplace(std::move(k), id);
  return id;
}

HistoryTwoNfa::Sweep HistoryTwoNfa::sweepOf(TwoState s) const {
  std::shared_lock lock(mu_);
  return Sweep::fromKey(sweeps_.at(s & ((TwoState(1) << kKindShift) - 1)));
}

namespace {

bool hasBegin(const ColumnSymbol& c) {
  return !c.tracks.empty() && c.tracks.front().predDir == Dir::S;
}
bool hasEnd(const ColumnSymbol& c) {
  return !c.tracks.empty() && c.tracks.back().succDir == Dir::S;
}

template <class Sweep>
ColumnPattern patternOf(const Sweep& w) {
  ColumnPattern p;
  switch (w.t0) {
    case 0:
      p.track0 = kAllowState;
      break;
    case 1:
      p.track0 = kAllowPad | kAllowTape;
      break;
    case 2:
      p.track0 = kAllowTape | kAllowBlankEdge | (w.edgeBlank ? 0 : kAllowPad);
      break;
    default:
      p.track0 = kAllowPad;
  }
  if (w.t0 == 1 || w.t0 == 2)
    if (!w.markedSeen) p.track0 |= kAllowMarked;
  std::vector<LinkEvent> left;
  for (const LinkEvent& e : w.right) left.push_back({!e.out, e.far, e.own});
  p.left = std::move(left);
  p.allowNodes = !w.closed && w.t0 != 0;
  p.allowBegin = !w.beginSeen;
  p.allowEnd = !w.endSeen;
  p.beginLeft = w.beginSeen;
  return p;
}

}  // namespace

HistoryTwoNfa::HistoryTwoNfa(const Machine& m, std::size_t k,
                             std::size_t maxCrossings)
    : m_(m), source_(m, k, maxCrossings), r_(maxCrossings) {
  if (m.counters != 0)
    throw InvalidArgument("history construction needs a machine without counters");
  if (maxCrossings > kMaxEvents)
    throw InvalidArgument("crossing bound above " + std::to_string(kMaxEvents) +
                          " is not supported");
  if (m.stateCount() >= kNoState) throw InvalidArgument("too many states");
  std::size_t g = m.tapeAlphabet.size();
  byStateRead_.assign(m.stateCount() * g, {});
  leftTarget_.assign(m.stateCount(), false);
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const Transition& t = m.transitions[i];
    byStateRead_[t.from * g + t.read].push_back(i);
    if (t.move == Move::L) leftTarget_[t.to] = true;
  }
}

TwoState HistoryTwoNfa::initial() const { return intern(Sweep{}); }

bool HistoryTwoNfa::isFinal(TwoState s) const { return kindOf(s) == kAccept; }

ColumnPattern HistoryTwoNfa::hint(const std::vector<TwoState>& live) const {
  for (TwoState s : live) {
    if (kindOf(s) != kSweep) continue;
    Sweep w = sweepOf(s);
    ColumnPattern p = patternOf(w);
    auto fromLeft = std::make_shared<std::vector<TwoState>>();
    for (TwoState x : live)
      if (kindOf(x) == kWalk) fromLeft->push_back(x);
    auto cache = std::make_shared<std::unordered_map<std::uint64_t, bool>>();
    std::uint64_t qsnap = w.qsnap;
    p.nodeOk = [this, fromLeft, cache, qsnap](const ColumnSymbol& c,
                                              std::size_t j) {
      const HistoryNode& x = c.tracks[j];
      TapeSym cur0 = j >= 1 ? c.tracks[j - 1].sym : m_.blank;
      std::uint64_t key = j | std::uint64_t(cur0) << 8 |
                          std::uint64_t(x.sym) << 16 |
                          std::uint64_t(x.marked) << 24 |
                          std::uint64_t(int(x.succDir) + 1) << 25 |
                          std::uint64_t(int(x.predDir) + 1) << 27;
      auto it = cache->find(key);
      if (it != cache->end()) return it->second;
      bool ok = nodeFeasible(c, j, *fromLeft, qsnap);
      cache->emplace(key, ok);
      return ok;
    };
    return p;
  }
  ColumnPattern none;
  none.track0 = 0;
  none.allowNodes = false;
  return none;
}

void HistoryTwoNfa::sweep(TwoState s, const LetterT& at,
                          std::vector<TwoMove>& out) const {
  Sweep w = sweepOf(s);
  if (at.kind == LetterT::kLeftEnd) {
    out.push_back({s, Dir::R});
    return;
  }
  if (at.kind == LetterT::kRightEnd) {
    bool ok = (w.t0 == 3 || (w.t0 == 2 && !w.edgeBlank)) && w.markedSeen &&
              w.beginSeen && w.endSeen && w.right.empty();
    if (ok) out.push_back({kRewindState, Dir::L});
    return;
  }
  const ColumnSymbol& c = *at.sym;
  if (!source_.contains(c) || !source_.matches(patternOf(w), c)) return;
  Sweep n;
  if (w.t0 == 0) {
    n.t0 = 1;
    n.qsnap = c.value;
    out.push_back({intern(n), Dir::R});
    return;
  }
  n = w;
  if (c.kind == Track0::Pad) {
    if (w.t0 == 2) n.t0 = 3;
    n.edgeBlank = false;
  } else {
    n.t0 = 2;
    n.edgeBlank = !c.marked && c.value == m_.blank;
    n.markedSeen = w.markedSeen || c.marked;
  }
  bool nodes = !c.tracks.empty();
  n.beginSeen = w.beginSeen || hasBegin(c);
  n.endSeen = w.endSeen || hasEnd(c);
  n.hadNodes = w.hadNodes || nodes;
  n.right = sideEvents(c, Dir::R);
  n.closed = nodes ? n.right.empty() : (w.closed || w.hadNodes);
  if (n.right.size() > r_) return;
  out.push_back({intern(n), Dir::R});
}

template <class Snap>
void HistoryTwoNfa::sojourn(TwoState s, const HistoryNode& node, TapeSym cur0,
                            Snap snapshotOk, std::vector<TwoMove>& out) const {
  Walker w = Walker::unpack(s);
  std::size_t g = m_.tapeAlphabet.size();
  struct Item {
    MState p;
    TapeSym cur;
    bool post, consumed;
  };
  thread_local std::vector<Item> stack;
  thread_local std::vector<std::uint64_t> seen;
  stack.assign(1, Item{w.p, cur0, w.post, w.consumed});
  seen.clear();
  auto key = [](const Item& i) {
    return std::uint64_t(i.p) << 16 | std::uint64_t(i.cur) << 2 |
           std::uint64_t(i.post) << 1 | std::uint64_t(i.consumed);
  };
  seen.push_back(key(stack.back()));
  auto push = [&](const Item& i) {
    std::uint64_t k = key(i);
    if (std::find(seen.begin(), seen.end(), k) != seen.end()) return;
    seen.push_back(k);
    stack.push_back(i);
  };
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (!it.post && node.marked && it.p == w.qsnap && snapshotOk(it.cur))
      push({it.p, it.cur, true, it.consumed});
    if (node.succDir == Dir::S && it.post && node.marked && it.consumed &&
        m_.isFinal(it.p) && it.cur == node.sym)
      out.push_back({kAcceptState, Dir::S});
    for (std::size_t ti : byStateRead_[it.p * g + it.cur]) {
      const Transition& t = m_.transitions[ti];
      bool consumed = it.consumed;
      if (t.input == kEndMarker) {
        if (consumed) continue;
        consumed = true;
      } else if (t.input != kLambda && consumed) {
        continue;
      }
      if (t.move == Move::S) {
        push({t.to, t.write, it.post, consumed});
        continue;
      }
      Dir d = t.move == Move::L ? Dir::L : Dir::R;
      if (node.succDir != d || node.sym != t.write) continue;
      if (node.marked != it.post) continue;
      Walker nw{it.post ? kNoState : w.qsnap, t.to, node.succTrack, it.post,
                consumed};
      out.push_back({nw.pack(), d});
    }
  }
}

void HistoryTwoNfa::walk(TwoState s, const ColumnSymbol& c,
                         std::vector<TwoMove>& out) const {
  Walker w = Walker::unpack(s);
  if (w.track == 0 || w.track > c.tracks.size()) return;
  const HistoryNode& node = c.tracks[w.track - 1];
  if (!node.used) return;
  TapeSym cur0 = w.track >= 2 ? c.tracks[w.track - 2].sym : m_.blank;
  bool marked = c.kind == Track0::Tape && c.marked;
  sojourn(s, node, cur0,
          [&](TapeSym cur) { return marked && cur == c.value; }, out);
}

// Whether some walker arriving at track j can leave it again. Arrivals from
// the left come from the prefix; those from the right are not known yet.
bool HistoryTwoNfa::nodeFeasible(const ColumnSymbol& c, std::size_t j,
                                 const std::vector<TwoState>& fromLeft,
                                 std::uint64_t qsnap) const {
  const HistoryNode& node = c.tracks[j];
  TapeSym cur0 = j >= 1 ? c.tracks[j - 1].sym : m_.blank;
  thread_local std::vector<TwoState> arrivals;
  thread_local std::vector<TwoMove> out;
  arrivals.clear();
  out.clear();
  if (node.predDir == Dir::S) {
    arrivals.push_back(Walker{qsnap, m_.initial, 1, false, false}.pack());
  } else if (node.predDir == Dir::L) {
    for (TwoState s : fromLeft)
      if (Walker::unpack(s).track == j + 1) arrivals.push_back(s);
  } else {
    for (MState p = 0; p < m_.stateCount(); ++p) {
      if (!leftTarget_[p]) continue;
      for (int cons = 0; cons <= 1; ++cons) {
        arrivals.push_back(Walker{kNoState, p, unsigned(j + 1), true, cons == 1}.pack());
        arrivals.push_back(Walker{qsnap, p, unsigned(j + 1), false, cons == 1}.pack());
      }
    }
  }
  for (TwoState a : arrivals) {
    sojourn(a, node, cur0, [](TapeSym) { return true; }, out);
    if (!out.empty()) return true;
  }
  return false;
}

void HistoryTwoNfa::moves(TwoState s, const LetterT& at,
                          std::vector<TwoMove>& out) const {
  bool sym = at.kind == LetterT::kSymbol;
  switch (kindOf(s)) {
    case kSweep:
      sweep(s, at, out);
      break;
    case kRewind:
      if (at.kind == LetterT::kLeftEnd) out.push_back({kReadQState, Dir::R});
      else if (sym) out.push_back({kRewindState, Dir::L});
      break;
    case kReadQ:
      if (sym && at.sym->kind == Track0::State)
        out.push_back({withKind(kSeek, at.sym->value), Dir::R});
      break;
    case kSeek:
      if (!sym) break;
      if (hasBegin(*at.sym)) {
        Walker w{s & 0xFFFF, m_.initial, 1, false, false};
        out.push_back({w.pack(), Dir::S});
      } else {
        out.push_back({s, Dir::R});
      }
      break;
    case kWalk:
      if (sym) walk(s, *at.sym, out);
      break;
    case kAccept:
      if (at.kind != LetterT::kLeftEnd) out.push_back({kAcceptState, Dir::R});
      break;
  }
}

void HistoryTwoNfa::walkerKeys(const ColumnSymbol& c, std::uint64_t qsnap,
                               bool anySnap, std::vector<TwoState>& out) const {
  for (std::size_t t = 0; t < c.tracks.size(); ++t) {
    if (c.tracks[t].predDir != Dir::R) continue;
    for (MState p = 0; p < m_.stateCount(); ++p) {
      if (!leftTarget_[p]) continue;
      for (int cons = 0; cons <= 1; ++cons) {
        out.push_back(Walker{kNoState, p, unsigned(t + 1), true, cons == 1}.pack());
        if (!anySnap) {
          out.push_back(Walker{qsnap, p, unsigned(t + 1), false, cons == 1}.pack());
          continue;
        }
        for (MState q = 0; q < m_.stateCount(); ++q)
          out.push_back(Walker{q, p, unsigned(t + 1), false, cons == 1}.pack());
      }
    }
  }
}

std::vector<TwoState> HistoryTwoNfa::reentry(const LetterT& at) const {
  if (at.kind == LetterT::kRightEnd) return {};
  std::vector<TwoState> out{kRewindState};
  if (at.kind == LetterT::kSymbol) walkerKeys(*at.sym, 0, true, out);
  return out;
}

std::vector<TwoState> HistoryTwoNfa::reentry(
    const LetterT& at, const std::vector<TwoState>& exits) const {
  if (at.kind != LetterT::kSymbol) return reentry(at);
  // Walkers carry the state read from the state column, which the sweep
  // remembers.
  for (TwoState s : exits) {
    if (kindOf(s) != kSweep) continue;
    std::vector<TwoState> out{kRewindState};
    walkerKeys(*at.sym, sweepOf(s).qsnap, false, out);
    return out;
  }
  return reentry(at);
}

// The rewind must come back out, and so must the walker after each arrival
// from the right, since every node is on the walk.
bool HistoryTwoNfa::prefixViable(const std::vector<TwoState>& exits,
                                 const std::vector<TwoState>& returning) const {
  if (!std::binary_search(returning.begin(), returning.end(), kRewindState))
    return false;
  for (TwoState s : exits) {
    if (kindOf(s) != kSweep) continue;
    std::uint32_t need = 0, have = 0;
    for (const LinkEvent& e : sweepOf(s).right)
      if (!e.out) need |= 1u << e.own;
    for (TwoState k : returning)
      if (kindOf(k) == kWalk) have |= 1u << Walker::unpack(k).track;
    if ((need & ~have) != 0) return false;
  }
  return true;
}

std::string HistoryTwoNfa::describe(TwoState s) const {
  std::ostringstream o;
  switch (kindOf(s)) {
    case kSweep: {
      Sweep w = sweepOf(s);
      o << "sweep(t0=" << w.t0 << (w.markedSeen ? ",marked" : "")
        << (w.beginSeen ? ",begin" : "") << (w.endSeen ? ",end" : "")
        << (w.closed ? ",closed" : "") << ",right=";
      for (const LinkEvent& e : w.right)
        o << (e.out ? '>' : '<') << int(e.own) << '/' << int(e.far) << ' ';
      o << ')';
      break;
    }
    case kRewind:
      o << "rewind";
      break;
    case kReadQ:
      o << "readq";
      break;
    case kSeek:
      o << "seek(" << m_.states.at(s & 0xFFFF) << ')';
      break;
    case kWalk: {
      Walker w = Walker::unpack(s);
      o << "walk(" << (w.post ? "-" : m_.states.at(w.qsnap)) << ','
        << m_.states.at(w.p) << ",t" << w.track << (w.post ? ",post" : ",pre")
        << (w.consumed ? ",end" : "") << ')';
      break;
    }
    case kAccept:
      o << "accept";
      break;
  }
  return o.str();
}

std::unique_ptr<HistoryTwoNfa> buildHistoryTwoNfa(const Machine& m,
                                                  std::size_t k) {
  std::size_t r = k >= 1 ? (k - 1) / 2 : 0;
  return buildHistoryTwoNfa(m, k, std::min(r, kMaxEvents));
}

std::unique_ptr<HistoryTwoNfa> buildHistoryTwoNfa(const Machine& m,
                                                  std::size_t k,
                                                  std::size_t maxCrossings) {
  if (k == 0) throw InvalidArgument("track count must be positive");
  return std::make_unique<HistoryTwoNfa>(m, k, maxCrossings);
}

bool historyAccepts(const HistoryTwoNfa& h, const HistoryWord& w) {
  for (const ColumnSymbol& c : w)
    if (!h.source().contains(c)) return false;
  return twoNfaMembership(h, w);
}

HistoryWord encodeHistory(const Machine& m, const Computation& c,
                          std::size_t snapshotIndex, std::size_t k) {
  if (c.configs.empty()) throw InvalidArgument("empty computation");
  if (snapshotIndex >= c.configs.size())
    throw InvalidArgument("snapshot index past the end of the computation");
  if (k == 0) throw InvalidArgument("track count must be positive");
  std::size_t last = c.configs.size() - 1;
  long lo = *std::min_element(c.addresses.begin(), c.addresses.end());
  long hi = *std::max_element(c.addresses.begin(), c.addresses.end());
  auto contentAt = [&](std::size_t j, long a) -> TapeSym {
    const Config& x = c.configs[j];
    long i = a - (c.addresses[j] - static_cast<long>(x.head));
    if (i < 0 || i >= static_cast<long>(x.tape.size())) return m.blank;
    return x.tape[i];
  };

  struct Sojourn {
    long addr;
    std::size_t firstConfig, lastConfig;
    std::size_t rank;
  };
  std::vector<Sojourn> soj;
  std::map<long, std::size_t> counts;
  for (std::size_t j = 0; j <= last; ++j) {
    if (j == 0 || c.addresses[j] != c.addresses[j - 1]) {
      long a = c.addresses[j];
      std::size_t rank = ++counts[a];
      if (rank > k) throw SojournOverflow(a, rank);
      soj.push_back({a, j, j, rank});
    } else {
      soj.back().lastConfig = j;
    }
  }

  std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  HistoryWord w(width + 1);
  w[0] = ColumnSymbol::stateCell(c.configs[snapshotIndex].state);
  for (std::size_t i = 0; i < width; ++i) w[i + 1].tracks.assign(counts[lo + long(i)], {});
  for (std::size_t s = 0; s < soj.size(); ++s) {
    const Sojourn& x = soj[s];
    HistoryNode& n = w[x.addr - lo + 1].tracks[x.rank - 1];
    bool departs = s + 1 < soj.size();
    n.sym = contentAt(departs ? x.lastConfig + 1 : x.lastConfig, x.addr);
    n.marked = x.lastConfig >= snapshotIndex;
    if (departs) {
      const Sojourn& y = soj[s + 1];
      n.succDir = y.addr > x.addr ? Dir::R : Dir::L;
      n.succTrack = static_cast<std::uint8_t>(y.rank);
    }
    if (s > 0) {
      const Sojourn& y = soj[s - 1];
      n.predDir = y.addr > x.addr ? Dir::R : Dir::L;
      n.predTrack = static_cast<std::uint8_t>(y.rank);
    }
  }

  const Config& snap = c.configs[snapshotIndex];
  long base = c.addresses[snapshotIndex] - static_cast<long>(snap.head);
  for (std::size_t i = 0; i < width; ++i) {
    long a = lo + static_cast<long>(i);
    long t = a - base;
    ColumnSymbol& col = w[i + 1];
    if (t >= 0 && t < static_cast<long>(snap.tape.size())) {
      col.kind = Track0::Tape;
      col.value = snap.tape[t];
      col.marked = t == static_cast<long>(snap.head);
    } else {
      col.kind = Track0::Pad;
    }
  }
  return w;
}

std::string historyText(const ColumnSource& s, const HistoryWord& w) {
  std::string out;
  for (const ColumnSymbol& c : w) out += s.name(c) + "\n";
  return out;
}

HistoryWord parseHistoryText(const ColumnSource& s, const std::string& text) {
  HistoryWord w;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line.compare(b, 2, "//") == 0) continue;
    auto e = line.find_last_not_of(" \t\r");
    try {
      w.push_back(s.parse(line.substr(b, e - b + 1)));
    } catch (const ParseError& err) {
      throw ParseError(no, err.what());
    }
  }
  return w;
}

namespace {

std::map<std::string, std::vector<std::string>> track0Outputs(const Machine& m) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& q : m.states) out["[" + q + "]"] = {q};
  for (const auto& a : m.tapeAlphabet) {
    out[a] = {a};
    out[a + "*"] = {a, kHeadToken};
  }
  out["."] = {};
  return out;
}

std::string track0Of(const std::string& name) {
  return name.substr(0, name.find('|'));
}

}  // namespace

Gsm extractionGsm(const Machine& m) {
  auto table = std::make_shared<const std::map<std::string, std::vector<std::string>>>(
      track0Outputs(m));
  return Gsm(
      1, 0, {true}, m.storeAlphabet(),
      [table](StateId, const std::string& in) {
        auto it = table->find(track0Of(in));
        if (it == table->end()) return std::vector<GsmMove>{};
        return std::vector<GsmMove>{{0, it->second}};
      },
      [table](const std::string& in) { return table->count(track0Of(in)) > 0; });
}

std::vector<std::string> extract(const Machine& m, const HistoryWord& w) {
  std::vector<std::string> out;
  for (const ColumnSymbol& c : w) {
    switch (c.kind) {
      case Track0::State:
        out.push_back(m.states.at(c.value));
        break;
      case Track0::Tape:
        out.push_back(m.tapeAlphabet.at(c.value));
        if (c.marked) out.push_back(kHeadToken);
        break;
      case Track0::Pad:
        break;
    }
  }
  return out;
}

Nfa storeNfa(const Machine& m, std::size_t r, const StoreNfaOptions& opt,
             ConversionStats* stats) {
  if (r == 0) throw InvalidArgument("crossing bound must be positive");
  if (m.counters != 0)
    throw InvalidArgument("store automaton construction needs a machine without counters");
  std::size_t k = 2 * r + 1;
  if (k > 15) throw InvalidArgument("crossing bound too large for the column encoding");
  HistoryTwoNfa h(m, k, r);
  Nfa hist = twoNfaToNfa(h, opt.conversion, stats);
  return gsmImage(hist, extractionGsm(m));
}

}  // namespace slt
