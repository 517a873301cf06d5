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

#ifndef SLT_STORE_COLUMN_HPP_
#define SLT_STORE_COLUMN_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slt/fsm/two_nfa.hpp"
#include "slt/machine/machine.hpp"

namespace slt {

// One sojourn of the head at a cell. Dir::S stands for an absent link.
struct HistoryNode {
  bool used = true;
  TapeSym sym = 0;
  bool marked = false;
  Dir succDir = Dir::S;
  std::uint8_t succTrack = 0;
  Dir predDir = Dir::S;
  std::uint8_t predTrack = 0;

  bool operator==(const HistoryNode&) const = default;
};

enum class Track0 : std::uint8_t { State, Tape, Pad };

struct ColumnSymbol {
  Track0 kind = Track0::Pad;
  std::uint32_t value = 0;  // state or tape symbol
  bool marked = false;
  std::vector<HistoryNode> tracks;

  static ColumnSymbol stateCell(MState q) { return {Track0::State, q, false, {}}; }
  static ColumnSymbol tapeCell(TapeSym a, bool marked) {
    return {Track0::Tape, a, marked, {}};
  }
  static ColumnSymbol pad() { return {Track0::Pad, 0, false, {}}; }

  bool operator==(const ColumnSymbol&) const = default;
};

// A link crossing one side of a column, seen from the column: `out` when the
// head leaves through that side, `own` the track here, `far` the track in the
// neighbour.
struct LinkEvent {
  bool out = false;
  std::uint8_t own = 0;
  std::uint8_t far = 0;
  bool operator==(const LinkEvent&) const = default;
};

// Link events on the left or right side, in time order.
std::vector<LinkEvent> sideEvents(const ColumnSymbol& c, Dir side);

enum Track0Kinds : std::uint8_t {
  kAllowState = 1,
  kAllowTape = 2,
  kAllowMarked = 4,
  kAllowPad = 8,
  kAllowBlankEdge = 16,  // unmarked blank tape cell
  kAllowAnyTrack0 = 31,
};

struct TrackConstraint {
  std::uint8_t track = 1;
  std::optional<TapeSym> sym;
  std::optional<bool> marked;
  std::optional<Dir> succDir;
  std::optional<std::uint8_t> succTrack;
  std::optional<Dir> predDir;
  std::optional<std::uint8_t> predTrack;
};

// Partial description of a column. The default admits everything.
struct ColumnPattern {
  std::uint8_t track0 = kAllowAnyTrack0;
  std::optional<std::vector<LinkEvent>> left;  // exact left interface
  bool allowNodes = true;
  bool allowBegin = true;
  bool allowEnd = true;
  // When set, whether the computation starts strictly left of the column.
  std::optional<bool> beginLeft;
  std::vector<TrackConstraint> tracks;
  // Extra test on track j (0-based) once tracks 0..j are filled in.
  std::function<bool(const ColumnSymbol&, std::size_t)> nodeOk;
};

class ColumnSource : public SymbolSource<ColumnSymbol, ColumnPattern> {
 public:
  ColumnSource(const Machine& m, std::size_t k, std::size_t maxCrossings);

  bool finite() const override { return true; }
  bool contains(const ColumnSymbol& c) const override;
  void enumerate(const ColumnPattern& p,
                 const std::function<void(const ColumnSymbol&)>& f) const override;
  std::string name(const ColumnSymbol& c) const override;

  // Inverse of name(); throws ParseError(0, ...) on malformed text.
  ColumnSymbol parse(const std::string& text) const;
  bool matches(const ColumnPattern& p, const ColumnSymbol& c) const;

  const Machine& machine() const { return m_; }
  std::size_t tracks() const { return k_; }
  std::size_t maxCrossings() const { return r_; }

 private:
  bool matchesShape(const ColumnPattern& p, const ColumnSymbol& c) const;
  bool symAllowed(TapeSym a, Dir leave) const;
  void fillTrack0(const ColumnPattern& p, ColumnSymbol& c,
                  const std::function<void(const ColumnSymbol&)>& f) const;

  Machine m_;
  std::size_t k_;
  std::size_t r_;
  std::vector<bool> writeL_, writeR_, anySym_;
  std::vector<TapeSym> symList_;
};

}  // namespace slt

#endif  // SLT_STORE_COLUMN_HPP_
