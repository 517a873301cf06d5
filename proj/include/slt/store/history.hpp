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

#ifndef SLT_STORE_HISTORY_HPP_
#define SLT_STORE_HISTORY_HPP_

#include <cstdint>
#include <deque>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "slt/fsm/gsm.hpp"
#include "slt/fsm/two_nfa.hpp"
#include "slt/machine/computation.hpp"
#include "slt/store/column.hpp"

namespace slt {

using HistoryWord = std::vector<ColumnSymbol>;

// Two-way automaton over history words. A left-to-right sweep checks the
// snapshot row, the link structure and the crossing bound; the head then
// rewinds and walks the linked list replaying transitions of the machine.
class HistoryTwoNfa : public TwoNfa<ColumnSymbol, ColumnPattern> {
 public:
  HistoryTwoNfa(const Machine& m, std::size_t k, std::size_t maxCrossings);

  TwoState initial() const override;
  bool isFinal(TwoState s) const override;
  void moves(TwoState s, const LetterT& at,
             std::vector<TwoMove>& out) const override;
  const ColumnSource& source() const override { return source_; }
  ColumnPattern hint(const std::vector<TwoState>& live) const override;
  std::vector<TwoState> reentry(const LetterT& at) const override;
  std::vector<TwoState> reentry(const LetterT& at,
                                const std::vector<TwoState>& exits) const override;
  bool prefixViable(const std::vector<TwoState>& exits,
                    const std::vector<TwoState>& returning) const override;

  const Machine& machine() const { return m_; }
  std::size_t tracks() const { return source_.tracks(); }

  // Human-readable form of a control state.
  std::string describe(TwoState s) const;

 private:
  struct Sweep;
  TwoState intern(const Sweep& w) const;
  Sweep sweepOf(TwoState s) const;
  void sweep(TwoState s, const LetterT& at, std::vector<TwoMove>& out) const;
  void walkerKeys(const ColumnSymbol& c, std::uint64_t qsnap, bool anySnap,
                  std::vector<TwoState>& out) const;
  void walk(TwoState s, const ColumnSymbol& c, std::vector<TwoMove>& out) const;
  template <class Snap>
  void sojourn(TwoState s, const HistoryNode& node, TapeSym cur0, Snap snapshotOk,
               std::vector<TwoMove>& out) const;
  bool nodeFeasible(const ColumnSymbol& c, std::size_t j,
                    const std::vector<TwoState>& fromLeft,
                    std::uint64_t qsnap) const;

  Machine m_;
  ColumnSource source_;
  std::size_t r_;
  std::vector<std::vector<std::size_t>> byStateRead_;
  std::vector<bool> leftTarget_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, TwoState> sweepIds_;
  mutable std::deque<std::string> sweeps_;
};

std::unique_ptr<HistoryTwoNfa> buildHistoryTwoNfa(const Machine& m,
                                                  std::size_t k);
std::unique_ptr<HistoryTwoNfa> buildHistoryTwoNfa(const Machine& m,
                                                  std::size_t k,
                                                  std::size_t maxCrossings);

// False when a column is outside the automaton's alphabet.
bool historyAccepts(const HistoryTwoNfa& h, const HistoryWord& w);

// Throws SojournOverflow when some cell has more than k sojourns.
HistoryWord encodeHistory(const Machine& m, const Computation& c,
                          std::size_t snapshotIndex, std::size_t k);

// One column name per line.
std::string historyText(const ColumnSource& s, const HistoryWord& w);
HistoryWord parseHistoryText(const ColumnSource& s, const std::string& text);

// Copies the snapshot row: state, tape cells with the head after the marked
// one, nothing for pad.
Gsm extractionGsm(const Machine& m);
std::vector<std::string> extract(const Machine& m, const HistoryWord& w);

struct StoreNfaOptions {
  ConversionOptions conversion;
};

// Store configurations of r-crossing accepting computations.
Nfa storeNfa(const Machine& m, std::size_t r, const StoreNfaOptions& opt = {},
             ConversionStats* stats = nullptr);

}  // namespace slt

#endif  // SLT_STORE_HISTORY_HPP_
