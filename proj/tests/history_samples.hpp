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

#ifndef SLT_TESTS_HISTORY_SAMPLES_HPP_
#define SLT_TESTS_HISTORY_SAMPLES_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "slt/error.hpp"
#include "slt/oracle/oracle.hpp"
#include "slt/store/history.hpp"

namespace slt::testing {

// An accepting computation with a snapshot position.
struct HistorySample {
  Computation computation;
  std::size_t index = 0;
  std::size_t crossings = 0;
  std::size_t sojourns = 0;
};

inline std::size_t maxSojourns(const HistoryWord& w) {
  std::size_t n = 0;
  for (const ColumnSymbol& c : w) n = std::max(n, c.tracks.size());
  return n;
}

// Up to `want` pairs drawn uniformly from every (computation, index) pair on
// inputs up to inputBound, skipping computations with more than kMax
// sojourns on a cell.
inline std::vector<HistorySample> sampleHistories(const Machine& m,
                                                  std::size_t inputBound,
                                                  std::size_t stepBound,
                                                  std::size_t want,
                                                  std::size_t kMax,
                                                  unsigned seed) {
  struct Run {
    Input input;
    std::vector<std::size_t> path;
    std::size_t length, crossings;
  };
  std::vector<Run> runs;
  for (const Input& w : inputsUpTo(m, inputBound)) {
    forEachAccepting(m, w, stepBound, [&](const AcceptedPath& a) {
      runs.push_back({w, a.transitions, a.configs.size(), a.maxCrossing});
    });
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = 0; j < runs[i].length; ++j) pairs.emplace_back(i, j);
  }
  std::mt19937 rng(seed);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::vector<HistorySample> out;
  for (const auto& [i, j] : pairs) {
    if (out.size() >= want) break;
    Computation c = replay(m, runs[i].input, runs[i].path);
    try {
      HistoryWord h = encodeHistory(m, c, j, kMax);
      out.push_back({std::move(c), j, runs[i].crossings, maxSojourns(h)});
    } catch (const SojournOverflow&) {
    }
  }
  return out;
}

// Every encoding with k tracks of every accepting computation on inputs up
// to inputBound, as column-name text.
inline std::set<std::string> allHistoryTexts(const Machine& m,
                                             const ColumnSource& src,
                                             std::size_t inputBound,
                                             std::size_t stepBound) {
  std::set<std::string> out;
  for (const Input& w : inputsUpTo(m, inputBound)) {
    forEachAccepting(m, w, stepBound, [&](const AcceptedPath& a) {
      Computation c = replay(m, w, a.transitions);
      for (std::size_t j = 0; j < c.configs.size(); ++j) {
        try {
          out.insert(historyText(src, encodeHistory(m, c, j, src.tracks())));
        } catch (const SojournOverflow&) {
          return;
        }
      }
    });
  }
  return out;
}

// Changes one link field of one node to a different value.
inline HistoryWord mutateLink(const HistoryWord& w, std::size_t k,
                              std::mt19937& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> nodes;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w[i].tracks.size(); ++j) nodes.emplace_back(i, j);
  }
  HistoryWord out = w;
  if (nodes.empty()) return out;
  auto [i, j] = nodes[rng() % nodes.size()];
  HistoryNode& n = out[i].tracks[j];
  auto otherDir = [&](Dir d) {
    static constexpr Dir kDirs[] = {Dir::L, Dir::S, Dir::R};
    Dir e;
    do e = kDirs[rng() % 3];
    while (e == d);
    return e;
  };
  auto otherTrack = [&](std::uint8_t t) {
    if (k < 2) return static_cast<std::uint8_t>(t == 1 ? 0 : 1);
    std::uint8_t u;
    do u = static_cast<std::uint8_t>(1 + rng() % k);
    while (u == t);
    return u;
  };
  switch (rng() % 4) {
    case 0:
      n.succDir = otherDir(n.succDir);
      break;
    case 1:
      n.succTrack = otherTrack(n.succTrack);
      break;
    case 2:
      n.predDir = otherDir(n.predDir);
      break;
    default:
      n.predTrack = otherTrack(n.predTrack);
      break;
  }
  return out;
}

// Follows successor links from the begin node. True when some node is
// revisited, unreachable, or the walk never stops.
inline bool hasCycle(const HistoryWord& w) {
  std::size_t total = 0;
  std::vector<std::pair<std::size_t, std::size_t>> begins;
  for (std::size_t i = 0; i < w.size(); ++i) {
    total += w[i].tracks.size();
    if (!w[i].tracks.empty() && w[i].tracks[0].predDir == Dir::S) {
      begins.emplace_back(i, 0);
    }
  }
  if (total == 0) return false;
  if (begins.size() != 1) return true;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  auto at = begins[0];
  while (true) {
    if (!seen.insert(at).second) return true;
    const HistoryNode& n = w[at.first].tracks[at.second];
    if (n.succDir == Dir::S) break;
    long col = static_cast<long>(at.first) + static_cast<int>(n.succDir);
    if (col < 0 || col >= static_cast<long>(w.size())) return true;
    std::size_t t = n.succTrack;
    if (t == 0 || t > w[col].tracks.size()) return true;
    at = {static_cast<std::size_t>(col), t - 1};
  }
  return seen.size() != total;
}

}  // namespace slt::testing

#endif  // SLT_TESTS_HISTORY_SAMPLES_HPP_
