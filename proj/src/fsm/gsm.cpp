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

#include "slt/fsm/gsm.hpp"

#include <deque>
#include <map>
#include <memory>
#include <set>
#include <tuple>

#include "slt/error.hpp"

namespace slt {

Gsm::Gsm(std::size_t stateCount, StateId initial, std::vector<bool> finals,
         std::vector<std::string> outputAlphabet, Step step, Accepts inputOk)
    : stateCount_(stateCount),
      initial_(initial),
      finals_(std::move(finals)),
      output_(std::move(outputAlphabet)),
      step_(std::move(step)),
      inputOk_(std::move(inputOk)) {
  if (initial_ >= stateCount_ || finals_.size() != stateCount_) {
    throw InvalidArgument("gsm state data inconsistent");
  }
}

Gsm Gsm::tabular(std::size_t stateCount, StateId initial,
                 std::vector<bool> finals,
                 std::vector<std::string> inputAlphabet,
                 std::vector<std::string> outputAlphabet,
                 std::vector<std::tuple<StateId, std::string, StateId,
                                        std::vector<std::string>>> table) {
  using Key = std::pair<StateId, std::string>;
  auto map = std::make_shared<std::map<Key, std::vector<GsmMove>>>();
  for (auto& [from, in, to, out] : table) {
    (*map)[{from, in}].push_back({to, std::move(out)});
  }
  auto inputs = std::make_shared<std::set<std::string>>(inputAlphabet.begin(),
                                                        inputAlphabet.end());
  return Gsm(
      stateCount, initial, std::move(finals), std::move(outputAlphabet),
      [map](StateId s, const std::string& in) {
        auto it = map->find({s, in});
        return it == map->end() ? std::vector<GsmMove>{} : it->second;
      },
      [inputs](const std::string& in) { return inputs->count(in) > 0; });
}

Gsm Gsm::identity(const std::vector<std::string>& alphabet) {
  std::vector<std::tuple<StateId, std::string, StateId, std::vector<std::string>>>
      table;
  for (const auto& s : alphabet) table.emplace_back(0, s, 0, std::vector{s});
  return tabular(1, 0, {true}, alphabet, alphabet, std::move(table));
}

Nfa gsmImage(const Nfa& a, const Gsm& g) {
  for (const auto& s : a.alphabet()) {
    if (!g.acceptsInput(s))
      throw AlphabetMismatch("gsm does not read symbol '" + s + "'");
  }
  Nfa out(g.outputAlphabet());
  // Tabulate g on a's alphabet once per gsm state.
  std::vector<std::vector<std::vector<std::pair<StateId, Word>>>> moves(
      g.stateCount(),
      std::vector<std::vector<std::pair<StateId, Word>>>(a.alphabet().size()));
  std::vector<std::vector<bool>> done(g.stateCount(),
                                      std::vector<bool>(a.alphabet().size()));
  auto movesFor = [&](StateId gs, SymId c) -> const auto& {
    if (!done[gs][c]) {
      for (GsmMove& m : g.step(gs, a.alphabet()[c])) {
        Word w;
        for (const auto& t : m.output) {
          auto id = out.symbol(t);
          if (!id) throw AlphabetMismatch("gsm output '" + t + "' undeclared");
          w.push_back(*id);
        }
        moves[gs][c].emplace_back(m.to, std::move(w));
      }
      done[gs][c] = true;
    }
    return moves[gs][c];
  };
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto get = [&](StateId p, StateId q) {
    auto [it, fresh] = ids.emplace(std::make_pair(p, q), 0);
    if (fresh) {
      it->second = out.addState(false, a.isFinal(p) && g.isFinal(q));
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  for (StateId p : a.initialStates()) out.setInitial(get(p, g.initial()));
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    StateId from = ids.at({p, q});
    for (const Arc& arc : a.arcs(p)) {
      if (arc.sym == kEpsilon) {
        out.addArc(from, kEpsilon, get(arc.to, q));
        continue;
      }
      for (const auto& [q2, w] : movesFor(q, arc.sym)) {
        StateId to = get(arc.to, q2);
        if (w.empty()) {
          out.addArc(from, kEpsilon, to);
          continue;
        }
        StateId cur = from;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
          StateId mid = out.addState();
          out.addArc(cur, w[i], mid);
          cur = mid;
        }
        out.addArc(cur, w.back(), to);
      }
    }
  }
  return trim(out);
}

}  // namespace slt
