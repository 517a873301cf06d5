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

// Serial against parallel timings for the store construction and the
// brute-force oracle. Usage: slt_bench [repeats]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "slt/fsm/nfa.hpp"
#include "slt/machine/machine.hpp"
#include "slt/oracle/oracle.hpp"
#include "slt/parallel.hpp"
#include "slt/store/history.hpp"

using namespace slt;

namespace {

Machine fixture(const std::string& name) {
  return loadMachine(std::string(SLT_DATA_DIR) + "/fixtures/" + name + ".ntm");
}

double bestMs(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-24s %12.1f %12.1f %8.2f  %s\n", name, serial, parallel,
              serial / parallel, same ? "same" : "DIFFERENT");
}

void store(const char* name, const Machine& m, std::size_t r, int repeats) {
  Nfa a, b;
  StoreNfaOptions s, p;
  s.conversion.serial = true;
  double ts = bestMs(repeats, [&] { a = storeNfa(m, r, s); });
  double tp = bestMs(repeats, [&] { b = storeNfa(m, r, p); });
  row(name, ts, tp, equivalent(a, b));
}

void oracle(const char* name, const Machine& m, std::size_t n, int repeats) {
  OracleReport a, b;
  OracleOptions s, p;
  s.serial = true;
  double ts = bestMs(repeats, [&] { a = enumerateStore(m, n, 400, s); });
  double tp = bestMs(repeats, [&] { b = enumerateStore(m, n, 400, p); });
  row(name, ts, tp, reportLines(m, a) == reportLines(m, b));
}

}  // namespace

int main(int argc, char** argv) {
  int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads %d, best of %d\n", threadCount(), repeats);
  std::printf("%-24s %12s %12s %8s\n", "workload", "serial ms", "parallel ms", "speedup");
  Machine ex1 = fixture("ex1"), ex2 = fixture("ex2"), ex3 = fixture("ex3"),
          ex4 = fixture("ex4");
  store("store ex1 r=3", ex1, 3, repeats);
  store("store ex2 r=3", ex2, 3, repeats);
  store("store ex3 r=4", ex3, 4, repeats);
  store("store ex4 r=4", ex4, 4, repeats);
  oracle("oracle ex1 n=7", ex1, 7, repeats);
  oracle("oracle ex2 n=6", ex2, 6, repeats);
  oracle("oracle ex4 n=10", ex4, 10, repeats);
  return 0;
}
