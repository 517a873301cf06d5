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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using slt::testing::fixturePath;

namespace {

struct Result {
  int exit = -1;
  std::string out;
};

std::string bin() {
  const char* b = std::getenv("SLT_BIN");
  REQUIRE(b != nullptr);
  return b;
}

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("slt-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result run(const std::string& args) {
  std::string cmd = bin() + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = ::pclose(p);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("store nfa matches the published display") {
  fs::path s = scratch() / "s.nfa";
  CHECK(run("store-nfa " + q(fixturePath("ex1.ntm")) + " -r 3 -o " + q(s) +
            " --manifest /dev/null").exit == 0);
  CHECK(run("equiv " + q(s) + " " + q(fixturePath("ex1-store.nfa")) +
            " --manifest /dev/null").exit == 0);
  CHECK(run("member " + q(s) + " 'q4 _^' --manifest /dev/null").exit == 1);
  CHECK(run("member " + q(s) + " 'q4 a_^' --manifest /dev/null").exit == 0);
  CHECK(run("empty " + q(s) + " --manifest /dev/null").exit == 1);
}

TEST_CASE("manifests are byte stable") {
  fs::path a = scratch() / "a.json", b = scratch() / "b.json";
  std::string args = "store-nfa " + q(fixturePath("ex1.ntm")) + " -r 2 -o /dev/null";
  CHECK(run(args + " --manifest " + q(a)).exit == 0);
  CHECK(run(args + " --manifest " + q(b)).exit == 0);
  std::string x = slurp(a);
  CHECK(x == slurp(b));
  CHECK(x.find("\"sha256\"") != std::string::npos);
  CHECK(x.find("\"exit\": 0") != std::string::npos);
  CHECK(x.find("wall_ms") == std::string::npos);
  CHECK(run(args + " --record-time --manifest " + q(b)).exit == 0);
  CHECK(slurp(b).find("wall_ms") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("").exit == 2);
  CHECK(run("frobnicate").exit == 2);
  CHECK(run("simulate").exit == 2);
  fs::path bad = scratch() / "bad.ntm";
  std::ofstream(bad) << "machine broken\nstates q0\n";
  CHECK(run("simulate " + q(bad) + " a --manifest /dev/null").exit == 3);
  CHECK(run("simulate " + q(fixturePath("ex1.ntm")) + " 'a$c' --manifest /dev/null").exit == 3);
  CHECK(run("store-nfa " + q(fixturePath("ex3.ntm")) + " --manifest /dev/null").exit == 2);
}

TEST_CASE("simulate and analyze") {
  std::string m = q(fixturePath("ex1.ntm"));
  Result r = run("simulate " + m + " 'a$a' --manifest /dev/null");
  CHECK(r.exit == 0);
  CHECK(r.out.find("q4 a_^") != std::string::npos);
  CHECK(run("simulate " + m + " 'a$b' --manifest /dev/null").exit == 1);
  r = run("analyze " + m + " 'a$a' --manifest /dev/null");
  CHECK(r.exit == 0);
  CHECK(r.out.find("turns 2") != std::string::npos);
}

TEST_CASE("bounded filters and existence") {
  std::string m = q(fixturePath("ex1.ntm"));
  CHECK(run("exists-k " + m + " -k 3 --manifest /dev/null").exit == 0);
  CHECK(run("exists-k " + m + " -k 0 --manifest /dev/null").exit == 1);
  CHECK(run("exists-k " + m + " -k 2 --mode turn --manifest /dev/null").exit == 0);
  fs::path f = scratch() / "f.ntm";
  CHECK(run("filter " + m + " -k 3 -o " + q(f) + " --manifest /dev/null").exit == 0);
  CHECK(run("simulate " + q(f) + " 'a$a' --manifest /dev/null").exit == 0);
}

TEST_CASE("reachability and common configurations") {
  std::string m = q(fixturePath("ex1.ntm"));
  fs::path c = scratch() / "c.nfa", post = scratch() / "post.nfa";
  std::ofstream(c) << "nfa 4\nalphabet q0 _ ^\ninitial 0\nfinal 3\n"
                   << "t 0 q0 1\nt 1 _ 2\nt 2 ^ 3\n";
  CHECK(run("post-star " + m + " -r 1 -C " + q(c) + " -o " + q(post) +
            " --manifest /dev/null").exit == 0);
  CHECK(run("member " + q(post) + " 'q1 a_^' --manifest /dev/null").exit == 0);
  CHECK(run("post-star " + m + " -r 1 --manifest /dev/null").exit == 2);
  Result r = run("common " + m + " " + m + " -r 3 3 --manifest /dev/null");
  CHECK(r.exit == 0);
  CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("quotient and oracle") {
  std::string m = q(fixturePath("ex1.ntm"));
  fs::path qm = scratch() / "q.ntm";
  CHECK(run("quotient " + m + " --regex '(a|b)+' -o " + q(qm) + " --manifest /dev/null").exit == 0);
  std::string lim = " --max-steps 200 --max-tape 8 --manifest /dev/null";
  CHECK(run("simulate " + q(qm) + " 'ab$a'" + lim).exit == 0);
  Result no = run("simulate " + q(qm) + " 'ab$ab'" + lim);
  CHECK(no.exit != 0);
  CHECK(no.out.find("rejected") != std::string::npos);
  Result r = run("oracle " + m + " --max-input 3 --manifest /dev/null");
  CHECK(r.exit == 0);
  CHECK(r.out.find("q4 a_^ 2 3 3") != std::string::npos);
}
