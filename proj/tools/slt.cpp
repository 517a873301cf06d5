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

// Command-line front end. Results go to stdout or -o, diagnostics and the
// run manifest to stderr unless --manifest names a file.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "slt/error.hpp"
#include "slt/fsm/nfa.hpp"
#include "slt/fsm/regex.hpp"
#include "slt/machine/computation.hpp"
#include "slt/machine/config.hpp"
#include "slt/oracle/oracle.hpp"
#include "slt/store/history.hpp"
#include "slt/verify/verify.hpp"
#include "slt/version.hpp"

using namespace slt;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kParse = 3, kResource = 4 };

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string sha256(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  EVP_Digest(data.data(), data.size(), md, &n, EVP_sha256(), nullptr);
  std::ostringstream o;
  for (unsigned int i = 0; i < n; ++i)
    o << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return o.str();
}

struct Options {
  std::size_t r = 0;
  std::vector<std::size_t> rs;
  std::size_t k = 0;
  std::string mode = "crossing";
  std::size_t maxInput = 4;
  std::size_t maxSteps = 400;
  std::size_t maxTape = 64;
  std::string out, configs, manifest, dumpHistory, regex;
  std::string first, second;
  std::vector<std::string> files;
  std::string word;
  bool recordTime = false;
};

class Run {
 public:
  Run(std::string command, const Options& o) : command_(std::move(command)), o_(o) {}

  Machine machine(const std::string& path) {
    std::string text = input(path);
    return parseMachineText(text);
  }
  Nfa nfa(const std::string& path) { return parseNfaText(input(path)); }

  void param(const std::string& key, json value) { params_[key] = std::move(value); }

  void emit(const std::string& text) {
    if (o_.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(o_.out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + o_.out + "'");
    f << text;
  }

  StoreNfaOptions storeOptions() const {
    StoreNfaOptions s;
    auto last = std::make_shared<std::chrono::steady_clock::time_point>(
        std::chrono::steady_clock::now());
    s.conversion.progress = [last](std::size_t explored, std::size_t interned) {
      auto now = std::chrono::steady_clock::now();
      if (now - *last < std::chrono::seconds(2)) return;
      *last = now;
      std::cerr << "progress: " << explored << " behaviours explored, "
                << interned << " interned\n";
    };
    return s;
  }

  void finish(int code) {
    json m;
    m["command"] = command_;
    m["version"] = kVersion;
    json in = json::array();
    for (const auto& [path, digest] : inputs_)
      in.push_back({{"path", path}, {"sha256", digest}});
    m["inputs"] = in;
    m["params"] = params_;
    m["exit"] = code;
    if (o_.recordTime) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start_)
                    .count();
      m["wall_ms"] = ms;
    }
    std::string text = m.dump(2) + "\n";
    if (o_.manifest.empty()) {
      std::cerr << text;
    } else {
      std::ofstream f(o_.manifest, std::ios::binary);
      f << text;
    }
  }

 private:
  std::string input(const std::string& path) {
    std::string text = readFile(path);
    inputs_.emplace_back(path, sha256(text));
    return text;
  }

  std::string command_;
  const Options& o_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  json params_ = json::object();
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SimLimits limits(const Options& o) { return SimLimits{o.maxSteps, o.maxTape}; }

std::size_t crossingParam(const Machine& m, const Options& o) {
  if (o.r > 0) return o.r;
  if (m.declaredBound && m.declaredBound->mode == BoundMode::Crossing)
    return m.declaredBound->bound;
  throw UsageError("-r is required when the machine declares no crossing bound");
}

std::string words(const Nfa& a, const Word& w) { return a.render(w) + "\n"; }

int simulateCmd(Run& run, const Options& o, bool analyze) {
  Machine m = run.machine(o.files.at(0));
  Input w = parseInput(m, o.word);
  run.param("input", o.word);
  run.param("max_steps", o.maxSteps);
  run.param("max_tape", o.maxTape);
  SimResult res = simulate(m, w, limits(o));
  std::ostringstream out;
  for (const Computation& c : res.accepting) {
    if (analyze) {
      ComputationMetrics x = metrics(m, c);
      out << "turns " << x.turns << " visits " << x.maxVisits << " crossings "
          << x.maxCrossings << " steps " << c.transitions.size() << "\n";
      continue;
    }
    out << "computation\n";
    for (const Config& k : c.configs) out << "  " << toText(m, storeOf(k)) << "\n";
  }
  out << (res.accepting.empty() ? "rejected" : "accepted") << "\n";
  run.emit(out.str());
  if (!res.accepting.empty()) return kOk;
  return res.exhausted ? kResource : kFalse;
}

// First accepting computation, over inputs in shortlex order, whose history
// fits in k tracks with at most r crossings.
void dumpHistory(const Machine& m, std::size_t r, const Options& o) {
  std::size_t k = 2 * r + 1;
  auto h = buildHistoryTwoNfa(m, k, r);
  for (const Input& w : inputsUpTo(m, o.maxInput)) {
    for (const Computation& c : simulate(m, w, limits(o)).accepting) {
      if (metrics(m, c).maxCrossings > r) continue;
      try {
        HistoryWord hw = encodeHistory(m, c, c.configs.size() / 2, k);
        std::ofstream f(o.dumpHistory, std::ios::binary);
        if (!f) throw UsageError("cannot write '" + o.dumpHistory + "'");
        f << historyText(h->source(), hw);
        std::cerr << "history of input '" << renderInput(m, w) << "'\n";
        return;
      } catch (const SojournOverflow&) {
      }
    }
  }
  std::cerr << "no accepted history within the input bound\n";
}

int storeNfaCmd(Run& run, const Options& o) {
  Machine m = run.machine(o.files.at(0));
  std::size_t r = crossingParam(m, o);
  run.param("r", r);
  Nfa s = trim(storeNfa(m, r, run.storeOptions()));
  if (!o.dumpHistory.empty()) {
    run.param("dump_history", o.dumpHistory);
    run.param("max_input", o.maxInput);
    dumpHistory(m, r, o);
  }
  run.emit(toText(s));
  std::cerr << "store nfa: " << s.stateCount() << " states\n";
  return kOk;
}

int memberCmd(Run& run, const Options& o) {
  Nfa a = run.nfa(o.files.at(0));
  run.param("word", o.word);
  std::vector<std::string> tokens = tokenize(a.alphabet(), o.word);
  bool in = accepts(a, tokens);
  run.emit(std::string(in ? "member" : "not a member") + "\n");
  return in ? kOk : kFalse;
}

int equivCmd(Run& run, const Options& o) {
  Nfa a = run.nfa(o.files.at(0)), b = run.nfa(o.files.at(1));
  std::vector<std::string> alphabet = a.alphabet();
  for (const auto& s : b.alphabet())
    if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end())
      alphabet.push_back(s);
  a = widenAlphabet(a, alphabet);
  b = widenAlphabet(b, alphabet);
  std::optional<Word> sep = separatingWord(a, b);
  if (!sep) {
    run.emit("equivalent\n");
    return kOk;
  }
  run.emit("differ on: " + words(a, *sep));
  return kFalse;
}

int emptyCmd(Run& run, const Options& o) {
  Nfa a = run.nfa(o.files.at(0));
  std::optional<Word> w = shortestWord(a);
  if (!w) {
    run.emit("empty\n");
    return kOk;
  }
  run.emit("accepts: " + words(a, *w));
  return kFalse;
}

int filterCmd(Run& run, const Options& o) {
  Machine m = run.machine(o.files.at(0));
  BoundMode mode = parseBoundMode(o.mode);
  run.param("k", o.k);
  run.param("mode", o.mode);
  Machine f = boundFilter(m, o.k, mode);
  run.emit(serializeMachine(f));
  return kOk;
}

int existsCmd(Run& run, const Options& o) {
  Machine m = run.machine(o.files.at(0));
  BoundMode mode = parseBoundMode(o.mode);
  run.param("k", o.k);
  run.param("mode", o.mode);
  bool yes = existsKBounded(m, o.k, mode, run.storeOptions());
  run.emit(std::string(yes ? "true" : "false") + "\n");
  return yes ? kOk : kFalse;
}

// Every sampled word of a configuration set must parse for m.
void checkConfigSet(const Machine& m, const Nfa& c) {
  for (const Word& w : wordsUpTo(c, 12, 200)) {
    try {
      storeFromTokens(m, c.decode(w));
    } catch (const Error& e) {
      throw ParseError(0, "configuration set word '" + c.render(w) +
                              "' is not a store configuration: " + e.what());
    }
  }
}

int reachCmd(Run& run, const Options& o, bool forward) {
  Machine m = run.machine(o.files.at(0));
  if (o.configs.empty()) throw UsageError("-C <configset.nfa> is required");
  Nfa c = run.nfa(o.configs);
  checkConfigSet(m, c);
  std::size_t r = crossingParam(m, o);
  run.param("r", r);
  Nfa out = forward ? postStar(m, r, c, run.storeOptions())
                    : preStar(m, r, c, run.storeOptions());
  run.emit(toText(out));
  return kOk;
}

int commonCmd(Run& run, const Options& o) {
  Machine a = run.machine(o.files.at(0)), b = run.machine(o.files.at(1));
  std::size_t ra = o.rs.size() >= 1 ? o.rs[0] : crossingParam(a, o);
  std::size_t rb = o.rs.size() >= 2 ? o.rs[1] : crossingParam(b, o);
  run.param("r", json::array({ra, rb}));
  CommonResult res = commonConfigs(a, ra, b, rb, run.storeOptions());
  if (!res.answer) {
    run.emit("false\n");
    return kFalse;
  }
  std::string w;
  for (const auto& t : res.witness) w += (w.empty() ? "" : " ") + t;
  run.emit("true\nwitness: " + w + "\n");
  return kOk;
}

int quotientCmd(Run& run, const Options& o) {
  Machine m = run.machine(o.files.at(0));
  Nfa rgx;
  if (!o.regex.empty()) {
    run.param("regex", o.regex);
    rgx = compileRegex(o.regex, m.inputAlphabet);
  } else if (o.files.size() >= 2) {
    rgx = run.nfa(o.files[1]);
  } else {
    throw UsageError("quotient needs an Nfa file or --regex");
  }
  run.emit(serializeMachine(rightQuotientMachine(m, rgx)));
  return kOk;
}

int oracleCmd(Run& run, const Options& o) {
  Machine m = run.machine(o.files.at(0));
  run.param("max_input", o.maxInput);
  run.param("max_steps", o.maxSteps);
  OracleReport rep = enumerateStore(m, o.maxInput, o.maxSteps);
  std::ostringstream out;
  for (const std::string& line : reportLines(m, rep)) out << line << "\n";
  run.emit(out.str());
  if (rep.exhausted) std::cerr << "oracle: node limit reached\n";
  return rep.exhausted ? kResource : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Store languages of finite-crossing Turing machines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("-o", o.out, "Output file (default stdout)");
    c->add_option("--manifest", o.manifest, "Write the run manifest here");
    c->add_flag("--record-time", o.recordTime, "Add wall-clock time to the manifest");
    return c;
  };
  auto bounds = [&](CLI::App* c) {
    c->add_option("--max-input", o.maxInput, "Input length bound");
    c->add_option("--max-steps", o.maxSteps, "Step bound");
    c->add_option("--max-tape", o.maxTape, "Tape length bound");
  };

  std::map<std::string, CLI::App*> sub;
  auto add = [&](const std::string& name, const std::string& help) {
    sub[name] = common(app.add_subcommand(name, help));
    return sub[name];
  };

  for (const char* name : {"simulate", "analyze"}) {
    CLI::App* c = add(name, std::string(name) == "simulate"
                                ? "Accepting computations on an input"
                                : "Metrics of the accepting computations");
    c->add_option("machine", o.first, "Machine file")->required();
    c->add_option("input", o.word, "Input word")->required();
    bounds(c);
  }
  {
    CLI::App* c = add("store-nfa", "Store language Nfa of an r-crossing machine");
    c->add_option("machine", o.first)->required();
    c->add_option("-r", o.r, "Crossing bound");
    c->add_option("--dump-history", o.dumpHistory, "Write a sampled history word");
    bounds(c);
  }
  {
    CLI::App* c = add("member", "Membership of a word in an Nfa");
    c->add_option("nfa", o.first)->required();
    c->add_option("word", o.word)->required();
  }
  {
    CLI::App* c = add("equiv", "Language equivalence of two Nfas");
    c->add_option("first", o.first, "Nfa file")->required();
    c->add_option("second", o.second, "Nfa file")->required();
  }
  {
    CLI::App* c = add("empty", "Emptiness of an Nfa");
    c->add_option("nfa", o.first)->required();
  }
  for (const char* name : {"filter", "exists-k"}) {
    CLI::App* c = add(name, std::string(name) == "filter"
                                ? "k-bounded filter machine"
                                : "Existence of a k-bounded accepting computation");
    c->add_option("machine", o.first)->required();
    c->add_option("-k", o.k, "Bound")->required();
    c->add_option("--mode", o.mode, "turn|visit|crossing")
        ->check(CLI::IsMember({"turn", "visit", "crossing"}));
  }
  for (const char* name : {"pre-star", "post-star"}) {
    CLI::App* c = add(name, std::string(name) == "pre-star"
                                ? "Configurations reaching a configuration set"
                                : "Configurations reachable from a configuration set");
    c->add_option("machine", o.first)->required();
    c->add_option("-r", o.r, "Crossing bound");
    c->add_option("-C", o.configs, "Configuration set Nfa")->required();
  }
  {
    CLI::App* c = add("common", "Common non-initial store configurations");
    c->add_option("first", o.first, "Machine file")->required();
    c->add_option("second", o.second, "Machine file")->required();
    c->add_option("-r", o.rs, "Crossing bounds")->expected(1, 2);
  }
  {
    CLI::App* c = add("quotient", "Right quotient by a regular language");
    c->add_option("machine", o.first, "Machine file")->required();
    c->add_option("nfa", o.second, "Nfa over the machine's input alphabet");
    c->add_option("--regex", o.regex, "Token regex over the input alphabet");
  }
  {
    CLI::App* c = add("oracle", "Brute-force store configurations with metrics");
    c->add_option("machine", o.first)->required();
    bounds(c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (o.rs.size() == 1) o.r = o.rs[0];
  o.files = {o.first};
  if (!o.second.empty()) o.files.push_back(o.second);

  std::string name;
  for (auto& [n, c] : sub)
    if (c->parsed()) name = n;
  Run run(name, o);
  int code = kOk;
  try {
    if (name == "simulate") code = simulateCmd(run, o, false);
    else if (name == "analyze") code = simulateCmd(run, o, true);
    else if (name == "store-nfa") code = storeNfaCmd(run, o);
    else if (name == "member") code = memberCmd(run, o);
    else if (name == "equiv") code = equivCmd(run, o);
    else if (name == "empty") code = emptyCmd(run, o);
    else if (name == "filter") code = filterCmd(run, o);
    else if (name == "exists-k") code = existsCmd(run, o);
    else if (name == "pre-star") code = reachCmd(run, o, false);
    else if (name == "post-star") code = reachCmd(run, o, true);
    else if (name == "common") code = commonCmd(run, o);
    else if (name == "quotient") code = quotientCmd(run, o);
    else if (name == "oracle") code = oracleCmd(run, o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    code = kParse;
  } catch (const UnknownSymbol& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    code = kParse;
  } catch (const LimitExceeded& e) {
    std::cerr << "limit: " << e.what() << "\n";
    code = kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "limit: out of memory\n";
    code = kResource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kUsage;
  }
  run.finish(code);
  return code;
}
