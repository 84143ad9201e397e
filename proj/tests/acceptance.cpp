// Acceptance suite: one PASS/FAIL/SKIP line per criterion, exit status 1 if
// any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "kcoex/automaton.hpp"
#include "kcoex/bench.hpp"
#include "kcoex/engine.hpp"
#include "kcoex/ingest.hpp"
#include "kcoex/oracle.hpp"
#include "kcoex/pattern_set.hpp"
#include "test_support.hpp"

#ifndef KCOEX_CLI_PATH
#error "KCOEX_CLI_PATH must point at the kcoex executable"
#endif

using namespace kcoex;
namespace fs = std::filesystem;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. Four-way oracle equivalence on random inputs, patterns and configurations.
Outcome four_way_equivalence() {
  constexpr std::size_t kCases = 1000;
  constexpr double kBudgetSeconds = 120.0;
  constexpr std::array<std::size_t, 5> kWorkers = {1, 2, 3, 7, 16};
  constexpr std::array<std::size_t, 4> kWindows = {0, 1, 4, 10};

  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t mismatches = 0;
  std::uint64_t total_matches = 0;
  for (std::size_t i = 0; i < kCases; ++i) {
    const auto set = parse_expressions(testing::random_pattern_text(rng, 10, 12));
    const auto table = expand_to_literals(set);
    const Dfa dfa = build_dfa(table);
    const std::size_t length = i == 0 ? 0 : rng() % 5001;
    const auto seq = testing::random_sequence(rng, length);
    // Cycle through every (workers, window) pair.
    const EngineConfig cfg{kWorkers[i % kWorkers.size()], kWindows[(i / kWorkers.size()) % kWindows.size()],
                           ScanMode::Locate};

    const auto naive = naive_count(table, seq);
    const auto sequential = sequential_count(dfa, seq);
    const auto engine = run(dfa, seq, cfg);
    const auto engine_count = run(dfa, seq, EngineConfig{cfg.workers, cfg.window, ScanMode::Count});
    const auto pattern = pattern_parallel_count(set, seq, kWorkers[(i / 3) % kWorkers.size()]);

    const bool ok = naive.counts == sequential && sequential == engine.per_expression_counts &&
                    engine.per_expression_counts == pattern &&
                    engine_count.per_expression_counts == sequential && engine.locations &&
                    *engine.locations == naive.locations;
    if (!ok) {
      if (mismatches++ < 5) {
        std::cerr << "  case " << i << ": mismatch (workers " << cfg.workers << ", window " << cfg.window
                  << ", length " << length << ")\n";
      }
    }
    total_matches += naive.locations.size();
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << kCases << " cases, " << total_matches << " occurrences, " << mismatches << " mismatches, " << elapsed
    << " s (budget " << kBudgetSeconds << " s)";
  return {mismatches == 0 && elapsed < kBudgetSeconds ? Verdict::Pass : Verdict::Fail, d.str()};
}

// ---------------------------------------------------------------------------
// 2. Built-in motif set: expansion, totality and state counts.
Outcome builtin_fidelity() {
  constexpr std::size_t kLiterals = 50;
  constexpr std::size_t kRawStates = 227;
  constexpr std::size_t kReferenceStates = 137;  // informational only
  const std::array<std::string_view, 9> rows = {
      "agggtaaa | tttaccct",           "(c|g|t)gggtaaa | tttaccc(a|c|g)", "a(a|c|t)ggtaaa | tttacc(a|g|t)t",
      "ag(a|c|t)gtaaa | tttac(a|g|t)ct", "agg(a|c|t)taaa | ttta(a|g|t)cct", "aggg(a|c|g)aaa | ttt(c|g|t)ccct",
      "agggt(c|g|t)aa | tt(a|c|g)accct", "agggta(c|g|t)a | t(a|c|g)taccct", "agggtaa(c|g|t) | (a|c|g)ttaccct",
  };
  const std::array<std::size_t, 9> per_row = {2, 6, 6, 6, 6, 6, 6, 6, 6};

  std::vector<std::string> problems;
  const auto set = builtin_expression_set();
  if (set.size() != rows.size()) problems.push_back("expected 9 expressions");
  for (std::size_t i = 0; i < std::min(set.size(), rows.size()); ++i) {
    if (set.expressions[i].source != rows[i]) problems.push_back("row " + std::to_string(i + 1) + " differs");
  }
  const auto table = expand_to_literals(set);
  std::array<std::size_t, 9> got{};
  for (const auto& l : table.literals) {
    if (l.text.size() != 8) problems.push_back("literal " + l.text + " is not an 8-mer");
    if (l.id < got.size()) ++got[l.id];
  }
  if (table.size() != kLiterals) problems.push_back("expected 50 literals, got " + std::to_string(table.size()));
  if (got != per_row) problems.push_back("per-expression literal counts differ");

  const Dfa raw = build_dfa(table);
  std::size_t checked = 0;
  for (StateId s = 0; s < raw.state_count(); ++s) {
    for (SymbolCode b = 0; b < kAlphabetSize; ++b) {
      if (raw.step(s, b) >= raw.state_count()) problems.push_back("transition out of range");
      ++checked;
    }
  }
  if (checked != raw.state_count() * kAlphabetSize) problems.push_back("table not total");
  const std::size_t prefix_states = testing::distinct_prefixes(testing::texts(table)).size() + 1;
  if (raw.state_count() != kRawStates || prefix_states != kRawStates) {
    problems.push_back("raw state count " + std::to_string(raw.state_count()) + ", prefix enumeration " +
                       std::to_string(prefix_states));
  }
  const Dfa min = minimize(raw);

  std::ostringstream d;
  d << table.size() << " literals; raw states " << raw.state_count() << " (" << checked
    << " transitions checked); minimized states " << min.state_count() << "; reference value "
    << kReferenceStates << " (informational, not asserted)";
  for (const auto& p : problems) d << "; " << p;
  return {problems.empty() ? Verdict::Pass : Verdict::Fail, d.str()};
}

// ---------------------------------------------------------------------------
// 3. Convergence within the default window on a 16MB synthetic input.
Outcome convergence_behavior() {
  constexpr std::size_t kSize = 16u << 20;
  constexpr std::size_t kWorkers = 8;
  constexpr double kMinFraction = 0.99;

  const auto set = builtin_expression_set();
  const Dfa dfa = build_dfa(expand_to_literals(set));
  const auto seq = synthetic_sequence(kSize, 16);
  const auto report = run(dfa, seq, EngineConfig{kWorkers, kDefaultWindow, ScanMode::Count});
  const auto& c = report.convergence;
  const bool correct = report.per_expression_counts == sequential_count(dfa, seq);
  const double fraction = c.speculative_runs ? double(c.converged_runs) / double(c.speculative_runs) : 0.0;

  std::ostringstream d;
  d << c.converged_runs << "/" << c.speculative_runs << " speculative runs converged (" << fraction * 100
    << "%), fallbacks " << c.fallback_runs << ", counts " << (correct ? "match" : "DIFFER")
    << "; step histogram {";
  for (std::size_t j = 0; j < c.histogram.size(); ++j) d << (j ? ", " : "") << j << ": " << c.histogram[j];
  d << "}; PSS sizes [";
  for (std::size_t i = 0; i < report.pss_sizes.size(); ++i) d << (i ? "," : "") << report.pss_sizes[i];
  d << "]";
  return {correct && c.speculative_runs > 0 && fraction >= kMinFraction ? Verdict::Pass : Verdict::Fail, d.str()};
}

// ---------------------------------------------------------------------------
// 4. Reconciliation identity, exhaustive over all chunks of length <= 12.
Outcome reconciliation_identity() {
  constexpr std::size_t kMaxLength = 12;
  const std::vector<std::string> words = {"acg", "cat", "cta", "tta"};
  const Dfa dfa = build_dfa(testing::literal_table(words));
  const std::size_t n = dfa.state_count();
  std::vector<StateId> pss(n);
  for (StateId s = 0; s < n; ++s) pss[s] = s;
  const EngineConfig cfg{1, kDefaultWindow, ScanMode::Count};

  // Independent full scans from every state, maintained incrementally along a
  // depth-first walk of all chunks.
  struct Frame {
    std::vector<StateId> state;
    std::vector<Counts> counts;
  };
  std::vector<Frame> stack(kMaxLength + 1);
  stack[0].state = pss;
  stack[0].counts.assign(n, Counts(words.size(), 0));
  std::vector<SymbolCode> chunk;

  std::uint64_t chunks = 0, converged = 0, mismatches = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t depth) {
    if (depth > 0) {
      ++chunks;
      const auto results = match_chunk(dfa, chunk, 0, pss, cfg);
      for (std::size_t i = 1; i < results.size(); ++i) {
        if (!results[i].converged_at) continue;
        ++converged;
        if (results[i].counts != stack[depth].counts[i] || results[i].last_state != stack[depth].state[i]) {
          ++mismatches;
        }
      }
    }
    if (depth == kMaxLength) return;
    for (SymbolCode b = 0; b < kBaseCount; ++b) {
      Frame& next = stack[depth + 1];
      next = stack[depth];
      for (std::size_t i = 0; i < n; ++i) {
        next.state[i] = dfa.step(next.state[i], b);
        for (ExpressionId id : dfa.outputs(next.state[i])) ++next.counts[i][id];
      }
      chunk.push_back(b);
      visit(depth + 1);
      chunk.pop_back();
    }
  };
  const auto t0 = std::chrono::steady_clock::now();
  visit(0);

  std::ostringstream d;
  d << chunks << " chunks, " << converged << " converged speculative runs checked, " << mismatches
    << " mismatches, " << seconds_since(t0) << " s";
  return {mismatches == 0 && converged > 0 ? Verdict::Pass : Verdict::Fail, d.str()};
}

// ---------------------------------------------------------------------------
// 5/6 share one 64MB input.

std::size_t physical_cores() {
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::set<std::pair<std::string, std::string>> cores;
  std::string line, physical = "0";
  while (std::getline(cpuinfo, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = line.substr(0, line.find_last_not_of(" \t", colon - 1) + 1);
    const std::string value = colon + 2 <= line.size() ? line.substr(colon + 2) : "";
    if (key == "physical id") physical = value;
    if (key == "core id") cores.insert({physical, value});
  }
  return cores.empty() ? std::thread::hardware_concurrency() : cores.size();
}

struct BigInput {
  ExpressionSet set = builtin_expression_set();
  Dfa dfa = build_dfa(expand_to_literals(set));
  Sequence seq = synthetic_sequence(64u << 20, 64);
};

Outcome scaling_smoke(const BigInput& in) {
  constexpr double kMaxRatio = 0.6;
  constexpr std::size_t kRepetitions = 5;
  constexpr std::size_t kMinCores = 4;

  std::vector<BenchScenario> scenarios = {{"input-w1", Strategy::InputBased, 1},
                                          {"input-w4", Strategy::InputBased, 4}};
  const std::size_t cores = physical_cores();
  for (std::size_t w : {8u, 16u, 48u}) {
    scenarios.push_back({"input-w" + std::to_string(w), Strategy::InputBased, w});
  }
  const auto results = bench(in.set, in.dfa, in.seq, scenarios, kRepetitions);
  const double ratio = results[1].median_seconds / results[0].median_seconds;

  std::ostringstream d;
  d << "median w1 " << results[0].median_seconds << " s, w4 " << results[1].median_seconds << " s, ratio "
    << ratio << " (limit " << kMaxRatio << ")";
  for (std::size_t i = 2; i < results.size(); ++i) {
    d << "; w" << results[i].workers << " " << results[i].median_seconds << " s (reported only)";
  }
  d << "; physical cores " << cores;
  if (cores < kMinCores) {
    d << " < " << kMinCores << ": speedup requirement applies only on >= " << kMinCores << " cores";
    return {Verdict::Skip, d.str()};
  }
  return {ratio <= kMaxRatio ? Verdict::Pass : Verdict::Fail, d.str()};
}

Outcome partitioning_comparison(const BigInput& in) {
  constexpr std::size_t kWorkers = 9;
  constexpr std::size_t kRepetitions = 5;
  const std::vector<BenchScenario> scenarios = {{"input-w9", Strategy::InputBased, kWorkers},
                                                {"pattern-w9", Strategy::PatternBased, kWorkers}};
  std::vector<BenchResult> results;
  try {
    results = bench(in.set, in.dfa, in.seq, scenarios, kRepetitions);
  } catch (const CorrectnessError& e) {
    return {Verdict::Fail, e.what()};
  }
  const auto& input = results[0];
  const auto& pattern = results[1];
  std::ostringstream d;
  d << "input-based median " << input.median_seconds << " s, pattern-based median " << pattern.median_seconds
    << " s (" << pattern.median_seconds / input.median_seconds << "x), checksums " << std::hex << input.checksum
    << (input.checksum == pattern.checksum ? " == " : " != ") << pattern.checksum;
  const bool ok = input.checksum == pattern.checksum && input.median_seconds <= pattern.median_seconds;
  return {ok ? Verdict::Pass : Verdict::Fail, d.str()};
}

// ---------------------------------------------------------------------------
// 7. CLI determinism.

struct Captured {
  int status = -1;
  std::string out;
};

Captured capture(const std::string& command) {
  Captured c;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return c;
  std::array<char, 1 << 16> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  c.status = pclose(pipe);
  return c;
}

// Drops wall-clock fields from bench output.
std::string strip_timings(const std::string& out, bool json) {
  if (json) {
    auto j = nlohmann::json::parse(out);
    for (auto& s : j["scenarios"]) {
      s.erase("seconds");
      s.erase("median_seconds");
      s.erase("min_seconds");
    }
    return j.dump();
  }
  std::istringstream in(out);
  std::string line, result;
  while (std::getline(in, line)) result += line.substr(0, line.rfind('\t')) + "\n";
  return result;
}

Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "kcoex_acceptance";
  fs::create_directories(dir);
  const fs::path input = dir / "input.fa";
  {
    const auto seq = synthetic_sequence(300000, 77, 0.002);
    std::ofstream out(input);
    out << ">synthetic record one\n";
    for (std::size_t i = 0; i < seq.length(); ++i) {
      out << symbol_char(seq.symbols[i]);
      if (i % 70 == 69) out << '\n';
      if (i == 150000) out << "\n>record two\n";
    }
    out << '\n';
  }
  const std::string bin = KCOEX_CLI_PATH;
  const std::string common = " --builtin-patterns --input " + input.string();

  struct Invocation {
    std::string args;
    bool timed = false;
    bool json = false;
  };
  std::vector<Invocation> invocations;
  for (const char* w : {"1", "8"}) {
    const std::string workers = std::string(" --workers ") + w;
    invocations.push_back({"count" + common + workers});
    invocations.push_back({"count" + common + workers + " --output json", false, true});
    invocations.push_back({"locate" + common + workers});
    invocations.push_back({"locate" + common + workers + " --output json", false, true});
    invocations.push_back({"bench" + common + workers + " --repeat 2", true, false});
    invocations.push_back({"bench --builtin-patterns --synthetic-size 1M" + workers + " --repeat 2 --output json",
                           true, true});
  }
  invocations.push_back({"dump-dfa --builtin-patterns"});
  invocations.push_back({"dump-dfa --builtin-patterns --minimized"});

  std::size_t identical = 0;
  std::vector<std::string> problems;
  std::map<std::string, std::string> tsv_counts;
  for (const auto& inv : invocations) {
    const auto a = capture(bin + " " + inv.args);
    const auto b = capture(bin + " " + inv.args);
    if (a.status != 0 || b.status != 0 || a.out.empty()) {
      problems.push_back("'" + inv.args + "' failed");
      continue;
    }
    const std::string x = inv.timed ? strip_timings(a.out, inv.json) : a.out;
    const std::string y = inv.timed ? strip_timings(b.out, inv.json) : b.out;
    if (x == y) {
      ++identical;
    } else {
      problems.push_back("'" + inv.args + "' differs between runs");
    }
    if (inv.args.rfind("count", 0) == 0 && !inv.json) tsv_counts[inv.args] = a.out;
  }
  // TSV count output must also agree between 1 and 8 workers.
  if (tsv_counts.size() == 2 && tsv_counts.begin()->second != std::next(tsv_counts.begin())->second) {
    problems.push_back("count output differs between 1 and 8 workers");
  }
  fs::remove_all(dir);

  std::ostringstream d;
  d << identical << "/" << invocations.size() << " invocations byte-identical across two runs (timings excluded)";
  for (const auto& p : problems) d << "; " << p;
  return {problems.empty() ? Verdict::Pass : Verdict::Fail, d.str()};
}

}  // namespace

int main() {
  std::cout.setf(std::ios::fixed);
  std::cout.precision(3);
  std::cerr.precision(3);

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
  criteria.emplace_back("C1 four-way oracle equivalence", four_way_equivalence);
  criteria.emplace_back("C2 built-in motif set fidelity", builtin_fidelity);
  criteria.emplace_back("C3 convergence within window", convergence_behavior);
  criteria.emplace_back("C4 reconciliation identity", reconciliation_identity);
  std::unique_ptr<BigInput> big;
  auto big_input = [&]() -> const BigInput& {
    if (!big) big = std::make_unique<BigInput>();
    return *big;
  };
  criteria.emplace_back("C5 scaling smoke test", [&] { return scaling_smoke(big_input()); });
  criteria.emplace_back("C6 input- vs pattern-partitioning", [&] { return partitioning_comparison(big_input()); });
  criteria.emplace_back("C7 CLI determinism", cli_determinism);

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Skip ? "SKIP" : "FAIL";
    if (o.verdict == Verdict::Fail) ++failed;
    std::cout << "[" << tag << "] " << name << ": " << o.detail << std::endl;
  }
  std::cout << (failed ? "acceptance: FAILED (" + std::to_string(failed) + ")" : std::string("acceptance: OK"))
            << std::endl;
  return failed ? 1 : 0;
}
