#include "kcoex/bench.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>

#include "kcoex/oracle.hpp"

namespace kcoex {

std::uint64_t counts_checksum(std::span<const Count> counts) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Count c : counts) {
    for (int b = 0; b < 8; ++b) {
      h ^= (c >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

const char* strategy_name(Strategy s) {
  return s == Strategy::InputBased ? "input" : "pattern";
}

std::vector<BenchResult> bench(const ExpressionSet& set, const Dfa& dfa, const Sequence& seq,
                               std::span<const BenchScenario> scenarios, std::size_t repetitions) {
  if (repetitions == 0) throw std::invalid_argument("bench needs at least one repetition");
  std::vector<BenchResult> results;
  std::optional<std::uint64_t> reference;
  std::string reference_scenario;

  for (const auto& sc : scenarios) {
    BenchResult r;
    r.scenario = sc.name;
    r.strategy = sc.strategy;
    r.workers = sc.workers;
    r.repetitions = repetitions;
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
      Counts counts;
      const auto t0 = std::chrono::steady_clock::now();
      if (sc.strategy == Strategy::InputBased) {
        counts = run(dfa, seq, EngineConfig{sc.workers, sc.window, ScanMode::Count}).per_expression_counts;
      } else {
        counts = pattern_parallel_count(set, seq, sc.workers);
      }
      r.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

      const std::uint64_t sum = counts_checksum(counts);
      if (!reference) {
        reference = sum;
        reference_scenario = sc.name;
      } else if (sum != *reference) {
        throw CorrectnessError("scenario '" + sc.name + "' repetition " + std::to_string(rep) +
                               " disagrees with scenario '" + reference_scenario + "'");
      }
      r.checksum = sum;
      r.counts = std::move(counts);
    }
    r.median_seconds = median(r.seconds);
    r.min_seconds = *std::min_element(r.seconds.begin(), r.seconds.end());
    results.push_back(std::move(r));
  }
  return results;
}

void write_bench_tsv(std::ostream& os, std::span<const BenchResult> results) {
  os << "scenario\tworkers\trepetition\tseconds\n";
  for (const auto& r : results) {
    for (std::size_t i = 0; i < r.seconds.size(); ++i) {
      os << r.scenario << '\t' << r.workers << '\t' << i << '\t' << r.seconds[i] << '\n';
    }
  }
}

nlohmann::json bench_json(std::span<const BenchResult> results, const Sequence& seq) {
  nlohmann::json scenarios = nlohmann::json::array();
  for (const auto& r : results) {
    scenarios.push_back({
        {"scenario", r.scenario},
        {"strategy", strategy_name(r.strategy)},
        {"workers", r.workers},
        {"repetitions", r.repetitions},
        {"median_seconds", r.median_seconds},
        {"min_seconds", r.min_seconds},
        {"seconds", r.seconds},
        {"checksum", r.checksum},
        {"counts", r.counts},
    });
  }
  return {
      {"input", {{"name", seq.source_name}, {"length", seq.length()}}},
      {"scenarios", std::move(scenarios)},
  };
}

}  // namespace kcoex
