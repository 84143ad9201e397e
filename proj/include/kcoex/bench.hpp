#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kcoex/automaton.hpp"
#include "kcoex/engine.hpp"
#include "kcoex/ingest.hpp"
#include "kcoex/pattern_set.hpp"

namespace kcoex {

enum class Strategy { InputBased, PatternBased };

struct BenchScenario {
  std::string name;
  Strategy strategy = Strategy::InputBased;
  std::size_t workers = 1;
  std::size_t window = kDefaultWindow;
};

struct BenchResult {
  std::string scenario;
  Strategy strategy = Strategy::InputBased;
  std::size_t workers = 1;
  std::size_t repetitions = 0;
  std::vector<double> seconds;
  double median_seconds = 0.0;
  double min_seconds = 0.0;
  std::uint64_t checksum = 0;
  Counts counts;
};

/// Raised when two repetitions or scenarios disagree on the counts.
class CorrectnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultRepetitions = 20;

/// FNV-1a over the little-endian bytes of the counts.
std::uint64_t counts_checksum(std::span<const Count> counts);

double median(std::vector<double> values);

/// Times every scenario `repetitions` times over one pattern set and input.
/// All repetitions of all scenarios must produce the same counts; any
/// divergence throws CorrectnessError before results are returned.
std::vector<BenchResult> bench(const ExpressionSet& set, const Dfa& dfa, const Sequence& seq,
                               std::span<const BenchScenario> scenarios, std::size_t repetitions);

/// One line per repetition: scenario, workers, repetition, seconds.
void write_bench_tsv(std::ostream& os, std::span<const BenchResult> results);

nlohmann::json bench_json(std::span<const BenchResult> results, const Sequence& seq);

const char* strategy_name(Strategy s);

}  // namespace kcoex
