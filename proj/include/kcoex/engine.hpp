#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kcoex/automaton.hpp"
#include "kcoex/ingest.hpp"

namespace kcoex {

using Count = std::uint64_t;
using Counts = std::vector<Count>;

/// A match of some literal of `expression` ending just before `end_offset`.
struct Location {
  std::uint64_t end_offset = 0;
  ExpressionId expression = 0;

  friend auto operator<=>(const Location&, const Location&) = default;
};

enum class ScanMode { Count, Locate };

inline constexpr std::size_t kDefaultWindow = 10;

struct EngineConfig {
  std::size_t workers = 1;
  /// Number of leading chunk positions at which speculative runs are compared
  /// against the full run. 0 disables convergence entirely.
  std::size_t window = kDefaultWindow;
  ScanMode mode = ScanMode::Count;
};

/// Outcome of one run over a chunk from one candidate initial state.
struct ChunkResult {
  StateId init_state = Dfa::kStart;
  StateId last_state = Dfa::kStart;
  Counts counts;
  /// Chunk-relative position where this run met the full run, if it did.
  std::optional<std::size_t> converged_at;
  /// Locate mode: every match for the full run and for fallback runs, only
  /// matches up to and including converged_at for converged runs.
  std::vector<Location> prefix_locations;
};

/// Snapshot of the full run after consuming chunk position j.
struct FullRunRecord {
  StateId state_after = Dfa::kStart;
  Counts cumulative_counts;
};

struct ConvergenceStats {
  std::uint64_t speculative_runs = 0;
  std::uint64_t converged_runs = 0;
  std::uint64_t fallback_runs = 0;
  /// Symbols consumed by speculative runs (excludes the full runs).
  std::uint64_t speculative_symbols = 0;
  /// histogram[j] = runs that converged at chunk position j.
  std::vector<std::uint64_t> histogram;
};

struct MatchReport {
  Counts per_expression_counts;
  Count total_count = 0;
  std::optional<std::vector<Location>> locations;

  std::string input_name;
  std::size_t input_length = 0;
  std::size_t requested_workers = 1;
  std::size_t workers = 1;
  std::size_t window = kDefaultWindow;
  double elapsed_seconds = 0.0;
  std::vector<std::size_t> pss_sizes;
  ConvergenceStats convergence;
};

/// Image of the previous chunk's last symbol: { step(q, prev_last) : q in Q },
/// deduplicated and ascending. Every state has a transition on `first` in a
/// total automaton, so the first-symbol filter keeps the whole image.
std::vector<StateId> possible_starting_states(const Dfa& dfa, SymbolCode prev_last,
                                              SymbolCode first);

/// Full scan from `init`, also returning the snapshots of the first
/// min(window, chunk size) positions.
std::pair<ChunkResult, std::vector<FullRunRecord>> full_run(const Dfa& dfa,
                                                            std::span<const SymbolCode> chunk,
                                                            std::uint64_t global_offset,
                                                            StateId init, const EngineConfig& cfg);

/// Runs the chunk from every state in `pss`. The first state gets the full
/// run; the others stop at the first window position where they coincide with
/// it and reconcile their counts, or scan the whole chunk if they never do.
/// Results are in `pss` order. Throws std::invalid_argument on an empty pss.
std::vector<ChunkResult> match_chunk(const Dfa& dfa, std::span<const SymbolCode> chunk,
                                     std::uint64_t global_offset, std::span<const StateId> pss,
                                     const EngineConfig& cfg);

/// Chains chunk results: chunk 0's start-state result, then for each later
/// chunk the result whose init_state is the previous selection's last_state.
/// Throws std::logic_error if the chain breaks.
MatchReport reduce(const Dfa& dfa, const ChunkPlan& plan,
                   std::span<const std::vector<ChunkResult>> per_chunk, const EngineConfig& cfg);

/// Plans chunks, scans them concurrently and reduces. Output is independent of
/// thread scheduling.
MatchReport run(const Dfa& dfa, const Sequence& seq, const EngineConfig& cfg);

}  // namespace kcoex
