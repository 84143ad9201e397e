#pragma once

#include <cstdint>
#include <vector>

#include "kcoex/automaton.hpp"
#include "kcoex/engine.hpp"
#include "kcoex/ingest.hpp"
#include "kcoex/pattern_set.hpp"

namespace kcoex {

struct NaiveResult {
  Counts counts;
  std::vector<Location> locations;  // sorted
};

/// Ground truth: compares every literal at every position symbol by symbol.
/// Shares no code with the automaton.
NaiveResult naive_count(const LiteralTable& table, const Sequence& seq);

/// Single left-to-right automaton pass from the start state.
Counts sequential_count(const Dfa& dfa, const Sequence& seq);

/// Pattern-partitioned strategy: expressions dealt round-robin to workers,
/// each worker builds its own automaton and scans the whole sequence.
Counts pattern_parallel_count(const ExpressionSet& set, const Sequence& seq, std::size_t workers);

/// Deterministic uniform acgt text; each symbol is Other with probability
/// `other_rate`. Depends only on (length, seed, other_rate).
Sequence synthetic_sequence(std::size_t length, std::uint64_t seed, double other_rate = 0.0);

}  // namespace kcoex
