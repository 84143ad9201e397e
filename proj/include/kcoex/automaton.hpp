#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kcoex/alphabet.hpp"
#include "kcoex/pattern_set.hpp"

namespace kcoex {

using StateId = std::uint32_t;

/// Dense, failure-free Aho-Corasick automaton over the 5-class alphabet.
///
/// The transition table is row-major (state x symbol), total, and every
/// state sends Other back to the start state. Each state carries the multiset
/// of expression ids whose literals end on entering it, so summing outputs
/// along a run counts every (possibly overlapping) occurrence.
class Dfa {
 public:
  static constexpr StateId kStart = 0;

  Dfa() = default;

  /// Assembles an automaton from raw parts. `outputs[s]` is the output
  /// multiset of state s (sorted on construction). Throws std::invalid_argument
  /// if the table is not total, targets are out of range, or an output id is
  /// not below `expression_count`.
  Dfa(std::size_t state_count, std::size_t expression_count, std::vector<StateId> table,
      std::vector<std::vector<ExpressionId>> outputs, std::vector<std::string> labels = {});

  std::size_t state_count() const { return labels_.size(); }
  std::size_t expression_count() const { return expression_count_; }
  StateId start() const { return kStart; }

  StateId step(StateId s, SymbolCode sym) const { return table_[s * kAlphabetSize + sym]; }

  std::span<const ExpressionId> outputs(StateId s) const {
    return {output_ids_.data() + output_offsets_[s], output_ids_.data() + output_offsets_[s + 1]};
  }
  bool has_outputs(StateId s) const { return output_offsets_[s] != output_offsets_[s + 1]; }

  const std::string& label(StateId s) const { return labels_[s]; }

  /// Row of 5 successor states for s, in a,c,g,t,Other order.
  std::span<const StateId, kAlphabetSize> row(StateId s) const {
    return std::span<const StateId, kAlphabetSize>(table_.data() + s * kAlphabetSize, kAlphabetSize);
  }

  std::span<const StateId> table() const { return table_; }

 private:
  std::vector<StateId> table_;
  std::vector<std::uint32_t> output_offsets_{0};
  std::vector<ExpressionId> output_ids_;
  std::vector<std::string> labels_;
  std::size_t expression_count_ = 0;
};

/// Builds the trie of `table`, computes failure links breadth-first and
/// replaces them by direct transitions. States are numbered breadth-first
/// with children visited a<c<g<t; state 0 is the empty prefix.
Dfa build_dfa(const LiteralTable& table);

inline StateId step(const Dfa& dfa, StateId s, SymbolCode sym) { return dfa.step(s, sym); }

inline std::span<const ExpressionId> outputs_at(const Dfa& dfa, StateId s) {
  return dfa.outputs(s);
}

/// Hopcroft partition refinement seeded with the output-multiset partition.
/// The result is renumbered breadth-first from the start state; each state
/// keeps the label of its lowest-numbered member.
Dfa minimize(const Dfa& dfa);

/// One row per state: id, label, a/c/g/t/Other targets, comma-joined outputs.
void write_dump(std::ostream& os, const Dfa& dfa);

}  // namespace kcoex
