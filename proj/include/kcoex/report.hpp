#pragma once

#include <iosfwd>

#include <json.hpp>

#include "kcoex/automaton.hpp"
#include "kcoex/engine.hpp"
#include "kcoex/pattern_set.hpp"

namespace kcoex {

// Count/locate output never includes wall-clock time, so repeated runs with
// the same arguments are byte-identical.

/// expression_index, expression_source, count; one row per expression and a TOTAL row.
void write_counts_tsv(std::ostream& os, const ExpressionSet& set, const MatchReport& report);

/// end_offset, expression_index; one row per location.
void write_locations_tsv(std::ostream& os, const MatchReport& report);

nlohmann::json report_json(const ExpressionSet& set, const MatchReport& report);

/// Raw and minimized state counts, then the dump of one of the two tables.
void write_dfa_summary(std::ostream& os, const Dfa& raw, const Dfa& minimized,
                       bool dump_minimized = false);

}  // namespace kcoex
