#include "kcoex/report.hpp"

#include <map>
#include <ostream>

namespace kcoex {

void write_counts_tsv(std::ostream& os, const ExpressionSet& set, const MatchReport& report) {
  os << "expression_index\texpression_source\tcount\n";
  for (const auto& expr : set.expressions) {
    os << expr.id << '\t' << expr.source << '\t' << report.per_expression_counts[expr.id] << '\n';
  }
  os << "TOTAL\t\t" << report.total_count << '\n';
}

void write_locations_tsv(std::ostream& os, const MatchReport& report) {
  os << "end_offset\texpression_index\n";
  if (!report.locations) return;
  for (const auto& loc : *report.locations) os << loc.end_offset << '\t' << loc.expression << '\n';
}

nlohmann::json report_json(const ExpressionSet& set, const MatchReport& report) {
  nlohmann::json expressions = nlohmann::json::array();
  for (const auto& expr : set.expressions) {
    expressions.push_back({{"index", expr.id},
                           {"source", expr.source},
                           {"count", report.per_expression_counts[expr.id]}});
  }
  const auto& conv = report.convergence;
  nlohmann::json histogram = nlohmann::json::object();
  for (std::size_t j = 0; j < conv.histogram.size(); ++j) {
    if (conv.histogram[j]) histogram[std::to_string(j)] = conv.histogram[j];
  }
  nlohmann::json pss_hist = nlohmann::json::object();
  {
    std::map<std::size_t, std::size_t> h;
    for (std::size_t s : report.pss_sizes) ++h[s];
    for (auto [size, n] : h) pss_hist[std::to_string(size)] = n;
  }

  nlohmann::json j = {
      {"input", {{"name", report.input_name}, {"length", report.input_length}}},
      {"workers", report.workers},
      {"requested_workers", report.requested_workers},
      {"window", report.window},
      {"expressions", std::move(expressions)},
      {"total", report.total_count},
      {"pss_sizes", report.pss_sizes},
      {"pss_size_histogram", std::move(pss_hist)},
      {"convergence",
       {{"speculative_runs", conv.speculative_runs},
        {"converged_runs", conv.converged_runs},
        {"fallback_runs", conv.fallback_runs},
        {"speculative_symbols", conv.speculative_symbols},
        {"step_histogram", std::move(histogram)}}},
  };
  if (report.locations) {
    nlohmann::json locs = nlohmann::json::array();
    for (const auto& loc : *report.locations) locs.push_back({loc.end_offset, loc.expression});
    j["locations"] = std::move(locs);
  }
  return j;
}

void write_dfa_summary(std::ostream& os, const Dfa& raw, const Dfa& minimized,
                       bool dump_minimized) {
  os << "# raw_states\t" << raw.state_count() << '\n';
  os << "# minimized_states\t" << minimized.state_count() << '\n';
  write_dump(os, dump_minimized ? minimized : raw);
}

}  // namespace kcoex
