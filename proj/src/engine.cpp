#include "kcoex/engine.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <thread>

namespace kcoex {

namespace {

inline void emit(const Dfa& dfa, StateId s, Counts& counts) {
  for (ExpressionId id : dfa.outputs(s)) ++counts[id];
}

inline void emit(const Dfa& dfa, StateId s, std::uint64_t end_offset, Counts& counts,
                 std::vector<Location>& locations) {
  for (ExpressionId id : dfa.outputs(s)) {
    ++counts[id];
    locations.push_back({end_offset, id});
  }
}

// Speculative run from `init`; `r0` and `fr` describe the full run of the
// same chunk.
ChunkResult speculative_run(const Dfa& dfa, std::span<const SymbolCode> chunk,
                            std::uint64_t global_offset, StateId init, const ChunkResult& r0,
                            std::span<const FullRunRecord> fr, bool locate) {
  ChunkResult r;
  r.init_state = init;
  r.counts.assign(dfa.expression_count(), 0);
  StateId s = init;
  for (std::size_t j = 0; j < chunk.size(); ++j) {
    s = dfa.step(s, chunk[j]);
    if (dfa.has_outputs(s)) {
      if (locate) {
        emit(dfa, s, global_offset + j + 1, r.counts, r.prefix_locations);
      } else {
        emit(dfa, s, r.counts);
      }
    }
    if (j < fr.size() && s == fr[j].state_after) {
      // Both sides include the outputs at j, so they cancel exactly.
      for (std::size_t e = 0; e < r.counts.size(); ++e) {
        r.counts[e] += r0.counts[e] - fr[j].cumulative_counts[e];
      }
      r.last_state = r0.last_state;
      r.converged_at = j;
      return r;
    }
  }
  r.last_state = s;
  return r;
}

}  // namespace

std::vector<StateId> possible_starting_states(const Dfa& dfa, SymbolCode prev_last,
                                              [[maybe_unused]] SymbolCode first) {
  std::vector<char> hit(dfa.state_count(), 0);
  for (StateId q = 0; q < dfa.state_count(); ++q) hit[dfa.step(q, prev_last)] = 1;
  std::vector<StateId> pss;
  for (StateId q = 0; q < dfa.state_count(); ++q) {
    if (hit[q]) pss.push_back(q);
  }
  return pss;
}

std::pair<ChunkResult, std::vector<FullRunRecord>> full_run(const Dfa& dfa,
                                                            std::span<const SymbolCode> chunk,
                                                            std::uint64_t global_offset,
                                                            StateId init, const EngineConfig& cfg) {
  const bool locate = cfg.mode == ScanMode::Locate;
  const std::size_t recorded = std::min(cfg.window, chunk.size());
  ChunkResult r;
  r.init_state = init;
  r.counts.assign(dfa.expression_count(), 0);
  std::vector<FullRunRecord> fr;
  fr.reserve(recorded);

  StateId s = init;
  std::size_t j = 0;
  for (; j < recorded; ++j) {
    s = dfa.step(s, chunk[j]);
    if (locate) {
      emit(dfa, s, global_offset + j + 1, r.counts, r.prefix_locations);
    } else {
      emit(dfa, s, r.counts);
    }
    fr.push_back({s, r.counts});
  }

  // Hot loop: one table load per symbol.
  const StateId* table = dfa.table().data();
  if (locate) {
    for (; j < chunk.size(); ++j) {
      s = table[s * kAlphabetSize + chunk[j]];
      if (dfa.has_outputs(s)) emit(dfa, s, global_offset + j + 1, r.counts, r.prefix_locations);
    }
  } else {
    for (; j < chunk.size(); ++j) {
      s = table[s * kAlphabetSize + chunk[j]];
      if (dfa.has_outputs(s)) emit(dfa, s, r.counts);
    }
  }
  r.last_state = s;
  return {std::move(r), std::move(fr)};
}

std::vector<ChunkResult> match_chunk(const Dfa& dfa, std::span<const SymbolCode> chunk,
                                     std::uint64_t global_offset, std::span<const StateId> pss,
                                     const EngineConfig& cfg) {
  if (pss.empty()) throw std::invalid_argument("match_chunk needs at least one starting state");
  std::vector<ChunkResult> results;
  results.reserve(pss.size());
  auto [r0, fr] = full_run(dfa, chunk, global_offset, pss[0], cfg);
  results.push_back(std::move(r0));
  const bool locate = cfg.mode == ScanMode::Locate;
  for (std::size_t i = 1; i < pss.size(); ++i) {
    results.push_back(speculative_run(dfa, chunk, global_offset, pss[i], results[0], fr, locate));
  }
  return results;
}

MatchReport reduce(const Dfa& dfa, const ChunkPlan& plan,
                   std::span<const std::vector<ChunkResult>> per_chunk, const EngineConfig& cfg) {
  if (per_chunk.size() != plan.bounds.size()) {
    throw std::logic_error("reduce: one result list per chunk expected");
  }
  const bool locate = cfg.mode == ScanMode::Locate;
  MatchReport report;
  report.per_expression_counts.assign(dfa.expression_count(), 0);
  report.workers = plan.worker_count;
  report.requested_workers = cfg.workers;
  report.window = cfg.window;
  report.convergence.histogram.assign(cfg.window, 0);
  if (locate) report.locations.emplace();

  StateId carried = dfa.start();
  for (std::size_t i = 0; i < per_chunk.size(); ++i) {
    const auto& results = per_chunk[i];
    report.pss_sizes.push_back(results.size());
    for (std::size_t k = 1; k < results.size(); ++k) {
      auto& conv = report.convergence;
      ++conv.speculative_runs;
      if (results[k].converged_at) {
        ++conv.converged_runs;
        ++conv.histogram[*results[k].converged_at];
        conv.speculative_symbols += *results[k].converged_at + 1;
      } else {
        ++conv.fallback_runs;
        conv.speculative_symbols += plan.bounds[i].size();
      }
    }

    auto it = std::find_if(results.begin(), results.end(),
                           [&](const ChunkResult& r) { return r.init_state == carried; });
    if (it == results.end()) {
      throw std::logic_error("reduce: chunk " + std::to_string(i) +
                             " has no result starting in state " + std::to_string(carried));
    }
    const ChunkResult& sel = *it;
    for (std::size_t e = 0; e < sel.counts.size(); ++e) report.per_expression_counts[e] += sel.counts[e];

    if (locate) {
      auto& out = *report.locations;
      out.insert(out.end(), sel.prefix_locations.begin(), sel.prefix_locations.end());
      if (sel.converged_at) {
        const auto& full = results.front().prefix_locations;
        const std::uint64_t cut = plan.bounds[i].begin + *sel.converged_at + 1;
        auto tail = std::upper_bound(full.begin(), full.end(), cut,
                                     [](std::uint64_t v, const Location& l) { return v < l.end_offset; });
        out.insert(out.end(), tail, full.end());
      }
    }
    carried = sel.last_state;
  }

  for (Count c : report.per_expression_counts) report.total_count += c;
  if (locate && !std::is_sorted(report.locations->begin(), report.locations->end())) {
    std::sort(report.locations->begin(), report.locations->end());
  }
  return report;
}

MatchReport run(const Dfa& dfa, const Sequence& seq, const EngineConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const ChunkPlan plan = plan_chunks(seq, cfg.workers);
  const std::size_t w = plan.bounds.size();
  std::vector<std::vector<ChunkResult>> per_chunk(w);
  std::vector<std::exception_ptr> errors(w);

  auto work = [&](std::size_t i) {
    try {
      const auto [b, e] = plan.bounds[i];
      const auto chunk = seq.view().subspan(b, e - b);
      if (i == 0) {
        const StateId start[] = {dfa.start()};
        per_chunk[i] = match_chunk(dfa, chunk, b, start, cfg);
      } else {
        const auto [prev_last, first] = plan.boundary_symbols[i];
        const auto pss = possible_starting_states(dfa, prev_last, first);
        per_chunk[i] = match_chunk(dfa, chunk, b, pss, cfg);
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(w - 1);
    for (std::size_t i = 1; i < w; ++i) pool.emplace_back(work, i);
    work(0);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  MatchReport report = reduce(dfa, plan, per_chunk, cfg);
  report.input_name = seq.source_name;
  report.input_length = seq.length();
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace kcoex
