#include "kcoex/oracle.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <thread>

namespace kcoex {

NaiveResult naive_count(const LiteralTable& table, const Sequence& seq) {
  NaiveResult res;
  res.counts.assign(table.expression_count, 0);
  const auto& text = seq.symbols;
  for (const auto& lit : table.literals) {
    std::vector<SymbolCode> pat;
    for (char c : lit.text) pat.push_back(base_code(c));
    if (pat.empty() || pat.size() > text.size()) continue;
    for (std::size_t i = 0; i + pat.size() <= text.size(); ++i) {
      bool hit = true;
      for (std::size_t k = 0; k < pat.size(); ++k) {
        // Other never equals a literal base.
        if (text[i + k] != pat[k]) {
          hit = false;
          break;
        }
      }
      if (hit) {
        ++res.counts[lit.id];
        res.locations.push_back({i + pat.size(), lit.id});
      }
    }
  }
  std::sort(res.locations.begin(), res.locations.end());
  return res;
}

Counts sequential_count(const Dfa& dfa, const Sequence& seq) {
  Counts counts(dfa.expression_count(), 0);
  StateId s = dfa.start();
  for (SymbolCode c : seq.symbols) {
    s = dfa.step(s, c);
    for (ExpressionId id : dfa.outputs(s)) ++counts[id];
  }
  return counts;
}

Counts pattern_parallel_count(const ExpressionSet& set, const Sequence& seq, std::size_t workers) {
  Counts counts(set.size(), 0);
  if (set.empty()) return counts;
  workers = std::clamp<std::size_t>(workers, 1, set.size());

  // Worker w owns expressions w, w + workers, ...; ids are local to its automaton.
  std::vector<std::vector<ExpressionId>> owned(workers);
  for (ExpressionId e = 0; e < set.size(); ++e) owned[e % workers].push_back(e);

  std::vector<Counts> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      ExpressionSet sub;
      for (ExpressionId global : owned[w]) {
        Expression expr = set.expressions[global];
        expr.id = static_cast<ExpressionId>(sub.expressions.size());
        sub.expressions.push_back(std::move(expr));
      }
      partial[w] = sequential_count(build_dfa(expand_to_literals(sub)), seq);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t w = 0; w < workers; ++w) {
    for (std::size_t k = 0; k < owned[w].size(); ++k) counts[owned[w][k]] = partial[w][k];
  }
  return counts;
}

Sequence synthetic_sequence(std::size_t length, std::uint64_t seed, double other_rate) {
  // mt19937_64 output is fully specified, unlike the std distributions.
  std::mt19937_64 rng(seed);
  Sequence seq;
  seq.source_name = "synthetic:" + std::to_string(length) + ":" + std::to_string(seed);
  seq.symbols.resize(length);
  if (other_rate <= 0.0) {
    std::size_t i = 0;
    while (i < length) {
      std::uint64_t bits = rng();
      for (int k = 0; k < 32 && i < length; ++k, ++i, bits >>= 2) {
        seq.symbols[i] = static_cast<SymbolCode>(bits & 3u);
      }
    }
    return seq;
  }
  const auto threshold = static_cast<std::uint64_t>(std::min(other_rate, 1.0) * 9007199254740992.0);
  for (auto& sym : seq.symbols) {
    const std::uint64_t x = rng();
    sym = (x >> 11) < threshold ? static_cast<SymbolCode>(Symbol::Other)
                                : static_cast<SymbolCode>(x & 3u);
  }
  return seq;
}

}  // namespace kcoex
