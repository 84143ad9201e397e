#include "kcoex/automaton.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <ostream>
#include <stdexcept>

namespace kcoex {

Dfa::Dfa(std::size_t state_count, std::size_t expression_count, std::vector<StateId> table,
         std::vector<std::vector<ExpressionId>> outputs, std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)), expression_count_(expression_count) {
  if (state_count == 0) throw std::invalid_argument("automaton needs at least one state");
  if (table_.size() != state_count * kAlphabetSize) {
    throw std::invalid_argument("transition table is not state_count x 5");
  }
  if (outputs.size() != state_count) throw std::invalid_argument("one output multiset per state");
  if (labels_.empty()) labels_.resize(state_count);
  if (labels_.size() != state_count) throw std::invalid_argument("one label per state");
  for (StateId t : table_) {
    if (t >= state_count) throw std::invalid_argument("transition target out of range");
  }
  output_offsets_.assign(1, 0);
  output_offsets_.reserve(state_count + 1);
  for (auto& out : outputs) {
    std::sort(out.begin(), out.end());
    for (ExpressionId id : out) {
      if (id >= expression_count_) throw std::invalid_argument("output id out of range");
      output_ids_.push_back(id);
    }
    output_offsets_.push_back(static_cast<std::uint32_t>(output_ids_.size()));
  }
}

Dfa build_dfa(const LiteralTable& table) {
  if (table.empty()) throw std::invalid_argument("cannot build an automaton from no literals");

  // Trie in insertion order first; renumbered breadth-first below.
  struct Node {
    std::array<std::int64_t, kBaseCount> child{-1, -1, -1, -1};
    std::vector<ExpressionId> ends;
  };
  std::vector<Node> trie(1);
  for (const auto& lit : table.literals) {
    if (lit.text.empty()) throw std::invalid_argument("empty literal");
    if (lit.id >= table.expression_count) throw std::invalid_argument("literal id out of range");
    std::size_t node = 0;
    for (char c : lit.text) {
      const SymbolCode b = base_code(c);
      if (b >= kBaseCount) throw std::invalid_argument("literal '" + lit.text + "' is not over acgt");
      if (trie[node].child[b] < 0) {
        trie[node].child[b] = static_cast<std::int64_t>(trie.size());
        trie.emplace_back();
      }
      node = static_cast<std::size_t>(trie[node].child[b]);
    }
    trie[node].ends.push_back(lit.id);
  }

  const std::size_t n = trie.size();
  std::vector<std::size_t> order;  // new id -> trie node
  std::vector<StateId> renumber(n);
  std::vector<std::string> labels;
  order.reserve(n);
  labels.reserve(n);
  order.push_back(0);
  labels.emplace_back();
  for (std::size_t i = 0; i < order.size(); ++i) {
    renumber[order[i]] = static_cast<StateId>(i);
    for (SymbolCode b = 0; b < kBaseCount; ++b) {
      if (const auto c = trie[order[i]].child[b]; c >= 0) {
        order.push_back(static_cast<std::size_t>(c));
        labels.push_back(labels[i] + symbol_char(b));
      }
    }
  }

  std::vector<StateId> delta(n * kAlphabetSize, Dfa::kStart);
  std::vector<StateId> fail(n, Dfa::kStart);
  std::vector<std::vector<ExpressionId>> outputs(n);

  // BFS order guarantees fail[s] and its row are final before s is processed.
  for (std::size_t s = 0; s < n; ++s) {
    const Node& node = trie[order[s]];
    outputs[s] = node.ends;
    if (s != 0) {
      const auto& inherited = outputs[fail[s]];
      outputs[s].insert(outputs[s].end(), inherited.begin(), inherited.end());
    }
    for (SymbolCode b = 0; b < kBaseCount; ++b) {
      if (node.child[b] >= 0) {
        const StateId c = renumber[static_cast<std::size_t>(node.child[b])];
        delta[s * kAlphabetSize + b] = c;
        fail[c] = s == 0 ? Dfa::kStart : delta[fail[s] * kAlphabetSize + b];
      } else {
        delta[s * kAlphabetSize + b] = s == 0 ? Dfa::kStart : delta[fail[s] * kAlphabetSize + b];
      }
    }
    delta[s * kAlphabetSize + static_cast<SymbolCode>(Symbol::Other)] = Dfa::kStart;
  }

  return Dfa(n, table.expression_count, std::move(delta), std::move(outputs), std::move(labels));
}

Dfa minimize(const Dfa& dfa) {
  const std::size_t n = dfa.state_count();

  // Initial partition: states with equal output multisets.
  std::vector<std::size_t> block_of(n);
  std::vector<std::vector<StateId>> blocks;
  {
    std::map<std::vector<ExpressionId>, std::size_t> by_output;
    for (StateId s = 0; s < n; ++s) {
      auto out = dfa.outputs(s);
      auto [it, inserted] =
          by_output.try_emplace(std::vector<ExpressionId>(out.begin(), out.end()), blocks.size());
      if (inserted) blocks.emplace_back();
      block_of[s] = it->second;
      blocks[it->second].push_back(s);
    }
  }

  // inverse[sym][t] = states s with step(s, sym) == t
  std::array<std::vector<std::vector<StateId>>, kAlphabetSize> inverse;
  for (auto& inv : inverse) inv.resize(n);
  for (StateId s = 0; s < n; ++s) {
    for (SymbolCode sym = 0; sym < kAlphabetSize; ++sym) inverse[sym][dfa.step(s, sym)].push_back(s);
  }

  std::deque<std::pair<std::size_t, SymbolCode>> work;
  std::vector<std::array<bool, kAlphabetSize>> queued;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    queued.push_back({});
    for (SymbolCode sym = 0; sym < kAlphabetSize; ++sym) {
      work.emplace_back(b, sym);
      queued[b][sym] = true;
    }
  }

  std::vector<std::size_t> hits;  // per block: number of marked members
  std::vector<char> marked(n, 0);
  while (!work.empty()) {
    const auto [splitter, sym] = work.front();
    work.pop_front();
    queued[splitter][sym] = false;

    std::vector<StateId> pre;
    for (StateId t : blocks[splitter]) {
      for (StateId s : inverse[sym][t]) pre.push_back(s);
    }
    hits.assign(blocks.size(), 0);
    std::vector<std::size_t> touched;
    for (StateId s : pre) {
      if (marked[s]) continue;
      marked[s] = 1;
      if (hits[block_of[s]]++ == 0) touched.push_back(block_of[s]);
    }
    for (std::size_t b : touched) {
      if (hits[b] == blocks[b].size()) continue;
      std::vector<StateId> in, out;
      for (StateId s : blocks[b]) (marked[s] ? in : out).push_back(s);
      const std::size_t nb = blocks.size();
      blocks[b] = std::move(out);
      blocks.push_back(std::move(in));
      queued.push_back({});
      for (StateId s : blocks[nb]) block_of[s] = nb;
      for (SymbolCode c = 0; c < kAlphabetSize; ++c) {
        if (queued[b][c]) {
          work.emplace_back(nb, c);
          queued[nb][c] = true;
        } else {
          const std::size_t smaller = blocks[nb].size() < blocks[b].size() ? nb : b;
          work.emplace_back(smaller, c);
          queued[smaller][c] = true;
        }
      }
    }
    for (StateId s : pre) marked[s] = 0;
  }

  // Renumber blocks breadth-first from the start state's block.
  for (auto& members : blocks) std::sort(members.begin(), members.end());
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> new_id(blocks.size(), kUnset);
  std::vector<std::size_t> bfs{block_of[Dfa::kStart]};
  new_id[bfs[0]] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    const StateId rep = blocks[bfs[i]].front();
    for (SymbolCode sym = 0; sym < kAlphabetSize; ++sym) {
      const std::size_t b = block_of[dfa.step(rep, sym)];
      if (new_id[b] == kUnset) {
        new_id[b] = bfs.size();
        bfs.push_back(b);
      }
    }
  }

  const std::size_t m = bfs.size();
  std::vector<StateId> table(m * kAlphabetSize);
  std::vector<std::vector<ExpressionId>> outputs(m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    const StateId rep = blocks[bfs[i]].front();
    for (SymbolCode sym = 0; sym < kAlphabetSize; ++sym) {
      table[i * kAlphabetSize + sym] = static_cast<StateId>(new_id[block_of[dfa.step(rep, sym)]]);
    }
    auto out = dfa.outputs(rep);
    outputs[i].assign(out.begin(), out.end());
    labels[i] = dfa.label(rep);
  }
  return Dfa(m, dfa.expression_count(), std::move(table), std::move(outputs), std::move(labels));
}

void write_dump(std::ostream& os, const Dfa& dfa) {
  os << "#state\tlabel\ta\tc\tg\tt\tother\toutputs\n";
  for (StateId s = 0; s < dfa.state_count(); ++s) {
    os << s << '\t' << dfa.label(s);
    for (StateId t : dfa.row(s)) os << '\t' << t;
    os << '\t';
    bool first = true;
    for (ExpressionId id : dfa.outputs(s)) {
      if (!first) os << ',';
      os << id;
      first = false;
    }
    os << '\n';
  }
}

}  // namespace kcoex
