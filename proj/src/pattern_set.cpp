#include "kcoex/pattern_set.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace kcoex {

namespace {

constexpr std::string_view kBuiltinPatterns =
    "# regex-dna benchmark motifs, one expression per line\n"
    "agggtaaa | tttaccct\n"
    "(c|g|t)gggtaaa | tttaccc(a|c|g)\n"
    "a(a|c|t)ggtaaa | tttacc(a|g|t)t\n"
    "ag(a|c|t)gtaaa | tttac(a|g|t)ct\n"
    "agg(a|c|t)taaa | ttta(a|g|t)cct\n"
    "aggg(a|c|g)aaa | ttt(c|g|t)ccct\n"
    "agggt(c|g|t)aa | tt(a|c|g)accct\n"
    "agggta(c|g|t)a | t(a|c|g)taccct\n"
    "agggtaa(c|g|t) | (a|c|g)ttaccct\n";

bool is_space(char c) { return c == ' ' || c == '\t'; }

char lower_base(char c) {
  switch (c) {
    case 'a': case 'A': return 'a';
    case 'c': case 'C': return 'c';
    case 'g': case 'G': return 'g';
    case 't': case 'T': return 't';
    default: return '\0';
  }
}

std::string describe(char c) {
  if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f) {
    return "byte 0x" + std::to_string(static_cast<unsigned char>(c));
  }
  return std::string("'") + c + "'";
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no, std::size_t column_offset)
      : line_(line), line_no_(line_no), column_offset_(column_offset) {}

  std::vector<Branch> parse() {
    std::vector<Branch> branches;
    skip_ws();
    branches.push_back(parse_branch());
    skip_ws();
    while (!at_end()) {
      if (peek() != '|') fail("unexpected " + describe(peek()));
      ++pos_;
      skip_ws();
      branches.push_back(parse_branch());
      skip_ws();
    }
    return branches;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t pos) const {
    throw PatternError(msg, line_no_, column_offset_ + pos + 1);
  }

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }
  void skip_ws() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  Branch parse_branch() {
    Branch branch;
    while (!at_end()) {
      const char c = peek();
      if (const char b = lower_base(c)) {
        branch.atoms.push_back(Atom{std::string(1, b)});
        ++pos_;
      } else if (c == '(') {
        branch.atoms.push_back(parse_class());
      } else {
        break;
      }
    }
    if (branch.atoms.empty()) {
      if (at_end() || peek() == '|') fail("empty branch");
      fail("unexpected " + describe(peek()));
    }
    return branch;
  }

  Atom parse_class() {
    const std::size_t open = pos_;
    ++pos_;  // '('
    Atom atom;
    for (;;) {
      skip_ws();
      if (at_end()) fail_at("unterminated class", open);
      const char b = lower_base(peek());
      if (!b) fail("expected base in class, found " + describe(peek()));
      if (atom.bases.find(b) != std::string::npos) fail("duplicate base in class");
      atom.bases.push_back(b);
      ++pos_;
      skip_ws();
      if (at_end()) fail_at("unterminated class", open);
      if (peek() == ')') {
        ++pos_;
        break;
      }
      if (peek() != '|') fail("expected '|' or ')' in class, found " + describe(peek()));
      ++pos_;
    }
    if (atom.bases.size() < 2) fail_at("class needs at least two bases", open);
    return atom;
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t column_offset_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && (is_space(s.back()) || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

PatternError::PatternError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

std::size_t Branch::product_size() const {
  std::size_t n = 1;
  for (const auto& atom : atoms) {
    if (n > std::numeric_limits<std::size_t>::max() / atom.bases.size()) {
      return std::numeric_limits<std::size_t>::max();
    }
    n *= atom.bases.size();
  }
  return n;
}

std::vector<std::string> expand_branch(const Branch& branch, std::size_t expansion_cap) {
  const std::size_t total = branch.product_size();
  if (total > expansion_cap) {
    throw std::length_error("branch '" + render(branch) + "' expands to more than " +
                            std::to_string(expansion_cap) + " literals");
  }
  std::vector<std::string> out;
  out.reserve(total);
  // Odometer over class choices; rightmost atom varies fastest.
  std::vector<std::size_t> choice(branch.atoms.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::string lit;
    lit.reserve(branch.atoms.size());
    for (std::size_t i = 0; i < branch.atoms.size(); ++i) lit.push_back(branch.atoms[i].bases[choice[i]]);
    out.push_back(std::move(lit));
    for (std::size_t i = branch.atoms.size(); i-- > 0;) {
      if (++choice[i] < branch.atoms[i].bases.size()) break;
      choice[i] = 0;
    }
  }
  return out;
}

ExpressionSet parse_expressions(std::string_view text, std::size_t expansion_cap) {
  ExpressionSet set;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', start);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    const std::string_view raw = text.substr(start, end - start);
    start = end + 1;

    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    // Columns are reported against the raw line.
    const std::size_t lead = static_cast<std::size_t>(line.data() - raw.data());
    std::vector<Branch> branches = LineParser(line, line_no, lead).parse();

    std::size_t total = 0;
    for (const auto& b : branches) total = std::min(total + b.product_size(), expansion_cap + 1);
    if (total <= expansion_cap) {
      std::set<std::string> seen;
      for (const auto& b : branches) {
        for (auto& lit : expand_branch(b, expansion_cap)) {
          if (!seen.insert(lit).second) {
            throw PatternError("literal '" + lit + "' generated twice by one expression", line_no,
                               lead + 1);
          }
        }
      }
    }

    Expression expr;
    expr.id = static_cast<ExpressionId>(set.expressions.size());
    expr.source = std::string(line);
    expr.branches = std::move(branches);
    set.expressions.push_back(std::move(expr));
  }
  return set;
}

LiteralTable expand_to_literals(const ExpressionSet& set, std::size_t expansion_cap) {
  LiteralTable table;
  table.expression_count = set.size();
  for (const auto& expr : set.expressions) {
    for (const auto& branch : expr.branches) {
      for (auto& lit : expand_branch(branch, expansion_cap)) {
        table.literals.push_back(Literal{std::move(lit), expr.id});
      }
    }
  }
  return table;
}

std::string render(const Branch& branch) {
  std::string out;
  for (const auto& atom : branch.atoms) {
    if (!atom.is_class()) {
      out += atom.bases;
      continue;
    }
    out += '(';
    for (std::size_t i = 0; i < atom.bases.size(); ++i) {
      if (i) out += '|';
      out += atom.bases[i];
    }
    out += ')';
  }
  return out;
}

std::string render(const Expression& expr) {
  std::string out;
  for (std::size_t i = 0; i < expr.branches.size(); ++i) {
    if (i) out += " | ";
    out += render(expr.branches[i]);
  }
  return out;
}

std::string_view builtin_patterns_text() { return kBuiltinPatterns; }

ExpressionSet builtin_expression_set() { return parse_expressions(kBuiltinPatterns); }

}  // namespace kcoex
