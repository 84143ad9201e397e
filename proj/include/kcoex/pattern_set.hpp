#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kcoex {

using ExpressionId = std::uint32_t;

/// One position of a branch: either a single base or a class of 2+ distinct bases.
/// Bases are stored lowercase, class members in source order.
struct Atom {
  std::string bases;

  bool is_class() const { return bases.size() > 1; }
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Branch {
  std::vector<Atom> atoms;

  /// Number of literals this branch expands to (product of class sizes), saturating.
  std::size_t product_size() const;
  friend bool operator==(const Branch&, const Branch&) = default;
};

struct Expression {
  ExpressionId id = 0;
  std::string source;
  std::vector<Branch> branches;
};

struct ExpressionSet {
  std::vector<Expression> expressions;

  std::size_t size() const { return expressions.size(); }
  bool empty() const { return expressions.empty(); }
};

struct Literal {
  std::string text;
  ExpressionId id = 0;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct LiteralTable {
  std::vector<Literal> literals;
  std::size_t expression_count = 0;

  std::size_t size() const { return literals.size(); }
  bool empty() const { return literals.empty(); }
};

/// Syntax or semantic error in a pattern file. Line and column are 1-based.
class PatternError : public std::runtime_error {
 public:
  PatternError(const std::string& what, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

inline constexpr std::size_t kDefaultExpansionCap = 4096;

/// Parses pattern-file text: one expression per line, '#' comments and blank
/// lines skipped. Grammar:
///   expr   := branch ('|' branch)*
///   branch := atom+
///   atom   := base | '(' base ('|' base)+ ')'
///   base   := a|c|g|t   (case-insensitive)
/// Whitespace is allowed around '|' and at either end of a line.
ExpressionSet parse_expressions(std::string_view text,
                                std::size_t expansion_cap = kDefaultExpansionCap);

/// Cartesian product of every branch, tagged by expression id. Class choices
/// vary fastest at the rightmost class atom and follow source order.
LiteralTable expand_to_literals(const ExpressionSet& set,
                                std::size_t expansion_cap = kDefaultExpansionCap);

/// Literals for a single branch, in the same order expand_to_literals uses.
std::vector<std::string> expand_branch(const Branch& branch,
                                       std::size_t expansion_cap = kDefaultExpansionCap);

std::string render(const Branch& branch);
std::string render(const Expression& expr);

/// The nine regex-dna motif expressions (8-mers and their reverse complements).
std::string_view builtin_patterns_text();
ExpressionSet builtin_expression_set();

}  // namespace kcoex
