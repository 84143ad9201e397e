#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace kcoex {

/// Normalized symbol classes. Every input byte maps to exactly one of these.
enum class Symbol : std::uint8_t { A = 0, C = 1, G = 2, T = 3, Other = 4 };

inline constexpr std::size_t kAlphabetSize = 5;
inline constexpr std::size_t kBaseCount = 4;

using SymbolCode = std::uint8_t;

namespace detail {
constexpr std::array<SymbolCode, 256> make_normalize_table() {
  std::array<SymbolCode, 256> t{};
  for (auto& v : t) v = static_cast<SymbolCode>(Symbol::Other);
  t['a'] = t['A'] = 0;
  t['c'] = t['C'] = 1;
  t['g'] = t['G'] = 2;
  t['t'] = t['T'] = 3;
  return t;
}
}  // namespace detail

inline constexpr std::array<SymbolCode, 256> kNormalizeTable = detail::make_normalize_table();

constexpr SymbolCode normalize(unsigned char byte) { return kNormalizeTable[byte]; }

constexpr char symbol_char(SymbolCode code) {
  constexpr std::string_view chars = "acgtn";
  return code < kAlphabetSize ? chars[code] : '?';
}

// Lowercase base to code; returns Other for anything that is not a base.
constexpr SymbolCode base_code(char c) { return normalize(static_cast<unsigned char>(c)); }

}  // namespace kcoex
