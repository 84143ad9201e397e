#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kcoex/alphabet.hpp"

namespace kcoex {

enum class InputFormat { Fasta, Raw };

/// A DNA text normalized to 5-class symbol codes, one byte per symbol.
struct Sequence {
  std::vector<SymbolCode> symbols;
  std::string source_name;

  std::size_t length() const { return symbols.size(); }
  std::span<const SymbolCode> view() const { return symbols; }
};

struct ChunkBounds {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const ChunkBounds&, const ChunkBounds&) = default;
};

struct ChunkPlan {
  std::size_t worker_count = 1;
  std::vector<ChunkBounds> bounds;
  /// (last symbol of chunk i-1, first symbol of chunk i); index 0 is unused.
  std::vector<std::pair<SymbolCode, SymbolCode>> boundary_symbols;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// FASTA: '>' lines dropped. Both formats drop ASCII whitespace and map
/// every byte to a symbol class (non-acgt -> Other).
Sequence parse_sequence(std::string_view body, InputFormat format, std::string source_name = {});

/// Reads and normalizes a file. Throws InputError if it cannot be read.
Sequence load_sequence(const std::filesystem::path& path, InputFormat format);

/// .fa / .fasta / .fna (any case) select FASTA, anything else raw.
InputFormat format_from_extension(const std::filesystem::path& path);

/// Splits into w = min(requested, max(1, length)) chunks of floor(length / w)
/// symbols; the last chunk absorbs the remainder. An empty sequence yields a
/// single empty chunk.
ChunkPlan plan_chunks(const Sequence& seq, std::size_t requested_workers);

}  // namespace kcoex
