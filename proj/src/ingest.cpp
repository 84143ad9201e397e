#include "kcoex/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>

namespace kcoex {

namespace {

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

void append_normalized(std::string_view text, std::vector<SymbolCode>& out) {
  for (char c : text) {
    if (!is_ascii_space(c)) out.push_back(normalize(static_cast<unsigned char>(c)));
  }
}

}  // namespace

Sequence parse_sequence(std::string_view body, InputFormat format, std::string source_name) {
  Sequence seq;
  seq.source_name = std::move(source_name);
  seq.symbols.reserve(body.size());
  if (format == InputFormat::Raw) {
    append_normalized(body, seq.symbols);
    return seq;
  }
  while (!body.empty()) {
    const std::size_t nl = body.find('\n');
    const std::string_view line = body.substr(0, nl);
    body = nl == std::string_view::npos ? std::string_view{} : body.substr(nl + 1);
    if (!line.empty() && line.front() == '>') continue;
    append_normalized(line, seq.symbols);
  }
  return seq;
}

Sequence load_sequence(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input '" + path.string() + "'");
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw InputError("error reading input '" + path.string() + "'");
  return parse_sequence(body, format, path.filename().string());
}

InputFormat format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".fa" || ext == ".fasta" || ext == ".fna" ? InputFormat::Fasta : InputFormat::Raw;
}

ChunkPlan plan_chunks(const Sequence& seq, std::size_t requested_workers) {
  const std::size_t n = seq.length();
  ChunkPlan plan;
  plan.worker_count = std::min(std::max<std::size_t>(requested_workers, 1),
                               std::max<std::size_t>(n, 1));
  const std::size_t w = plan.worker_count;
  const std::size_t q = n / w;
  plan.bounds.reserve(w);
  plan.boundary_symbols.resize(w);
  for (std::size_t i = 0; i < w; ++i) {
    plan.bounds.push_back({i * q, i + 1 == w ? n : (i + 1) * q});
    if (i > 0) {
      const std::size_t b = plan.bounds[i].begin;
      plan.boundary_symbols[i] = {seq.symbols[b - 1], seq.symbols[b]};
    }
  }
  return plan;
}

}  // namespace kcoex
