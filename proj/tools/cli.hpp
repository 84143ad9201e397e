#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kcoex::cli {

/// Parses "64M", "512K", "1G" (binary multiples) or a plain byte count.
std::optional<std::uint64_t> parse_size(std::string_view text);

/// Entry point. Returns 0 on success, 1 on runtime errors (I/O, pattern
/// syntax, correctness failure), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kcoex::cli
