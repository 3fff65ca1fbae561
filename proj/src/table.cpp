#include "pipedp/table.hpp"

#include <algorithm>
#include <cstdio>

namespace pipedp {

bool SolutionTable::all_filled() const {
  return std::all_of(filled.begin(), filled.end(), [](std::uint8_t f) { return f != 0; });
}

std::uint64_t table_digest(const SolutionTable& table) {
  constexpr std::uint64_t kOffset = 14695981039346656037ull;
  constexpr std::uint64_t kPrime = 1099511628211ull;
  std::uint64_t h = kOffset;
  auto mix = [&](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xff;
      h *= kPrime;
    }
  };
  mix(static_cast<std::uint64_t>(table.cells.size()));
  for (std::int64_t c : table.cells) mix(static_cast<std::uint64_t>(c));
  return h;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
  return std::string(buf);
}

}  // namespace pipedp
