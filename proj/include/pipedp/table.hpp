#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pipedp {

// The single shared mutable state of every solver: a linear array of cells
// plus a per-cell finalization flag kept for diagnostics only.
struct SolutionTable {
  std::vector<std::int64_t> cells;
  std::vector<std::uint8_t> filled;

  SolutionTable() = default;
  explicit SolutionTable(std::int64_t size)
      : cells(static_cast<std::size_t>(size), 0), filled(static_cast<std::size_t>(size), 0) {}

  std::int64_t size() const { return static_cast<std::int64_t>(cells.size()); }
  bool all_filled() const;

  bool operator==(const SolutionTable&) const = default;
};

/// FNV-1a over the cell values (little-endian byte order), platform-stable.
std::uint64_t table_digest(const SolutionTable& table);
std::string digest_hex(std::uint64_t digest);

}  // namespace pipedp
