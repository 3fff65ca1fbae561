#pragma once

#include <cstdint>
#include <vector>

#include "pipedp/table.hpp"

namespace pipedp {

// A matrix chain A_1..A_n where A_t has dims[t-1] rows and dims[t] columns.
struct McmInstance {
  std::vector<std::int64_t> dims;  // p_0..p_n

  std::int64_t n() const { return static_cast<std::int64_t>(dims.size()) - 1; }

  bool operator==(const McmInstance&) const = default;
};

const McmInstance& validate(const McmInstance& instance);

// 1-based triangular coordinates: cell (r, c) is the sub-chain A_r..A_c.
struct TriCoord {
  std::int64_t row = 1;
  std::int64_t col = 1;

  std::int64_t diagonal() const { return col - row; }

  bool operator==(const TriCoord&) const = default;
};

inline std::int64_t cell_count(std::int64_t n) { return n * (n + 1) / 2; }

/// Diagonal-order linear address, 1-based: diagonals D = 0, 1, 2, ... each
/// enumerated by ascending row; bijective onto [1, n(n+1)/2].
std::int64_t lin(TriCoord coord, std::int64_t n);

/// Inverse of lin.
TriCoord coord(std::int64_t address, std::int64_t n);

// One split of a cell: combine the left prefix and right suffix cells, plus
// the scalar-multiplication cost of joining them.
struct DependencyTerm {
  std::int64_t left_addr = 0;
  std::int64_t right_addr = 0;
  std::int64_t weight = 0;

  bool operator==(const DependencyTerm&) const = default;
};

/// The k_i = c - r terms of a computed cell, in ascending split order.
std::vector<DependencyTerm> deps(std::int64_t address, const McmInstance& instance);

/// Table sized cell_count(n) + 1; addresses are 1-based to match the diagonal
/// numbering, slot 0 is reserved. Base cells 1..n preset to 0.
SolutionTable mcm_initial_table(const McmInstance& instance);

inline std::int64_t apex_address(std::int64_t n) { return cell_count(n); }

/// Ascending-address DP; optionally records the argmin split index per cell.
SolutionTable solve_mcm_sequential(const McmInstance& instance,
                                   std::vector<std::int64_t>* split_points = nullptr);

/// Independent oracle: recursively enumerates every full parenthesization
/// (no table, no linearization) and returns the minimal total cost. n <= 12.
std::int64_t solve_mcm_bruteforce(const McmInstance& instance);

}  // namespace pipedp
