#include "pipedp/mcm.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "pipedp/error.hpp"

namespace pipedp {

const McmInstance& validate(const McmInstance& instance) {
  if (instance.dims.size() < 2) {
    fail(errc::invalid_params, "dimension vector needs at least two entries");
  }
  std::int64_t max_dim = 1;
  for (std::int64_t d : instance.dims) {
    if (d < 1) fail(errc::invalid_params, "matrix dimensions must be >= 1");
    max_dim = std::max(max_dim, d);
  }
  // Every cell value is at most (n-1) * max_dim^3; reject instances where the
  // accumulated costs could overflow 64-bit arithmetic.
  const std::int64_t n = instance.n();
  constexpr std::int64_t kLimit = std::int64_t{1} << 61;
  if (max_dim > 1'000'000 || n * max_dim * max_dim * max_dim > kLimit) {
    fail(errc::weight_overflow, "dimension products too large for 64-bit cost accumulation");
  }
  return instance;
}

std::int64_t lin(TriCoord c, std::int64_t n) {
  if (c.row < 1 || c.row > c.col || c.col > n) {
    fail(errc::coord_out_of_range, "(" + std::to_string(c.row) + "," + std::to_string(c.col) +
                                       ") outside the order-" + std::to_string(n) + " triangle");
  }
  const std::int64_t d = c.col - c.row;
  return d * n - d * (d - 1) / 2 + c.row;
}

TriCoord coord(std::int64_t address, std::int64_t n) {
  if (address < 1 || address > cell_count(n)) {
    fail(errc::address_out_of_range, "address " + std::to_string(address) +
                                         " outside table of " + std::to_string(cell_count(n)) +
                                         " cells");
  }
  std::int64_t d = 0;
  std::int64_t base = 0;  // addresses before diagonal d
  while (address > base + (n - d)) {
    base += n - d;
    ++d;
  }
  const std::int64_t row = address - base;
  return TriCoord{row, row + d};
}

std::vector<DependencyTerm> deps(std::int64_t address, const McmInstance& instance) {
  const std::int64_t n = instance.n();
  const TriCoord cell = coord(address, n);
  if (cell.diagonal() == 0) {
    fail(errc::base_cell_has_no_deps,
         "cell " + std::to_string(address) + " is preset and has no dependencies");
  }
  std::vector<DependencyTerm> terms;
  terms.reserve(static_cast<std::size_t>(cell.diagonal()));
  const auto& p = instance.dims;
  for (std::int64_t j = 1; j <= cell.diagonal(); ++j) {
    DependencyTerm term;
    term.left_addr = lin({cell.row, cell.row + j - 1}, n);
    term.right_addr = lin({cell.row + j, cell.col}, n);
    term.weight = p[static_cast<std::size_t>(cell.row - 1)] *
                  p[static_cast<std::size_t>(cell.row + j - 1)] *
                  p[static_cast<std::size_t>(cell.col)];
    terms.push_back(term);
  }
  return terms;
}

SolutionTable mcm_initial_table(const McmInstance& instance) {
  const std::int64_t n = instance.n();
  SolutionTable table(cell_count(n) + 1);
  table.filled[0] = 1;  // reserved slot
  for (std::int64_t i = 1; i <= n; ++i) table.filled[static_cast<std::size_t>(i)] = 1;
  return table;
}

SolutionTable solve_mcm_sequential(const McmInstance& instance,
                                   std::vector<std::int64_t>* split_points) {
  validate(instance);
  const std::int64_t n = instance.n();
  SolutionTable table = mcm_initial_table(instance);
  if (split_points) split_points->assign(static_cast<std::size_t>(cell_count(n)) + 1, 0);
  for (std::int64_t addr = n + 1; addr <= cell_count(n); ++addr) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::int64_t best_split = 0;
    std::int64_t j = 1;
    for (const DependencyTerm& term : deps(addr, instance)) {
      const std::int64_t cost = table.cells[static_cast<std::size_t>(term.left_addr)] +
                                table.cells[static_cast<std::size_t>(term.right_addr)] +
                                term.weight;
      if (cost < best) {
        best = cost;
        best_split = j;
      }
      ++j;
    }
    table.cells[static_cast<std::size_t>(addr)] = best;
    table.filled[static_cast<std::size_t>(addr)] = 1;
    if (split_points) (*split_points)[static_cast<std::size_t>(addr)] = best_split;
  }
  return table;
}

namespace {

// Minimum over every parenthesization of the chain A_r..A_c, by direct
// recursion on splits. Exponential on purpose; it never touches the table.
std::int64_t enumerate_min_cost(const std::vector<std::int64_t>& p, std::int64_t r,
                                std::int64_t c) {
  if (r == c) return 0;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t s = r; s < c; ++s) {
    const std::int64_t cost = enumerate_min_cost(p, r, s) + enumerate_min_cost(p, s + 1, c) +
                              p[static_cast<std::size_t>(r - 1)] * p[static_cast<std::size_t>(s)] *
                                  p[static_cast<std::size_t>(c)];
    best = std::min(best, cost);
  }
  return best;
}

}  // namespace

std::int64_t solve_mcm_bruteforce(const McmInstance& instance) {
  validate(instance);
  if (instance.n() > 12) {
    fail(errc::too_large_for_brute_force,
         "n=" + std::to_string(instance.n()) + " exceeds the enumeration limit of 12");
  }
  return enumerate_min_cost(instance.dims, 1, instance.n());
}

}  // namespace pipedp
