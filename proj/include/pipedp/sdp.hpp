#pragma once

#include <cstdint>
#include <vector>

#include "pipedp/semigroup.hpp"
#include "pipedp/table.hpp"

namespace pipedp {

// Strictly decreasing positive offsets a_1 > a_2 > ... > a_k > 0.
struct OffsetSet {
  std::vector<std::int64_t> offsets;

  std::int64_t k() const { return static_cast<std::int64_t>(offsets.size()); }
  std::int64_t a1() const { return offsets.front(); }

  bool operator==(const OffsetSet&) const = default;
};

// A table-fill problem over a linear array: cell i (i >= a_1) combines the k
// cells at the fixed back-offsets with the semigroup operator; the first a_1
// cells are preset with initial values.
struct SdpInstance {
  std::int64_t n = 0;  // total cell count
  OffsetSet offsets;
  std::vector<std::int64_t> init;  // exactly a_1 entries
  SemigroupOp op;

  bool operator==(const SdpInstance&) const = default;
};

/// Checks every instance invariant; throws Error on the first violation.
const SdpInstance& validate(const SdpInstance& instance);

/// Table with the preset prefix written and flagged, remaining cells zeroed.
SolutionTable initial_table(const SdpInstance& instance);

/// Reference solver: ascending i, ascending j accumulation (assignment at j=1).
SolutionTable solve_sequential(const SdpInstance& instance);

// Baseline parallel solvers. Both are cost models executed sequentially: the
// table is computed with the reference accumulation order (bit-stable), and
// the parallel behaviour is reported as step-count artifacts.
struct PrefixParallelResult {
  SolutionTable table;
  std::int64_t depth_per_cell = 0;  // ceil(log2 k): tournament combine depth
  std::int64_t modeled_steps = 0;
};
PrefixParallelResult solve_prefix_parallel(const SdpInstance& instance);

struct NaiveParallelResult {
  SolutionTable table;
  std::int64_t serialized_accesses_per_cell = 0;  // k-1 colliding accumulations
  std::int64_t modeled_steps = 0;
};
NaiveParallelResult solve_naive_parallel(const SdpInstance& instance);

}  // namespace pipedp
