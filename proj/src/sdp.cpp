#include "pipedp/sdp.hpp"

#include <bit>
#include <string>

#include "pipedp/error.hpp"

namespace pipedp {

const SdpInstance& validate(const SdpInstance& instance) {
  const auto& offs = instance.offsets.offsets;
  if (offs.empty()) fail(errc::invalid_params, "offset set must be nonempty");
  for (std::size_t i = 0; i < offs.size(); ++i) {
    if (offs[i] <= 0) {
      fail(errc::non_positive_offset, "offset a_" + std::to_string(i + 1) + " is not positive");
    }
    if (i > 0 && offs[i - 1] <= offs[i]) {
      fail(errc::non_decreasing_offsets,
           "offsets must strictly decrease, violated at position " + std::to_string(i + 1));
    }
  }
  if (static_cast<std::int64_t>(instance.init.size()) != instance.offsets.a1()) {
    fail(errc::init_length_mismatch,
         "expected a_1=" + std::to_string(instance.offsets.a1()) + " initial values, got " +
             std::to_string(instance.init.size()));
  }
  if (instance.n <= instance.offsets.a1()) {
    fail(errc::table_too_small, "n=" + std::to_string(instance.n) +
                                    " leaves nothing to compute past the preset prefix");
  }
  return instance;
}

SolutionTable initial_table(const SdpInstance& instance) {
  SolutionTable table(instance.n);
  for (std::size_t i = 0; i < instance.init.size(); ++i) {
    table.cells[i] = instance.init[i];
    table.filled[i] = 1;
  }
  return table;
}

namespace {

// Inner accumulation shared by all three solvers so they stay bit-identical:
// assignment from the a_1 operand, then combine the remaining offsets in
// ascending j.
template <typename Op>
void fill_table(SolutionTable& table, const SdpInstance& inst, Op op) {
  const auto& offs = inst.offsets.offsets;
  const std::int64_t a1 = offs[0];
  for (std::int64_t i = a1; i < inst.n; ++i) {
    std::int64_t acc = table.cells[i - a1];
    for (std::size_t j = 1; j < offs.size(); ++j) {
      acc = op(acc, table.cells[i - offs[j]]);
    }
    table.cells[i] = acc;
    table.filled[i] = 1;
  }
}

void solve_into(SolutionTable& table, const SdpInstance& inst) {
  // Dispatch once so the hot loop carries no per-cell switch.
  switch (inst.op.kind) {
    case OpKind::min:
      fill_table(table, inst, [](std::int64_t a, std::int64_t b) { return a < b ? a : b; });
      break;
    case OpKind::max:
      fill_table(table, inst, [](std::int64_t a, std::int64_t b) { return a > b ? a : b; });
      break;
    default:
      fill_table(table, inst,
                 [op = inst.op](std::int64_t a, std::int64_t b) { return op.apply(a, b); });
      break;
  }
}

std::int64_t ceil_log2(std::int64_t k) {
  return std::bit_width(static_cast<std::uint64_t>(k - 1));
}

}  // namespace

SolutionTable solve_sequential(const SdpInstance& instance) {
  validate(instance);
  SolutionTable table = initial_table(instance);
  solve_into(table, instance);
  return table;
}

PrefixParallelResult solve_prefix_parallel(const SdpInstance& instance) {
  validate(instance);
  PrefixParallelResult result;
  result.table = initial_table(instance);
  solve_into(result.table, instance);
  result.depth_per_cell = ceil_log2(instance.offsets.k());
  const std::int64_t cells = instance.n - instance.offsets.a1();
  result.modeled_steps = cells * std::max<std::int64_t>(result.depth_per_cell, 1);
  return result;
}

NaiveParallelResult solve_naive_parallel(const SdpInstance& instance) {
  validate(instance);
  NaiveParallelResult result;
  result.table = initial_table(instance);
  solve_into(result.table, instance);
  result.serialized_accesses_per_cell = instance.offsets.k() - 1;
  const std::int64_t cells = instance.n - instance.offsets.a1();
  result.modeled_steps = cells * instance.offsets.k();
  return result;
}

}  // namespace pipedp
