#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pipedp/analysis.hpp"
#include "pipedp/engine.hpp"
#include "pipedp/mcm.hpp"

namespace pipedp {

// The (n-1)-lane pipeline over the linearized triangular table. Lane j at
// head i contributes term j of cell i_j = i - j + 1, in four substeps:
//   1: v_l <- left operand    2: v_r <- right operand
//   3: v_S <- v_l + v_r + weight
//   4: store v_S (lane 1) or fold it into the cell with min (lanes > 1)
//
// The printed activation guard is unsatisfiable as written (i_j >= n+1 can
// never be <= k_{i_j} <= n-1); lane j is active iff i_j is a computed cell
// and j <= k_{i_j}, which reproduces the worked term assignments.
class McmProgram {
 public:
  explicit McmProgram(const McmInstance& instance);

  HeadRange head_range() const { return {n_ + 1, cell_count(n_) + n_ - 2}; }
  int lane_count() const { return static_cast<int>(n_) - 1; }
  std::int64_t table_size() const { return cell_count(n_) + 1; }

  bool plan(std::int64_t head, int lane, LanePlan& out) const {
    const std::int64_t cell = head - lane + 1;
    if (cell < n_ + 1 || cell > cell_count(n_)) return false;
    if (lane > term_counts_[static_cast<std::size_t>(cell)]) return false;
    const std::int64_t r = rows_[static_cast<std::size_t>(cell)];
    const std::int64_t c = cols_[static_cast<std::size_t>(cell)];
    out.substep_count = 4;
    out.sub[0] = SubstepAccess{{lin_of(r, r + lane - 1)}, 1, -1};
    out.sub[1] = SubstepAccess{{lin_of(r + lane, c)}, 1, -1};
    out.sub[2] = SubstepAccess{{}, 0, -1};
    if (lane == 1) {
      out.sub[3] = SubstepAccess{{}, 0, cell};
    } else {
      out.sub[3] = SubstepAccess{{cell}, 1, cell};
    }
    out.payload = dims_[static_cast<std::size_t>(r - 1)] *
                  dims_[static_cast<std::size_t>(r + lane - 1)] *
                  dims_[static_cast<std::size_t>(c)];
    return true;
  }

  std::int64_t eval(std::int64_t /*head*/, int lane, int substep, const LanePlan& plan,
                    std::span<const std::int64_t> values, LaneScratch& scratch) const {
    switch (substep) {
      case 1:
        scratch[0] = values[0];  // v_l
        return 0;
      case 2:
        scratch[1] = values[0];  // v_r
        return 0;
      case 3:
        scratch[2] = scratch[0] + scratch[1] + plan.payload;  // v_S = f(v_l, v_r)
        return 0;
      default:
        return lane == 1 ? scratch[2] : std::min(values[0], scratch[2]);
    }
  }

  // Cell x with k_x terms receives its final fold from lane k_x at head
  // x + k_x - 1; base cells are preset.
  std::int64_t completion_head(std::int64_t address) const {
    if (address <= n_) return n_;  // before the first computing head
    return address + term_counts_[static_cast<std::size_t>(address)] - 1;
  }

 private:
  std::int64_t lin_of(std::int64_t row, std::int64_t col) const {
    const std::int64_t d = col - row;
    return d * n_ - d * (d - 1) / 2 + row;
  }

  std::int64_t n_;
  std::vector<std::int64_t> dims_;
  std::vector<std::int64_t> rows_, cols_, term_counts_;  // indexed by address
};

McmProgram build_mcm_program(const McmInstance& instance);

enum class McmMode : std::uint8_t { paper_literal, stall_on_hazard };

struct McmScheduleConfig {
  McmMode mode = McmMode::paper_literal;
  Backend backend = Backend::lockstep;
  int worker_count = 1;
  bool collect_trace = true;
};

struct McmPipelineResult {
  SolutionTable table;
  PipelineTrace trace;
  ConflictReport conflicts;
  HazardReport hazards;
};

// Runs the schedule as printed (paper_literal) or with dependency stalls
// (stall_on_hazard). Paper-literal runs report read-before-completion events
// rather than repairing them; only a run with an empty HazardReport carries
// an oracle-equality claim.
McmPipelineResult solve_mcm_pipeline(const McmInstance& instance,
                                     const McmScheduleConfig& config = {});

// Mechanical check of the access-distinctness lemmas on a trace: substep-1
// reads, substep-2 reads, and substep-4 writes must each touch distinct
// addresses across lanes at every head. The conjunction is the engine-level
// no-conflict statement for this schedule.
struct DistinctnessVerdict {
  bool substep1_reads_distinct = true;
  bool substep2_reads_distinct = true;
  bool substep4_writes_distinct = true;
  std::optional<ConflictGroup> counterexample;

  bool all_ok() const {
    return substep1_reads_distinct && substep2_reads_distinct && substep4_writes_distinct;
  }
};

DistinctnessVerdict verify_substep_distinctness(const PipelineTrace& trace);

/// Addresses of cells predicted to read a not-yet-final operand under the
/// paper-literal schedule: cell (r,c) on diagonal D is implicated iff some
/// term j satisfies lin(r,c) - lin(r+j,c) <= D - 2j (substep ties count).
std::vector<std::int64_t> hazard_frontier(std::int64_t n);

/// Cells implicated by a paper-literal hazard report: the reading lane's own
/// cell, head - lane + 1. Sorted, deduplicated.
std::vector<std::int64_t> hazard_cells(const HazardReport& report);

}  // namespace pipedp
