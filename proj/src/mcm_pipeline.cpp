#include "pipedp/mcm_pipeline.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "pipedp/error.hpp"

namespace pipedp {

McmProgram::McmProgram(const McmInstance& instance) : n_(instance.n()), dims_(instance.dims) {
  const std::int64_t cells = cell_count(n_);
  rows_.assign(static_cast<std::size_t>(cells) + 1, 0);
  cols_.assign(static_cast<std::size_t>(cells) + 1, 0);
  term_counts_.assign(static_cast<std::size_t>(cells) + 1, 0);
  std::int64_t addr = 1;
  for (std::int64_t d = 0; d < n_; ++d) {
    for (std::int64_t r = 1; r + d <= n_; ++r, ++addr) {
      rows_[static_cast<std::size_t>(addr)] = r;
      cols_[static_cast<std::size_t>(addr)] = r + d;
      term_counts_[static_cast<std::size_t>(addr)] = d;
    }
  }
}

McmProgram build_mcm_program(const McmInstance& instance) {
  validate(instance);
  if (instance.n() < 2) fail(errc::invalid_params, "pipeline needs at least two matrices");
  return McmProgram(instance);
}

McmPipelineResult solve_mcm_pipeline(const McmInstance& instance, const McmScheduleConfig& config) {
  const McmProgram program = build_mcm_program(instance);
  RunOptions options;
  options.stall_mode = config.mode == McmMode::stall_on_hazard;
  options.collect_trace = config.collect_trace;
  EngineResult result = run_backend(program, mcm_initial_table(instance), config.backend,
                                    config.worker_count, options);
  McmPipelineResult out;
  out.table = std::move(result.table);
  out.trace = std::move(result.trace);
  if (config.collect_trace) {
    out.conflicts = detect_conflicts(out.trace);
    out.hazards = detect_hazards(out.trace);
  }
  return out;
}

DistinctnessVerdict verify_substep_distinctness(const PipelineTrace& trace) {
  DistinctnessVerdict verdict;
  // (head, substep, address) -> lanes, restricted to the checked accesses.
  std::map<std::tuple<std::int64_t, int, std::int64_t>, std::vector<int>> touched;
  for (const AccessRecord& r : trace.records) {
    const bool checked_read = r.kind == AccessKind::read && (r.substep == 1 || r.substep == 2);
    const bool checked_write = r.kind == AccessKind::write && r.substep == 4;
    if (!checked_read && !checked_write) continue;
    touched[{r.head, r.substep, r.address}].push_back(r.lane);
  }
  for (auto& [key, lanes] : touched) {
    if (lanes.size() < 2) continue;
    const auto [head, substep, address] = key;
    if (substep == 1) verdict.substep1_reads_distinct = false;
    if (substep == 2) verdict.substep2_reads_distinct = false;
    if (substep == 4) verdict.substep4_writes_distinct = false;
    if (!verdict.counterexample) {
      ConflictGroup group;
      group.head = head;
      group.substep = substep;
      group.kind = substep == 4 ? AccessKind::write : AccessKind::read;
      group.address = address;
      std::sort(lanes.begin(), lanes.end());
      group.lanes = lanes;
      verdict.counterexample = std::move(group);
    }
  }
  return verdict;
}

std::vector<std::int64_t> hazard_frontier(std::int64_t n) {
  if (n < 2) fail(errc::invalid_params, "frontier needs n >= 2");
  std::vector<std::int64_t> out;
  for (std::int64_t addr = n + 1; addr <= cell_count(n); ++addr) {
    const TriCoord cell = coord(addr, n);
    const std::int64_t d = cell.diagonal();
    for (std::int64_t j = 1; j <= d; ++j) {
      const std::int64_t right = lin({cell.row + j, cell.col}, n);
      if (addr - right <= d - 2 * j) {
        out.push_back(addr);
        break;
      }
    }
  }
  return out;
}

std::vector<std::int64_t> hazard_cells(const HazardReport& report) {
  std::vector<std::int64_t> cells;
  cells.reserve(report.hazards.size());
  for (const HazardRecord& h : report.hazards) cells.push_back(h.head - h.lane + 1);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

}  // namespace pipedp
