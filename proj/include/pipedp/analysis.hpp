#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pipedp/engine.hpp"

namespace pipedp {

// Lanes that touched the same address in the same (head, substep) with the
// same access kind. Group sizes model run-time serialization cost.
struct ConflictGroup {
  std::int64_t head = 0;
  int substep = 1;
  AccessKind kind = AccessKind::read;
  std::int64_t address = 0;
  std::vector<int> lanes;

  friend bool operator==(const ConflictGroup&, const ConflictGroup&) = default;
};

struct ConflictReport {
  std::vector<ConflictGroup> groups;
  int max_group_size = 1;
  std::int64_t first_head = 0;
  std::vector<int> per_step_cost;  // indexed by head - first_head, 1 if conflict-free

  int cost_at(std::int64_t head) const {
    const std::int64_t i = head - first_head;
    if (i < 0 || i >= static_cast<std::int64_t>(per_step_cost.size())) return 1;
    return per_step_cost[static_cast<std::size_t>(i)];
  }
};

ConflictReport detect_conflicts(const PipelineTrace& trace);

// A read that observed a cell before its last write. Finalization is taken
// from the trace itself (the last write to each address), so traces from
// stall-shifted schedules are judged by what actually executed. A lane's read
// of an address it writes at the same head is the accumulation protocol, not
// a dependency, and is not flagged.
struct HazardRecord {
  std::int64_t head = 0;
  int substep = 1;
  int lane = 1;
  std::int64_t address = 0;
  std::int64_t finalization_head = 0;
  int finalization_substep = 1;

  friend bool operator==(const HazardRecord&, const HazardRecord&) = default;
};

struct HazardReport {
  std::vector<HazardRecord> hazards;

  bool empty() const { return hazards.empty(); }
};

HazardReport detect_hazards(const PipelineTrace& trace);

/// Addresses whose analytic completion head disagrees with the last write
/// observed in the trace. Empty on every paper-literal run.
std::vector<std::int64_t> completion_map_mismatches(
    const PipelineTrace& trace, const std::function<std::int64_t(std::int64_t)>& completion_head);

}  // namespace pipedp
