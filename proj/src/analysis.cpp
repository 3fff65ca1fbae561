#include "pipedp/analysis.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace pipedp {

namespace {

struct OwnWriteKey {
  std::int64_t head;
  int lane;
  std::int64_t address;

  bool operator==(const OwnWriteKey&) const = default;
};

struct OwnWriteHash {
  std::size_t operator()(const OwnWriteKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.head) * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<std::uint64_t>(k.lane) + 0x7f4a7c15u + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.address) * 0xc2b2ae3d27d4eb4full + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

ConflictReport detect_conflicts(const PipelineTrace& trace) {
  ConflictReport report;
  report.first_head = trace.first_head;
  report.per_step_cost.assign(static_cast<std::size_t>(std::max<std::int64_t>(trace.steps_executed, 0)), 1);

  std::vector<AccessRecord> sorted = trace.records;
  std::sort(sorted.begin(), sorted.end(), [](const AccessRecord& a, const AccessRecord& b) {
    auto key = [](const AccessRecord& r) {
      return std::tuple(r.head, r.substep, static_cast<int>(r.kind), r.address, r.lane);
    };
    return key(a) < key(b);
  });

  auto same_group = [](const AccessRecord& a, const AccessRecord& b) {
    return a.head == b.head && a.substep == b.substep && a.kind == b.kind && a.address == b.address;
  };

  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i + 1;
    while (j < sorted.size() && same_group(sorted[i], sorted[j])) ++j;
    if (j - i >= 2) {
      ConflictGroup group;
      group.head = sorted[i].head;
      group.substep = sorted[i].substep;
      group.kind = sorted[i].kind;
      group.address = sorted[i].address;
      for (std::size_t r = i; r < j; ++r) group.lanes.push_back(sorted[r].lane);
      const int size = static_cast<int>(group.lanes.size());
      report.max_group_size = std::max(report.max_group_size, size);
      const std::int64_t step = group.head - trace.first_head;
      if (step >= 0 && step < static_cast<std::int64_t>(report.per_step_cost.size())) {
        auto& cost = report.per_step_cost[static_cast<std::size_t>(step)];
        cost = std::max(cost, size);
      }
      report.groups.push_back(std::move(group));
    }
    i = j;
  }
  return report;
}

HazardReport detect_hazards(const PipelineTrace& trace) {
  // Last write per address and the set of (head, lane, address) own-writes.
  std::unordered_map<std::int64_t, std::pair<std::int64_t, int>> last_write;
  std::unordered_set<OwnWriteKey, OwnWriteHash> own_writes;
  for (const AccessRecord& r : trace.records) {
    if (r.kind != AccessKind::write) continue;
    own_writes.insert({r.head, r.lane, r.address});
    auto [it, inserted] = last_write.emplace(r.address, std::pair{r.head, r.substep});
    if (!inserted && std::tuple(r.head, r.substep) > std::tuple(it->second.first, it->second.second)) {
      it->second = {r.head, r.substep};
    }
  }

  HazardReport report;
  for (const AccessRecord& r : trace.records) {
    if (r.kind != AccessKind::read) continue;
    const auto it = last_write.find(r.address);
    if (it == last_write.end()) continue;  // preset cell, never written
    if (own_writes.contains({r.head, r.lane, r.address})) continue;
    const auto [fin_head, fin_substep] = it->second;
    const bool before = r.head < fin_head || (r.head == fin_head && r.substep <= fin_substep);
    if (before) {
      report.hazards.push_back({r.head, r.substep, r.lane, r.address, fin_head, fin_substep});
    }
  }
  std::sort(report.hazards.begin(), report.hazards.end(),
            [](const HazardRecord& a, const HazardRecord& b) {
              return std::tuple(a.head, a.substep, a.lane, a.address) <
                     std::tuple(b.head, b.substep, b.lane, b.address);
            });
  return report;
}

std::vector<std::int64_t> completion_map_mismatches(
    const PipelineTrace& trace, const std::function<std::int64_t(std::int64_t)>& completion_head) {
  std::unordered_map<std::int64_t, std::int64_t> last_write;
  for (const AccessRecord& r : trace.records) {
    if (r.kind != AccessKind::write) continue;
    auto [it, inserted] = last_write.emplace(r.address, r.head);
    if (!inserted) it->second = std::max(it->second, r.head);
  }
  std::vector<std::int64_t> mismatches;
  for (const auto& [address, head] : last_write) {
    if (completion_head(address) != head) mismatches.push_back(address);
  }
  std::sort(mismatches.begin(), mismatches.end());
  return mismatches;
}

}  // namespace pipedp
