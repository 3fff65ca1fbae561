#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pipedp/analysis.hpp"
#include "pipedp/engine.hpp"
#include "pipedp/sdp.hpp"

namespace pipedp {

// The k-lane, k-stage pipeline over a validated instance. Lane j at head i
// works on cell i_j = i - j + 1 while a_1 <= i_j < n: assignment from the a_1
// operand on lane 1, accumulation on the others. A single substep per head.
class SdpProgram {
 public:
  explicit SdpProgram(const SdpInstance& instance);

  HeadRange head_range() const { return {a1_, n_ + k_ - 2}; }
  int lane_count() const { return static_cast<int>(k_); }
  std::int64_t table_size() const { return n_; }

  bool plan(std::int64_t head, int lane, LanePlan& out) const {
    const std::int64_t cell = head - lane + 1;
    if (cell < a1_ || cell >= n_) return false;
    SubstepAccess& sub = out.sub[0];
    out.substep_count = 1;
    out.payload = 0;
    sub.write = cell;
    if (lane == 1) {
      sub.read_count = 1;
      sub.reads[0] = cell - offsets_[0];
    } else {
      sub.read_count = 2;
      sub.reads[0] = cell;  // own partial value
      sub.reads[1] = cell - offsets_[static_cast<std::size_t>(lane - 1)];
    }
    return true;
  }

  std::int64_t eval(std::int64_t /*head*/, int lane, int /*substep*/, const LanePlan& /*plan*/,
                    std::span<const std::int64_t> values, LaneScratch& /*scratch*/) const {
    if (lane == 1) return values[0];
    return op_.apply(values[0], values[1]);
  }

  // Cell x receives its final accumulating write from lane k at head x+k-1;
  // preset cells are complete before the run starts.
  std::int64_t completion_head(std::int64_t address) const {
    return address < a1_ ? a1_ - 1 : address + k_ - 1;
  }

 private:
  std::int64_t n_, k_, a1_;
  std::vector<std::int64_t> offsets_;
  SemigroupOp op_;
};

SdpProgram build_sdp_program(const SdpInstance& instance);

// Maximal consecutive runs (a_p..a_q with unit descent throughout) within an
// offset set; the longest one predicts the worst read-conflict group.
struct ConflictRunAnalysis {
  std::vector<std::pair<int, int>> runs;  // 1-based inclusive index ranges [p, q]
  std::vector<int> run_lengths;
  int longest_run = 1;
};

ConflictRunAnalysis analyze_conflict_runs(const OffsetSet& offsets);

struct SdpRunConfig {
  Backend backend = Backend::lockstep;
  int worker_count = 1;
  bool collect_trace = true;
};

struct SdpPipelineResult {
  SolutionTable table;
  PipelineTrace trace;
  ConflictReport conflicts;
};

SdpPipelineResult solve_sdp_pipeline(const SdpInstance& instance, const SdpRunConfig& config = {});

}  // namespace pipedp
