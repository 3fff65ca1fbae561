#include "pipedp/sdp_pipeline.hpp"

namespace pipedp {

SdpProgram::SdpProgram(const SdpInstance& instance)
    : n_(instance.n),
      k_(instance.offsets.k()),
      a1_(instance.offsets.a1()),
      offsets_(instance.offsets.offsets),
      op_(instance.op) {}

SdpProgram build_sdp_program(const SdpInstance& instance) {
  validate(instance);
  return SdpProgram(instance);
}

ConflictRunAnalysis analyze_conflict_runs(const OffsetSet& offsets) {
  ConflictRunAnalysis analysis;
  const auto& a = offsets.offsets;
  const int k = static_cast<int>(a.size());
  int p = 1;
  for (int r = 1; r <= k; ++r) {
    const bool extends = r < k && a[static_cast<std::size_t>(r - 1)] == a[static_cast<std::size_t>(r)] + 1;
    if (!extends) {
      analysis.runs.emplace_back(p, r);
      analysis.run_lengths.push_back(r - p + 1);
      analysis.longest_run = std::max(analysis.longest_run, r - p + 1);
      p = r + 1;
    }
  }
  return analysis;
}

SdpPipelineResult solve_sdp_pipeline(const SdpInstance& instance, const SdpRunConfig& config) {
  validate(instance);
  const SdpProgram program(instance);
  RunOptions options;
  options.collect_trace = config.collect_trace;
  EngineResult result =
      run_backend(program, initial_table(instance), config.backend, config.worker_count, options);
  ConflictReport conflicts =
      config.collect_trace ? detect_conflicts(result.trace) : ConflictReport{};
  return SdpPipelineResult{std::move(result.table), std::move(result.trace), std::move(conflicts)};
}

}  // namespace pipedp
