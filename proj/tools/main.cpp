#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pipedp/commands.hpp"

namespace {

struct RawSpec {
  std::string problem = "sdp";
  std::string solver = "sequential";
  std::string mode = "paper-literal";
  std::string backend = "lockstep";
  std::string format = "text";
  pipedp::RunSpec spec;
};

void add_common_flags(CLI::App* cmd, RawSpec& raw) {
  cmd->add_option("--problem", raw.problem, "sdp | mcm");
  cmd->add_option("--n", raw.spec.n, "table size (sdp) or matrix count (mcm)");
  cmd->add_option("--k", raw.spec.k, "offset count (sdp)");
  cmd->add_option("--seed", raw.spec.seed, "instance seed");
  cmd->add_option("--op", raw.spec.op, "min | max | saturating-add | modular-add");
  cmd->add_flag("--consecutive", raw.spec.consecutive, "offsets (k, k-1, ..., 1)");
  cmd->add_option("--a1-cap", raw.spec.a1_cap, "largest offset when generating (default 2k)");
  cmd->add_option("--dims-min", raw.spec.dims_min, "smallest matrix dimension (mcm)");
  cmd->add_option("--dims-max", raw.spec.dims_max, "largest matrix dimension (mcm)");
  cmd->add_option("--format", raw.format, "text | json | csv");
  cmd->add_option("--out", raw.spec.out_path, "output path (default stdout)");
}

void add_solver_flags(CLI::App* cmd, RawSpec& raw) {
  cmd->add_option("--in", raw.spec.in_path, "instance file (overrides generator flags)");
  cmd->add_option("--solver", raw.solver, "sequential | naive | prefix | pipeline | bruteforce");
  cmd->add_option("--mode", raw.mode, "paper-literal | stall-on-hazard (mcm pipeline)");
  cmd->add_option("--backend", raw.backend, "lockstep | workers");
  cmd->add_option("--workers", raw.spec.workers, "worker count for the workers backend");
}

pipedp::RunSpec finalize(RawSpec& raw) {
  raw.spec.problem = pipedp::problem_from_name(raw.problem);
  raw.spec.solver = pipedp::solver_from_name(raw.solver);
  raw.spec.mode = pipedp::mode_from_name(raw.mode);
  raw.spec.backend = pipedp::backend_from_name(raw.backend);
  raw.spec.format = pipedp::format_from_name(raw.format);
  return raw.spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pipeline-parallel dynamic programming engine"};
  app.require_subcommand(1);

  RawSpec gen_raw, run_raw, verify_raw, bench_raw;

  CLI::App* gen = app.add_subcommand("gen", "write a deterministic instance file");
  std::string gen_problem;
  gen->add_option("problem", gen_problem, "sdp | mcm")->required();
  add_common_flags(gen, gen_raw);

  CLI::App* run = app.add_subcommand("run", "run one solver and report a result digest");
  add_common_flags(run, run_raw);
  add_solver_flags(run, run_raw);
  run->add_option("--trace-out", run_raw.spec.trace_out, "export the access trace (pipeline)");

  CLI::App* verify = app.add_subcommand("verify", "run a solver against its oracle");
  add_common_flags(verify, verify_raw);
  add_solver_flags(verify, verify_raw);

  CLI::App* bench = app.add_subcommand("bench", "timing table over three size buckets");
  add_common_flags(bench, bench_raw);
  bench->add_option("--reps", bench_raw.spec.reps, "repetitions per measurement (default 100)");
  bench->add_flag("--paper-scale", bench_raw.spec.paper_scale,
                  "original table regimes (very slow on a CPU host)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      gen_raw.problem = gen_problem;
      return pipedp::cmd_gen(finalize(gen_raw), std::cerr);
    }
    if (run->parsed()) return pipedp::cmd_run(finalize(run_raw), std::cerr);
    if (verify->parsed()) return pipedp::cmd_verify(finalize(verify_raw), std::cerr);
    if (bench->parsed()) return pipedp::cmd_bench(finalize(bench_raw), std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
