#include "pipedp/commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "pipedp/error.hpp"
#include "pipedp/generate.hpp"
#include "pipedp/io.hpp"
#include "pipedp/sdp_pipeline.hpp"

namespace pipedp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Writes to the --out path when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) fail(errc::invalid_params, "cannot open output path: " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct LoadedInstance {
  Problem problem;
  std::optional<SdpInstance> sdp;
  std::optional<McmInstance> mcm;
};

LoadedInstance load_or_generate(const RunSpec& spec) {
  LoadedInstance loaded;
  if (!spec.in_path.empty()) {
    ParsedInstance parsed = read_instance_file(spec.in_path);
    loaded.problem = parsed.kind == InstanceKind::sdp ? Problem::sdp : Problem::mcm;
    loaded.sdp = std::move(parsed.sdp);
    loaded.mcm = std::move(parsed.mcm);
    return loaded;
  }
  loaded.problem = spec.problem;
  if (spec.problem == Problem::sdp) {
    SdpGenParams params;
    params.n = spec.n > 0 ? spec.n : 64;
    params.k = spec.k;
    params.op = SemigroupOp::from_name(spec.op);
    params.seed = spec.seed;
    params.consecutive = spec.consecutive;
    params.a1_cap = spec.a1_cap;
    loaded.sdp = generate_sdp(params);
  } else {
    McmGenParams params;
    params.n = spec.n > 0 ? spec.n : 8;
    params.seed = spec.seed;
    params.dims_min = spec.dims_min;
    params.dims_max = spec.dims_max;
    loaded.mcm = generate_mcm(params);
  }
  return loaded;
}

struct SolveOutcome {
  SolutionTable table;
  double msec = 0.0;
  std::int64_t steps = 0;
  nlohmann::json extra = nlohmann::json::object();
  PipelineTrace trace;  // pipeline solvers only
  bool has_trace = false;
};

SolveOutcome run_sdp_solver(const RunSpec& spec, const SdpInstance& inst, bool collect_trace) {
  SolveOutcome outcome;
  const std::int64_t computed = inst.n - inst.offsets.a1();
  const auto start = Clock::now();
  switch (spec.solver) {
    case Solver::sequential: {
      outcome.table = solve_sequential(inst);
      outcome.steps = computed * inst.offsets.k();
      break;
    }
    case Solver::naive: {
      NaiveParallelResult r = solve_naive_parallel(inst);
      outcome.table = std::move(r.table);
      outcome.steps = r.modeled_steps;
      outcome.extra["serialized_accesses_per_cell"] = r.serialized_accesses_per_cell;
      break;
    }
    case Solver::prefix: {
      PrefixParallelResult r = solve_prefix_parallel(inst);
      outcome.table = std::move(r.table);
      outcome.steps = r.modeled_steps;
      outcome.extra["depth_per_cell"] = r.depth_per_cell;
      break;
    }
    case Solver::pipeline: {
      SdpRunConfig config{spec.backend, spec.workers, collect_trace};
      SdpPipelineResult r = solve_sdp_pipeline(inst, config);
      outcome.table = std::move(r.table);
      outcome.steps = r.trace.steps_executed;
      outcome.trace = std::move(r.trace);
      outcome.has_trace = collect_trace;
      outcome.extra["max_conflict_group"] = r.conflicts.max_group_size;
      outcome.extra["conflict_groups"] = r.conflicts.groups.size();
      break;
    }
    default:
      fail(errc::invalid_params, "solver not applicable to sdp instances");
  }
  outcome.msec = ms_since(start);
  return outcome;
}

SolveOutcome run_mcm_solver(const RunSpec& spec, const McmInstance& inst, bool collect_trace) {
  SolveOutcome outcome;
  const auto start = Clock::now();
  switch (spec.solver) {
    case Solver::sequential: {
      outcome.table = solve_mcm_sequential(inst);
      const std::int64_t n = inst.n();
      outcome.steps = (cell_count(n) - n);  // one head per computed cell
      break;
    }
    case Solver::bruteforce: {
      const std::int64_t cost = solve_mcm_bruteforce(inst);
      outcome.table = SolutionTable(1);
      outcome.table.cells[0] = cost;
      outcome.table.filled[0] = 1;
      outcome.extra["min_cost"] = cost;
      break;
    }
    case Solver::pipeline: {
      McmScheduleConfig config{spec.mode, spec.backend, spec.workers, collect_trace};
      McmPipelineResult r = solve_mcm_pipeline(inst, config);
      outcome.table = std::move(r.table);
      outcome.steps = r.trace.steps_executed;
      outcome.extra["stall_iterations"] = r.trace.stall_iterations;
      outcome.extra["max_conflict_group"] = r.conflicts.max_group_size;
      outcome.extra["hazard_count"] = r.hazards.hazards.size();
      if (!r.hazards.empty()) outcome.extra["hazard_cells"] = hazard_cells(r.hazards);
      outcome.trace = std::move(r.trace);
      outcome.has_trace = collect_trace;
      break;
    }
    default:
      fail(errc::invalid_params, "solver not applicable to mcm instances");
  }
  outcome.msec = ms_since(start);
  return outcome;
}

const char* solver_name(Solver s) {
  switch (s) {
    case Solver::sequential:
      return "sequential";
    case Solver::naive:
      return "naive";
    case Solver::prefix:
      return "prefix";
    case Solver::pipeline:
      return "pipeline";
    case Solver::bruteforce:
      return "bruteforce";
  }
  return "?";
}

void emit_result(const RunSpec& spec, const LoadedInstance& loaded, const SolveOutcome& outcome,
                 std::ostream& out) {
  const std::int64_t last_value =
      outcome.table.cells.empty() ? 0 : outcome.table.cells.back();
  nlohmann::json doc = {
      {"problem", loaded.problem == Problem::sdp ? "sdp" : "mcm"},
      {"solver", solver_name(spec.solver)},
      {"digest", digest_hex(table_digest(outcome.table))},
      {"last_cell", last_value},
      {"steps", outcome.steps},
      {"msec", outcome.msec},
  };
  if (loaded.problem == Problem::mcm && spec.solver != Solver::bruteforce) {
    doc["apex"] = last_value;
  }
  for (auto& [key, value] : outcome.extra.items()) doc[key] = value;

  switch (spec.format) {
    case OutputFormat::json:
      out << doc.dump(2) << '\n';
      break;
    case OutputFormat::csv: {
      out << "problem,solver,digest,last_cell,steps,msec\n";
      out << doc["problem"].get<std::string>() << ',' << doc["solver"].get<std::string>() << ','
          << doc["digest"].get<std::string>() << ',' << last_value << ',' << outcome.steps << ','
          << outcome.msec << '\n';
      break;
    }
    case OutputFormat::text:
      for (auto& [key, value] : doc.items()) {
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
            << '\n';
      }
      break;
  }
}

struct VerifyState {
  bool failed = false;
  bool unverified = false;
};

void check(VerifyState& state, std::ostream& out, const std::string& name, bool ok,
           const std::string& detail = "") {
  out << (ok ? "ok   " : "FAIL ") << name;
  if (!detail.empty()) out << " (" << detail << ")";
  out << '\n';
  if (!ok) state.failed = true;
}

std::string first_diff(const SolutionTable& got, const SolutionTable& want) {
  if (got.cells.size() != want.cells.size()) {
    return "size " + std::to_string(got.cells.size()) + " vs " + std::to_string(want.cells.size());
  }
  for (std::size_t i = 0; i < got.cells.size(); ++i) {
    if (got.cells[i] != want.cells[i]) {
      return "cell " + std::to_string(i) + ": " + std::to_string(got.cells[i]) + " vs " +
             std::to_string(want.cells[i]);
    }
  }
  return "";
}

int verify_sdp(const RunSpec& spec, const SdpInstance& inst, std::ostream& out) {
  VerifyState state;
  const SolutionTable oracle = solve_sequential(inst);
  if (spec.solver == Solver::sequential) {
    // Self-check: re-evaluate the recurrence cell by cell.
    bool pointwise = true;
    const auto& offs = inst.offsets.offsets;
    for (std::int64_t i = inst.offsets.a1(); i < inst.n && pointwise; ++i) {
      std::int64_t acc = oracle.cells[static_cast<std::size_t>(i - offs[0])];
      for (std::size_t j = 1; j < offs.size(); ++j) {
        acc = inst.op.apply(acc, oracle.cells[static_cast<std::size_t>(i - offs[j])]);
      }
      pointwise = acc == oracle.cells[static_cast<std::size_t>(i)];
    }
    check(state, out, "recurrence-pointwise", pointwise);
  } else {
    RunSpec run_spec = spec;
    SolveOutcome outcome = run_sdp_solver(run_spec, inst, /*collect_trace=*/true);
    check(state, out, "table-equals-sequential", outcome.table.cells == oracle.cells,
          first_diff(outcome.table, oracle));
    if (spec.solver == Solver::pipeline) {
      const std::int64_t expected_steps = inst.n + inst.offsets.k() - inst.offsets.a1() - 1;
      check(state, out, "step-count", outcome.steps == expected_steps,
            std::to_string(outcome.steps) + " vs " + std::to_string(expected_steps));
      const HazardReport hazards = detect_hazards(outcome.trace);
      check(state, out, "hazards-empty", hazards.empty(),
            std::to_string(hazards.hazards.size()) + " hazards");
      if (inst.n - inst.offsets.a1() >= inst.offsets.k()) {
        const int predicted = analyze_conflict_runs(inst.offsets).longest_run;
        const ConflictReport conflicts = detect_conflicts(outcome.trace);
        int max_read_group = 1;
        for (const ConflictGroup& g : conflicts.groups) {
          if (g.kind == AccessKind::read) {
            max_read_group = std::max(max_read_group, static_cast<int>(g.lanes.size()));
          }
        }
        check(state, out, "conflict-prediction", max_read_group == predicted,
              "observed " + std::to_string(max_read_group) + ", predicted " +
                  std::to_string(predicted));
      }
    }
  }
  out << "verdict: " << (state.failed ? "fail" : "pass") << '\n';
  return state.failed ? 1 : 0;
}

int verify_mcm(const RunSpec& spec, const McmInstance& inst, std::ostream& out) {
  VerifyState state;
  if (spec.solver == Solver::sequential || spec.solver == Solver::bruteforce) {
    if (inst.n() > 12) {
      fail(errc::too_large_for_brute_force,
           "no independent oracle beyond n=12; use a smaller instance");
    }
    const SolutionTable table = solve_mcm_sequential(inst);
    const std::int64_t apex = table.cells[static_cast<std::size_t>(apex_address(inst.n()))];
    const std::int64_t brute = solve_mcm_bruteforce(inst);
    check(state, out, "apex-equals-bruteforce", apex == brute,
          std::to_string(apex) + " vs " + std::to_string(brute));
  } else if (spec.solver == Solver::pipeline) {
    const SolutionTable oracle = solve_mcm_sequential(inst);
    McmScheduleConfig config{spec.mode, spec.backend, spec.workers, true};
    McmPipelineResult r = solve_mcm_pipeline(inst, config);

    const DistinctnessVerdict verdict = verify_substep_distinctness(r.trace);
    check(state, out, "substep-access-distinctness", verdict.all_ok());
    check(state, out, "no-conflicts", r.conflicts.max_group_size == 1,
          "max group " + std::to_string(r.conflicts.max_group_size));

    if (spec.mode == McmMode::stall_on_hazard) {
      check(state, out, "hazards-empty", r.hazards.empty(),
            std::to_string(r.hazards.hazards.size()) + " hazards");
      check(state, out, "table-equals-sequential", r.table.cells == oracle.cells,
            first_diff(r.table, oracle));
    } else {
      const std::vector<std::int64_t> predicted = hazard_frontier(inst.n());
      const std::vector<std::int64_t> observed = hazard_cells(r.hazards);
      check(state, out, "hazard-frontier-matches", predicted == observed);
      if (r.hazards.empty()) {
        check(state, out, "table-equals-sequential", r.table.cells == oracle.cells,
              first_diff(r.table, oracle));
      } else {
        state.unverified = true;
        out << "note hazardous schedule: result withheld from the equality claim\n";
        for (const std::int64_t cell : observed) {
          out << "hazard at address " << cell << '\n';
        }
      }
    }
  } else {
    fail(errc::invalid_params, "solver not applicable to mcm instances");
  }
  out << "verdict: " << (state.failed ? "fail" : (state.unverified ? "unverified" : "pass"))
      << '\n';
  return state.failed ? 1 : 0;
}

struct BenchBucket {
  std::string label;
  SdpInstance instance;
};

std::vector<BenchBucket> bench_buckets(const RunSpec& spec) {
  struct Regime {
    std::int64_t n_lo, n_hi, k_lo, k_hi;
  };
  // Desk-scale regimes by default; the original table regimes sit behind
  // --paper-scale and take hours on a CPU host.
  const std::vector<Regime> regimes =
      spec.paper_scale
          ? std::vector<Regime>{{1 << 14, 1 << 15, 1 << 12, 1 << 13},
                                {1 << 16, 1 << 17, 1 << 14, 1 << 15},
                                {1 << 18, 1 << 19, 1 << 16, 1 << 17}}
          : std::vector<Regime>{{1 << 13, 1 << 14, 1 << 5, 1 << 6},
                                {1 << 14, 1 << 15, 1 << 7, 1 << 8},
                                {1 << 15, 1 << 16, 1 << 9, 1 << 10}};
  std::vector<BenchBucket> buckets;
  std::mt19937_64 rng(spec.seed);
  int index = 0;
  for (const Regime& regime : regimes) {
    SdpGenParams params;
    params.n = regime.n_lo +
               static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(regime.n_hi - regime.n_lo + 1));
    params.k = regime.k_lo +
               static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(regime.k_hi - regime.k_lo + 1));
    params.op = SemigroupOp::from_name(spec.op);
    params.seed = spec.seed * 1000003ull + static_cast<std::uint64_t>(index);
    BenchBucket bucket;
    bucket.label = "n" + std::to_string(params.n) + "-k" + std::to_string(params.k);
    bucket.instance = generate_sdp(params);
    buckets.push_back(std::move(bucket));
    ++index;
  }
  return buckets;
}

}  // namespace

Problem problem_from_name(const std::string& name) {
  if (name == "sdp") return Problem::sdp;
  if (name == "mcm") return Problem::mcm;
  fail(errc::invalid_params, "unknown problem: " + name);
}

Solver solver_from_name(const std::string& name) {
  if (name == "sequential") return Solver::sequential;
  if (name == "naive") return Solver::naive;
  if (name == "prefix") return Solver::prefix;
  if (name == "pipeline") return Solver::pipeline;
  if (name == "bruteforce") return Solver::bruteforce;
  fail(errc::invalid_params, "unknown solver: " + name);
}

McmMode mode_from_name(const std::string& name) {
  if (name == "paper-literal") return McmMode::paper_literal;
  if (name == "stall-on-hazard" || name == "stall") return McmMode::stall_on_hazard;
  fail(errc::invalid_params, "unknown mode: " + name);
}

Backend backend_from_name(const std::string& name) {
  if (name == "lockstep") return Backend::lockstep;
  if (name == "workers") return Backend::workers;
  fail(errc::invalid_params, "unknown backend: " + name);
}

OutputFormat format_from_name(const std::string& name) {
  if (name == "text") return OutputFormat::text;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  fail(errc::invalid_params, "unknown format: " + name);
}

int cmd_gen(const RunSpec& spec, std::ostream& diag) {
  try {
    Sink sink(spec.out_path);
    if (spec.problem == Problem::sdp) {
      SdpGenParams params;
      params.n = spec.n > 0 ? spec.n : 64;
      params.k = spec.k;
      params.op = SemigroupOp::from_name(spec.op);
      params.seed = spec.seed;
      params.consecutive = spec.consecutive;
      params.a1_cap = spec.a1_cap;
      write_sdp_instance(sink.out(), generate_sdp(params));
    } else {
      McmGenParams params;
      params.n = spec.n > 0 ? spec.n : 8;
      params.seed = spec.seed;
      params.dims_min = spec.dims_min;
      params.dims_max = spec.dims_max;
      write_mcm_instance(sink.out(), generate_mcm(params));
    }
    return 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_run(const RunSpec& spec, std::ostream& diag) {
  try {
    const LoadedInstance loaded = load_or_generate(spec);
    RunSpec effective = spec;
    effective.problem = loaded.problem;
    const bool want_trace = spec.solver == Solver::pipeline;
    SolveOutcome outcome = loaded.problem == Problem::sdp
                               ? run_sdp_solver(effective, *loaded.sdp, want_trace)
                               : run_mcm_solver(effective, *loaded.mcm, want_trace);
    if (!spec.trace_out.empty()) {
      if (!outcome.has_trace) fail(errc::invalid_params, "--trace-out needs the pipeline solver");
      std::ofstream trace_file(spec.trace_out);
      if (!trace_file) fail(errc::invalid_params, "cannot open trace path: " + spec.trace_out);
      trace_file << trace_to_text(outcome.trace);
    }
    Sink sink(spec.out_path);
    emit_result(effective, loaded, outcome, sink.out());
    return 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_verify(const RunSpec& spec, std::ostream& diag) {
  try {
    const LoadedInstance loaded = load_or_generate(spec);
    Sink sink(spec.out_path);
    return loaded.problem == Problem::sdp ? verify_sdp(spec, *loaded.sdp, sink.out())
                                          : verify_mcm(spec, *loaded.mcm, sink.out());
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_bench(const RunSpec& spec, std::ostream& diag) {
  try {
    Sink sink(spec.out_path);
    std::ostream& out = sink.out();
    out << "bucket,solver,mean_msec,result_digest,steps\n";
    for (const BenchBucket& bucket : bench_buckets(spec)) {
      for (const Solver solver : {Solver::sequential, Solver::naive, Solver::prefix,
                                  Solver::pipeline}) {
        RunSpec run_spec = spec;
        run_spec.solver = solver;
        run_spec.backend = Backend::lockstep;
        double total_ms = 0.0;
        SolveOutcome outcome;
        for (int rep = 0; rep < spec.reps; ++rep) {
          outcome = run_sdp_solver(run_spec, bucket.instance, /*collect_trace=*/false);
          total_ms += outcome.msec;
        }
        out << bucket.label << ',' << solver_name(solver) << ','
            << total_ms / std::max(spec.reps, 1) << ','
            << digest_hex(table_digest(outcome.table)) << ',' << outcome.steps << '\n';
      }
    }
    return 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace pipedp
