#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pipedp/engine.hpp"
#include "pipedp/mcm_pipeline.hpp"

namespace pipedp {

enum class Problem : std::uint8_t { sdp, mcm };
enum class Solver : std::uint8_t { sequential, naive, prefix, pipeline, bruteforce };
enum class OutputFormat : std::uint8_t { text, json, csv };

Problem problem_from_name(const std::string& name);
Solver solver_from_name(const std::string& name);
McmMode mode_from_name(const std::string& name);
Backend backend_from_name(const std::string& name);
OutputFormat format_from_name(const std::string& name);

// Everything a command needs; the CLI fills this from flags, tests fill it
// directly. The seed fully determines generated instances.
struct RunSpec {
  Problem problem = Problem::sdp;
  Solver solver = Solver::sequential;
  McmMode mode = McmMode::paper_literal;
  Backend backend = Backend::lockstep;
  int workers = 1;
  std::uint64_t seed = 0;

  std::string in_path;  // instance file; empty means generate from the fields below
  std::int64_t n = 0;   // 0: per-problem default
  std::int64_t k = 4;
  std::string op = "min";
  bool consecutive = false;
  std::int64_t a1_cap = 0;
  std::int64_t dims_min = 1;
  std::int64_t dims_max = 50;

  int reps = 100;
  OutputFormat format = OutputFormat::text;
  std::string out_path;    // empty: stdout
  std::string trace_out;   // optional trace export (pipeline solvers)
  bool paper_scale = false;
};

int cmd_gen(const RunSpec& spec, std::ostream& diag);
int cmd_run(const RunSpec& spec, std::ostream& diag);
int cmd_verify(const RunSpec& spec, std::ostream& diag);
int cmd_bench(const RunSpec& spec, std::ostream& diag);

}  // namespace pipedp
