#pragma once

#include <algorithm>
#include <array>
#include <barrier>
#include <concepts>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pipedp/error.hpp"
#include "pipedp/table.hpp"

namespace pipedp {

struct HeadRange {
  std::int64_t first = 0;
  std::int64_t last = -1;  // inclusive

  std::int64_t count() const { return last < first ? 0 : last - first + 1; }
  bool contains(std::int64_t head) const { return head >= first && head <= last; }
};

inline constexpr int kMaxSubsteps = 4;
inline constexpr int kMaxReadsPerSubstep = 2;

// Memory accesses of one lane in one substep: up to two reads and one write.
struct SubstepAccess {
  std::array<std::int64_t, kMaxReadsPerSubstep> reads{};
  int read_count = 0;
  std::int64_t write = -1;  // < 0: no write
};

// One lane's work at one head position. `payload` is opaque to the engine and
// carries whatever the program's eval needs (e.g. a per-term cost weight).
struct LanePlan {
  std::array<SubstepAccess, kMaxSubsteps> sub{};
  int substep_count = 0;
  std::int64_t payload = 0;
};

// Lane-local scratch, private to one lane for the duration of one head
// iteration; zeroed before substep 1.
using LaneScratch = std::array<std::int64_t, 4>;

enum class AccessKind : std::uint8_t { read, write };

struct AccessRecord {
  std::int64_t head = 0;
  int substep = 1;  // 1..4
  int lane = 1;     // 1-based
  AccessKind kind = AccessKind::read;
  std::int64_t address = 0;

  friend bool operator==(const AccessRecord&, const AccessRecord&) = default;
};

inline bool record_less(const AccessRecord& a, const AccessRecord& b) {
  auto key = [](const AccessRecord& r) {
    return std::tuple(r.head, r.substep, r.lane, static_cast<int>(r.kind), r.address);
  };
  return key(a) < key(b);
}

struct PipelineTrace {
  std::vector<AccessRecord> records;
  std::int64_t first_head = 0;
  std::int64_t steps_executed = 0;      // outer iterations, stalls included
  std::int64_t stall_iterations = 0;    // steps_executed minus the program's head count
  std::vector<std::int64_t> stall_heads;  // iteration heads at which some lane was held
  bool collected = true;                // false when record collection was disabled

  void canonicalize() { std::sort(records.begin(), records.end(), record_less); }
};

// A pipeline program maps (head, lane) to at most one multi-substep action
// over the shared table. `plan` must be a pure function of its arguments;
// `eval` computes substep results from the gathered read values and scratch,
// returning the value to store when the substep writes.
template <typename P>
concept PipelineProgram = requires(const P& p, std::int64_t head, int lane, LanePlan& plan,
                                   int substep, std::span<const std::int64_t> values,
                                   LaneScratch& scratch) {
  { p.head_range() } -> std::convertible_to<HeadRange>;
  { p.lane_count() } -> std::convertible_to<int>;
  { p.table_size() } -> std::convertible_to<std::int64_t>;
  { p.plan(head, lane, plan) } -> std::same_as<bool>;
  { p.eval(head, lane, substep, plan, values, scratch) } -> std::convertible_to<std::int64_t>;
  { p.completion_head(head) } -> std::convertible_to<std::int64_t>;
};

enum class Backend : std::uint8_t { lockstep, workers };

struct RunOptions {
  bool stall_mode = false;
  bool collect_trace = true;
};

struct EngineResult {
  SolutionTable table;
  PipelineTrace trace;
};

namespace detail {

struct WriteCommand {
  int lane;
  std::int64_t address;
  std::int64_t value;
};

struct LaneState {
  std::int64_t vhead = 0;  // next program head this lane will execute
  LanePlan plan{};
  LaneScratch scratch{};
  bool done = false;
  bool active = false;     // current slot has work (vs. an inactive no-op slot)
  bool executing = false;  // runs this iteration (false only for a stalled lane)
};

// Shared per-run state. Substep semantics: all executing lanes read, then
// writes are applied at the substep boundary, so every read observes the
// table as of the end of the previous substep regardless of lane order.
//
// Stall mode replaces the unconditional lock-step advance with per-lane
// in-order dataflow: a lane holds its next action until (a) every operand it
// does not itself write is finalized (all program writes to that address have
// executed) and (b) all program-order-earlier writes to its own target have
// executed. Decisions are made against the state at the start of the
// iteration, so they are identical for every backend and worker count.
template <PipelineProgram P>
class Run {
 public:
  Run(const P& program, SolutionTable table, RunOptions options)
      : prog_(program),
        table_(std::move(table)),
        opt_(options),
        range_(program.head_range()),
        lanes_(program.lane_count()),
        tsize_(program.table_size()) {
    if (range_.count() <= 0) fail(errc::invalid_params, "empty head range");
    if (lanes_ < 1) fail(errc::invalid_params, "lane count must be >= 1");
    if (table_.size() != tsize_) {
      fail(errc::invalid_params, "table size does not match the program");
    }
    state_.resize(static_cast<std::size_t>(lanes_) + 1);
    for (int j = 1; j <= lanes_; ++j) state_[j].vhead = range_.first;
    trace_.first_head = range_.first;
    trace_.collected = opt_.collect_trace;
    if (opt_.stall_mode) enumerate_writers();
  }

  EngineResult run_serial() {
    std::vector<WriteCommand> writes;
    std::vector<AccessRecord> records;
    while (true) {
      IterationSummary summary = plan_all(1, lanes_);
      if (summary.all_done) break;
      check_progress(summary);
      for (int s = 1; s <= summary.max_substeps; ++s) {
        writes.clear();
        for (int j = 1; j <= lanes_; ++j) exec_substep(j, s, writes, records);
        apply_writes(writes);
        flush_records(records);
      }
      finish_iteration(summary);
    }
    return finish();
  }

  EngineResult run_pool(int workers) {
    if (workers < 1) fail(errc::invalid_params, "worker count must be >= 1");
    workers = static_cast<int>(std::min<std::int64_t>(workers, lanes_));

    struct WorkerSlot {
      int lane_lo, lane_hi;  // [lo, hi)
      IterationSummary summary{};
      std::vector<WriteCommand> writes;
      std::vector<AccessRecord> records;
    };
    std::vector<WorkerSlot> slots(workers);
    for (int w = 0; w < workers; ++w) {
      slots[w].lane_lo = 1 + static_cast<int>(static_cast<std::int64_t>(lanes_) * w / workers);
      slots[w].lane_hi = 1 + static_cast<int>(static_cast<std::int64_t>(lanes_) * (w + 1) / workers);
    }

    enum class Phase { plan, substep, stop };
    Phase phase = Phase::plan;
    int substep = 0;
    std::barrier sync_begin(workers + 1);
    std::barrier sync_end(workers + 1);
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker_body = [&](int w) {
      WorkerSlot& slot = slots[w];
      while (true) {
        sync_begin.arrive_and_wait();
        if (phase == Phase::stop) return;
        try {
          if (phase == Phase::plan) {
            slot.summary = plan_all(slot.lane_lo, slot.lane_hi - 1);
          } else {
            slot.writes.clear();
            for (int j = slot.lane_lo; j < slot.lane_hi; ++j) {
              exec_substep(j, substep, slot.writes, slot.records);
            }
          }
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
        sync_end.arrive_and_wait();
      }
    };

    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_body, w);

    auto cycle = [&](Phase p, int s) {
      phase = p;
      substep = s;
      sync_begin.arrive_and_wait();
      sync_end.arrive_and_wait();
      if (first_error) {
        phase = Phase::stop;
        sync_begin.arrive_and_wait();
        std::rethrow_exception(first_error);
      }
    };

    while (true) {
      cycle(Phase::plan, 0);
      IterationSummary summary{};
      summary.all_done = true;
      for (const WorkerSlot& slot : slots) {
        summary.all_done = summary.all_done && slot.summary.all_done;
        summary.any_executed = summary.any_executed || slot.summary.any_executed;
        summary.any_held = summary.any_held || slot.summary.any_held;
        summary.max_substeps = std::max(summary.max_substeps, slot.summary.max_substeps);
      }
      if (summary.all_done) break;
      check_progress(summary);
      for (int s = 1; s <= summary.max_substeps; ++s) {
        cycle(Phase::substep, s);
        for (WorkerSlot& slot : slots) apply_writes(slot.writes);  // lane-ascending
      }
      finish_iteration(summary);
    }
    phase = Phase::stop;
    sync_begin.arrive_and_wait();
    pool.clear();

    for (WorkerSlot& slot : slots) {
      trace_.records.insert(trace_.records.end(), slot.records.begin(), slot.records.end());
      slot.records.clear();
    }
    return finish();
  }

 private:
  struct IterationSummary {
    bool all_done = true;
    bool any_executed = false;
    bool any_held = false;
    int max_substeps = 0;
  };

  std::int64_t plan_key(std::int64_t head, int lane) const {
    return (head - range_.first) * (lanes_ + 1) + lane;
  }

  void check_address(std::int64_t addr) const {
    if (addr < 0 || addr >= tsize_) {
      fail(errc::address_out_of_range,
           "program touched address " + std::to_string(addr) + " outside table of size " +
               std::to_string(tsize_));
    }
  }

  // Stall-mode metadata: every write in the whole program, per address, in
  // program order. An address is finalized once all of its writes executed.
  void enumerate_writers() {
    writers_.assign(static_cast<std::size_t>(tsize_), {});
    writes_done_.assign(static_cast<std::size_t>(tsize_), 0);
    LanePlan plan;
    for (std::int64_t head = range_.first; head <= range_.last; ++head) {
      for (int j = 1; j <= lanes_; ++j) {
        if (!prog_.plan(head, j, plan)) continue;
        for (int s = 0; s < plan.substep_count; ++s) {
          if (plan.sub[s].write >= 0) {
            check_address(plan.sub[s].write);
            writers_[plan.sub[s].write].push_back(plan_key(head, j));
          }
        }
      }
    }
  }

  bool ready(int lane, const LanePlan& plan, std::int64_t head) const {
    std::array<std::int64_t, kMaxSubsteps> own{};
    int own_count = 0;
    for (int s = 0; s < plan.substep_count; ++s) {
      if (plan.sub[s].write >= 0) own[own_count++] = plan.sub[s].write;
    }
    for (int s = 0; s < plan.substep_count; ++s) {
      for (int r = 0; r < plan.sub[s].read_count; ++r) {
        const std::int64_t addr = plan.sub[s].reads[r];
        check_address(addr);
        bool is_own = false;
        for (int o = 0; o < own_count; ++o) is_own = is_own || own[o] == addr;
        if (is_own) continue;  // accumulator read; ordered by the writer check below
        if (writes_done_[addr] < static_cast<std::int64_t>(writers_[addr].size())) return false;
      }
    }
    for (int o = 0; o < own_count; ++o) {
      const auto& seq = writers_[own[o]];
      const auto it = std::lower_bound(seq.begin(), seq.end(), plan_key(head, lane));
      if (writes_done_[own[o]] != it - seq.begin()) return false;
    }
    return true;
  }

  IterationSummary plan_all(int lane_lo, int lane_hi) {
    IterationSummary summary;
    for (int j = lane_lo; j <= lane_hi; ++j) {
      LaneState& st = state_[j];
      if (st.done) continue;
      summary.all_done = false;
      st.active = prog_.plan(st.vhead, j, st.plan);
      if (!st.active) {
        st.executing = true;  // inactive slot: consume the iteration as a no-op
        summary.any_executed = true;
        continue;
      }
      st.executing = !opt_.stall_mode || ready(j, st.plan, st.vhead);
      if (st.executing) {
        st.scratch.fill(0);
        summary.any_executed = true;
        summary.max_substeps = std::max(summary.max_substeps, st.plan.substep_count);
      } else {
        summary.any_held = true;
      }
    }
    return summary;
  }

  void check_progress(const IterationSummary& summary) {
    if (!summary.any_executed) {
      fail(errc::stall_livelock, "no lane can make progress at iteration " +
                                     std::to_string(trace_.steps_executed) +
                                     "; the program has an unsatisfiable dependency");
    }
    if (trace_.steps_executed > range_.count() * (lanes_ + 2) + 16) {
      fail(errc::stall_livelock, "stall budget exceeded after " +
                                     std::to_string(trace_.steps_executed) + " iterations");
    }
  }

  void exec_substep(int lane, int substep, std::vector<WriteCommand>& writes,
                    std::vector<AccessRecord>& records) {
    LaneState& st = state_[lane];
    if (st.done || !st.executing || !st.active || st.plan.substep_count < substep) return;
    const SubstepAccess& sub = st.plan.sub[substep - 1];
    const std::int64_t iter_head = range_.first + trace_.steps_executed;

    std::array<std::int64_t, kMaxReadsPerSubstep> values{};
    for (int r = 0; r < sub.read_count; ++r) {
      check_address(sub.reads[r]);
      values[r] = table_.cells[sub.reads[r]];
      if (opt_.collect_trace) {
        records.push_back({iter_head, substep, lane, AccessKind::read, sub.reads[r]});
      }
    }
    const std::int64_t out =
        prog_.eval(st.vhead, lane, substep, st.plan,
                   std::span<const std::int64_t>(values.data(), sub.read_count), st.scratch);
    if (sub.write >= 0) {
      check_address(sub.write);
      writes.push_back({lane, sub.write, out});
      if (opt_.collect_trace) {
        records.push_back({iter_head, substep, lane, AccessKind::write, sub.write});
      }
    }
  }

  void apply_writes(const std::vector<WriteCommand>& writes) {
    for (const WriteCommand& w : writes) {
      table_.cells[w.address] = w.value;
      table_.filled[w.address] = 1;
      if (opt_.stall_mode) ++writes_done_[w.address];
    }
  }

  void flush_records(std::vector<AccessRecord>& records) {
    trace_.records.insert(trace_.records.end(), records.begin(), records.end());
    records.clear();
  }

  void finish_iteration(const IterationSummary& summary) {
    if (summary.any_held) {
      trace_.stall_heads.push_back(range_.first + trace_.steps_executed);
    }
    for (int j = 1; j <= lanes_; ++j) {
      LaneState& st = state_[j];
      if (st.done || !st.executing) continue;
      ++st.vhead;
      if (st.vhead > range_.last) st.done = true;
    }
    ++trace_.steps_executed;
  }

  EngineResult finish() {
    trace_.stall_iterations = trace_.steps_executed - range_.count();
    trace_.canonicalize();
    return EngineResult{std::move(table_), std::move(trace_)};
  }

  const P& prog_;
  SolutionTable table_;
  RunOptions opt_;
  HeadRange range_;
  int lanes_;
  std::int64_t tsize_;
  std::vector<LaneState> state_;  // 1-based, slot 0 unused
  PipelineTrace trace_;
  std::vector<std::vector<std::int64_t>> writers_;  // stall mode only
  std::vector<std::int64_t> writes_done_;
};

}  // namespace detail

/// Deterministic single-threaded execution of the whole program.
template <PipelineProgram P>
EngineResult run_lockstep(const P& program, SolutionTable table, RunOptions options = {}) {
  detail::Run<P> run(program, std::move(table), options);
  return run.run_serial();
}

/// Same semantics as run_lockstep with lanes partitioned over a worker pool;
/// the result table and canonical trace are bit-identical to run_lockstep's.
template <PipelineProgram P>
EngineResult run_workers(const P& program, SolutionTable table, int workers,
                         RunOptions options = {}) {
  detail::Run<P> run(program, std::move(table), options);
  return run.run_pool(workers);
}

template <PipelineProgram P>
EngineResult run_backend(const P& program, SolutionTable table, Backend backend, int workers,
                         RunOptions options = {}) {
  if (backend == Backend::lockstep) return run_lockstep(program, std::move(table), options);
  return run_workers(program, std::move(table), workers, options);
}

}  // namespace pipedp
