#pragma once

// Two-string solution encoding (OS: operation sequence as a permutation with
// repetitions of job ids, MS: machine per operation in job-major order), the
// active gap-filling decoder, and critical path extraction.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "glnsa/instance.hpp"
#include "glnsa/random.hpp"

namespace glnsa {

struct Solution {
  std::vector<JobId> os;
  std::vector<MachineId> ms;

  friend bool operator==(const Solution&, const Solution&) = default;
};

struct Schedule {
  std::vector<Time> start;
  std::vector<Time> completion;
  std::vector<MachineId> machine;
  std::vector<std::vector<OpId>> machine_sequence;  // per machine, by start time
  std::vector<int> machine_position;                // index of op in its machine's sequence
  std::vector<Time> job_completion;
  Time makespan = 0;

  // Operation immediately before `op` on its machine, or -1.
  OpId machine_predecessor(OpId op) const {
    const int pos = machine_position[op];
    return pos > 0 ? machine_sequence[machine[op]][pos - 1] : -1;
  }
  OpId machine_successor(OpId op) const {
    const auto& seq = machine_sequence[machine[op]];
    const auto pos = static_cast<std::size_t>(machine_position[op]) + 1;
    return pos < seq.size() ? seq[pos] : -1;
  }
};

struct CriticalPath {
  std::vector<OpId> ops;  // forward order, first starts at 0, last ends at makespan
  int length() const { return static_cast<int>(ops.size()); }
};

struct GanttRow {
  MachineId machine = 0;
  OpId op = 0;
  Time start = 0;
  Time completion = 0;

  friend bool operator==(const GanttRow&, const GanttRow&) = default;
};

// Empty string when `sol` is a valid encoding for `inst`, else the first
// violation found.
inline std::string validate(const Instance& inst, const Solution& sol) {
  const auto total = static_cast<std::size_t>(inst.operation_count());
  if (sol.os.size() != total) return "OS length differs from operation count";
  if (sol.ms.size() != total) return "MS length differs from operation count";
  std::vector<int> seen(static_cast<std::size_t>(inst.job_count()), 0);
  for (JobId j : sol.os) {
    if (j < 0 || j >= inst.job_count()) return "OS contains unknown job " + std::to_string(j + 1);
    ++seen[j];
  }
  for (JobId j = 0; j < inst.job_count(); ++j)
    if (seen[j] != inst.ops_in_job(j))
      return "job " + std::to_string(j + 1) + " appears " + std::to_string(seen[j]) + " times in OS";
  for (OpId o = 0; o < inst.operation_count(); ++o)
    if (!inst.eligible(o, sol.ms[o]))
      return "operation " + std::to_string(o) + " assigned to ineligible machine";
  return {};
}

template <typename Gen>
Solution random_solution(const Instance& inst, Gen& rng) {
  Solution sol;
  sol.os.reserve(static_cast<std::size_t>(inst.operation_count()));
  for (JobId j = 0; j < inst.job_count(); ++j) sol.os.insert(sol.os.end(), inst.ops_in_job(j), j);
  std::shuffle(sol.os.begin(), sol.os.end(), rng);

  sol.ms.assign(static_cast<std::size_t>(inst.operation_count()), 0);
  std::vector<int> step(static_cast<std::size_t>(inst.job_count()), 0);
  for (JobId j : sol.os) {
    const OpId o = inst.op_id(j, step[j]++);
    const auto& opts = inst.options(o);
    sol.ms[o] = opts[uniform_int<std::size_t>(rng, 0, opts.size() - 1)].machine;
  }
  return sol;
}

// Operation id of each OS position (the k-th occurrence of job j is O_{j,k}).
inline std::vector<OpId> os_operations(const Instance& inst, const std::vector<JobId>& os) {
  std::vector<OpId> ops(os.size());
  std::vector<int> step(static_cast<std::size_t>(inst.job_count()), 0);
  for (std::size_t k = 0; k < os.size(); ++k) ops[k] = inst.op_id(os[k], step[os[k]]++);
  return ops;
}

// Active decoding into `out`, reusing its buffers. Each operation, in OS
// order, starts at the earliest time not before its job predecessor's
// completion at which its assigned machine has an idle interval long enough
// to hold it; idle intervals before already placed operations qualify.
inline void decode_active_into(const Instance& inst, const Solution& sol, Schedule& out) {
  const auto total = static_cast<std::size_t>(inst.operation_count());
  const auto machines = static_cast<std::size_t>(inst.machine_count());
  out.start.assign(total, 0);
  out.completion.assign(total, 0);
  out.machine.assign(sol.ms.begin(), sol.ms.end());
  out.machine_sequence.resize(machines);
  for (auto& seq : out.machine_sequence) seq.clear();
  out.machine_position.assign(total, 0);
  out.job_completion.assign(static_cast<std::size_t>(inst.job_count()), 0);
  out.makespan = 0;

  // job_completion holds each job's latest completion while decoding.
  std::vector<int> step(static_cast<std::size_t>(inst.job_count()), 0);
  for (JobId j : sol.os) {
    const OpId o = inst.op_id(j, step[j]++);
    const MachineId k = sol.ms[o];
    const Time p = inst.duration(o, k);
    const Time ready = out.job_completion[j];

    auto& seq = out.machine_sequence[k];
    Time prev_end = 0;
    std::size_t slot = seq.size();
    for (std::size_t idx = 0; idx < seq.size(); ++idx) {
      const Time gap_end = out.start[seq[idx]];
      if (std::max(prev_end, ready) + p <= gap_end) {
        slot = idx;
        break;
      }
      prev_end = out.completion[seq[idx]];
    }
    const Time s = std::max(prev_end, ready);
    out.start[o] = s;
    out.completion[o] = s + p;
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(slot), o);
    out.job_completion[j] = s + p;
    out.makespan = std::max(out.makespan, s + p);
  }
  for (auto& seq : out.machine_sequence)
    for (std::size_t idx = 0; idx < seq.size(); ++idx) out.machine_position[seq[idx]] = static_cast<int>(idx);
}

inline Schedule decode_active(const Instance& inst, const Solution& sol) {
  Schedule out;
  decode_active_into(inst, sol, out);
  return out;
}

inline Time makespan(const Instance& inst, const Solution& sol) { return decode_active(inst, sol).makespan; }

// Random critical path: starts from a uniformly chosen operation finishing at
// the makespan and walks back through zero-slack job or machine predecessors
// (chosen at random when both qualify) until an operation starting at 0.
template <typename Gen>
CriticalPath critical_path(const Instance& inst, const Schedule& sched, Gen& rng) {
  std::vector<OpId> ends;
  for (OpId o = 0; o < static_cast<OpId>(sched.completion.size()); ++o)
    if (sched.completion[o] == sched.makespan) ends.push_back(o);
  if (ends.empty()) return {};

  CriticalPath path;
  OpId cur = ends[uniform_int<std::size_t>(rng, 0, ends.size() - 1)];
  path.ops.push_back(cur);
  while (sched.start[cur] > 0) {
    const Time s = sched.start[cur];
    OpId by_job = -1;
    if (inst.has_job_predecessor(cur) && sched.completion[cur - 1] == s) by_job = cur - 1;
    OpId by_machine = sched.machine_predecessor(cur);
    if (by_machine >= 0 && sched.completion[by_machine] != s) by_machine = -1;

    if (by_job >= 0 && by_machine >= 0 && by_job != by_machine)
      cur = uniform_int(rng, 0, 1) == 0 ? by_job : by_machine;
    else if (by_job >= 0)
      cur = by_job;
    else if (by_machine >= 0)
      cur = by_machine;
    else
      throw std::logic_error("schedule is not left-justified: operation has positive slack to all predecessors");
    path.ops.push_back(cur);
  }
  std::reverse(path.ops.begin(), path.ops.end());
  return path;
}

inline std::vector<GanttRow> gantt_rows(const Schedule& sched) {
  std::vector<GanttRow> rows;
  rows.reserve(sched.start.size());
  for (MachineId k = 0; k < static_cast<MachineId>(sched.machine_sequence.size()); ++k)
    for (OpId o : sched.machine_sequence[k]) rows.push_back({k, o, sched.start[o], sched.completion[o]});
  return rows;
}

}  // namespace glnsa
