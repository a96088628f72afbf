#pragma once

// Small hand-checkable instances, a random instance generator and
// independent checkers used by the unit and acceptance suites.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "glnsa/instance.hpp"
#include "glnsa/random.hpp"
#include "glnsa/schedule.hpp"

namespace glnsa::support {

// J1: O11 {M1:4}, O12 {M2:1}; J2: O21 {M2:2}
inline Instance d1() {
  return Instance("D1", 2, {{{{0, 4}}, {{1, 1}}}, {{{1, 2}}}});
}

// D1 with O21 eligible on {M1:2, M2:2}.
inline Instance d1_flexible() {
  return Instance("D1-flex", 2, {{{{0, 4}}, {{1, 1}}}, {{{0, 2}, {1, 2}}}});
}

// One operation, O11 {M1:5, M2:2}.
inline Instance single_op_two_machines() {
  return Instance("single2", 2, {{{{0, 5}, {1, 2}}}});
}

inline Instance single_op(Time p) { return Instance("single", 1, {{{{0, p}}}}); }

// Random instance with 1..max_jobs jobs, 1..max_ops operations per job and
// 1..max_machines machines; each operation gets a random non-empty machine
// subset with durations in [1, max_duration].
template <typename Gen>
Instance random_instance(Gen& rng, int max_jobs, int max_ops, int max_machines, Time max_duration = 9,
                         int min_eligible = 1) {
  const int m = uniform_int(rng, std::max(1, min_eligible), max_machines);
  const int n = uniform_int(rng, 1, max_jobs);
  std::vector<std::vector<std::vector<MachineOption>>> jobs(static_cast<std::size_t>(n));
  std::vector<MachineId> machines(static_cast<std::size_t>(m));
  std::iota(machines.begin(), machines.end(), 0);
  for (auto& job : jobs) {
    job.resize(static_cast<std::size_t>(uniform_int(rng, 1, max_ops)));
    for (auto& op : job) {
      std::shuffle(machines.begin(), machines.end(), rng);
      const int k = uniform_int(rng, std::min(min_eligible, m), m);
      for (int e = 0; e < k; ++e) op.push_back({machines[static_cast<std::size_t>(e)], uniform_int<Time>(rng, 1, max_duration)});
    }
  }
  return Instance("random", m, std::move(jobs));
}

// Append-only decoding: each operation starts after its job predecessor and
// after the last operation already placed on its machine.
inline Schedule decode_semi_active(const Instance& inst, const Solution& sol) {
  Schedule out;
  const auto total = static_cast<std::size_t>(inst.operation_count());
  out.start.assign(total, 0);
  out.completion.assign(total, 0);
  out.machine = sol.ms;
  out.machine_sequence.assign(static_cast<std::size_t>(inst.machine_count()), {});
  out.machine_position.assign(total, 0);
  out.job_completion.assign(static_cast<std::size_t>(inst.job_count()), 0);
  std::vector<Time> machine_free(static_cast<std::size_t>(inst.machine_count()), 0);
  std::vector<int> step(static_cast<std::size_t>(inst.job_count()), 0);
  for (JobId j : sol.os) {
    const OpId o = inst.op_id(j, step[j]++);
    const MachineId k = sol.ms[o];
    const Time s = std::max(out.job_completion[j], machine_free[k]);
    out.start[o] = s;
    out.completion[o] = s + inst.duration(o, k);
    machine_free[k] = out.completion[o];
    out.job_completion[j] = out.completion[o];
    out.machine_position[o] = static_cast<int>(out.machine_sequence[k].size());
    out.machine_sequence[k].push_back(o);
    out.makespan = std::max(out.makespan, out.completion[o]);
  }
  return out;
}

// Empty when every Schedule invariant holds for `sol`; otherwise a
// description of the first violation. Checks are pairwise brute force.
inline std::string check_schedule(const Instance& inst, const Solution& sol, const Schedule& s) {
  std::ostringstream err;
  const int total = inst.operation_count();
  Time makespan = 0;
  for (OpId o = 0; o < total; ++o) {
    if (s.machine[o] != sol.ms[o]) return "machine differs from MS";
    if (s.start[o] < 0) return "negative start";
    if (s.completion[o] != s.start[o] + inst.duration(o, sol.ms[o])) {
      err << "completion != start + p for op " << o;
      return err.str();
    }
    if (inst.has_job_predecessor(o) && s.start[o] < s.completion[o - 1]) {
      err << "job precedence violated at op " << o;
      return err.str();
    }
    makespan = std::max(makespan, s.completion[o]);
  }
  for (OpId a = 0; a < total; ++a)
    for (OpId b = a + 1; b < total; ++b)
      if (s.machine[a] == s.machine[b] && s.start[a] < s.completion[b] && s.start[b] < s.completion[a]) {
        err << "ops " << a << " and " << b << " overlap on machine " << s.machine[a];
        return err.str();
      }
  if (makespan != s.makespan) return "makespan is not the maximum completion";
  for (JobId j = 0; j < inst.job_count(); ++j)
    if (s.job_completion[j] != s.completion[inst.op_id(j, inst.ops_in_job(j) - 1)])
      return "job completion is not the completion of the last operation";
  std::size_t listed = 0;
  for (MachineId k = 0; k < inst.machine_count(); ++k) {
    const auto& seq = s.machine_sequence[k];
    listed += seq.size();
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (s.machine[seq[i]] != k) return "machine sequence lists a foreign op";
      if (s.machine_position[seq[i]] != static_cast<int>(i)) return "machine position mismatch";
      if (i > 0 && s.start[seq[i - 1]] >= s.start[seq[i]]) return "machine sequence not in start order";
    }
  }
  if (listed != static_cast<std::size_t>(total)) return "machine sequences do not cover every op once";
  return {};
}

// Empty when no operation could start strictly earlier on its machine, given
// its job predecessor's completion and the final placement of the others.
inline std::string check_active(const Instance& inst, const Schedule& s) {
  for (OpId o = 0; o < inst.operation_count(); ++o) {
    const Time p = s.completion[o] - s.start[o];
    const Time ready = inst.has_job_predecessor(o) ? s.completion[o - 1] : 0;
    std::vector<Time> candidates{ready};
    for (OpId other : s.machine_sequence[s.machine[o]])
      if (other != o && s.completion[other] >= ready) candidates.push_back(s.completion[other]);
    for (Time t : candidates) {
      if (t >= s.start[o]) continue;
      bool fits = true;
      for (OpId other : s.machine_sequence[s.machine[o]])
        if (other != o && t < s.completion[other] && s.start[other] < t + p) fits = false;
      if (fits) return "op " + std::to_string(o) + " could start at " + std::to_string(t);
    }
  }
  return {};
}

// Empty when `path` satisfies the CriticalPath invariants for `s`.
inline std::string check_critical_path(const Instance& inst, const Schedule& s, const CriticalPath& path) {
  if (path.ops.empty()) return "empty path";
  if (s.start[path.ops.front()] != 0) return "path does not start at time 0";
  if (s.completion[path.ops.back()] != s.makespan) return "path does not end at the makespan";
  for (std::size_t i = 1; i < path.ops.size(); ++i) {
    const OpId a = path.ops[i - 1], b = path.ops[i];
    if (s.completion[a] != s.start[b]) return "slack between consecutive path ops";
    const bool job_link = inst.has_job_predecessor(b) && a == b - 1;
    const bool machine_link = s.machine_predecessor(b) == a;
    if (!job_link && !machine_link) return "consecutive path ops are not linked";
  }
  return {};
}

}  // namespace glnsa::support
