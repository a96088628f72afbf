#pragma once

// Tabu search over machine reassignments of critical operations. A move
// changes only the MS entry of one operation on a critical path; its OS
// position is preserved.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "glnsa/config.hpp"
#include "glnsa/instance.hpp"
#include "glnsa/random.hpp"
#include "glnsa/schedule.hpp"

namespace glnsa {

// Expiry iteration per (operation, machine). An entry is tabu while the
// current iteration is below its expiry; unset entries are 0 and never tabu.
class TabuList {
 public:
  TabuList(int operations, int machines)
      : machines_(machines), expiry_(static_cast<std::size_t>(operations) * machines, 0) {}

  bool is_tabu(OpId op, MachineId machine) const { return current_ < expiry(op, machine); }
  long expiry(OpId op, MachineId machine) const { return expiry_[index(op, machine)]; }
  void set(OpId op, MachineId machine, long tenure) { expiry_[index(op, machine)] = current_ + tenure; }
  long current_iteration() const { return current_; }
  void advance() { ++current_; }

 private:
  std::size_t index(OpId op, MachineId machine) const {
    return static_cast<std::size_t>(op) * machines_ + machine;
  }
  int machines_;
  long current_ = 0;
  std::vector<long> expiry_;
};

// Tabu tenure for a move on `op`: critical path length plus the number of
// machines able to process the operation.
inline int tabu_threshold(int path_length, OpId op, const Instance& inst) {
  return path_length + static_cast<int>(inst.eligible_count(op));
}

struct HeadsTails {
  std::vector<Time> head;  // start time in the schedule
  std::vector<Time> tail;  // own duration plus the longest tail among job and machine successors
};

inline HeadsTails heads_and_tails(const Instance& inst, const Schedule& sched) {
  const auto total = sched.start.size();
  HeadsTails ht{sched.start, std::vector<Time>(total, 0)};
  std::vector<OpId> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](OpId a, OpId b) { return sched.start[a] > sched.start[b]; });
  for (OpId o : order) {
    Time next = 0;
    if (inst.has_job_successor(o)) next = ht.tail[o + 1];
    if (OpId ms = sched.machine_successor(o); ms >= 0) next = std::max(next, ht.tail[ms]);
    ht.tail[o] = sched.completion[o] - sched.start[o] + next;
  }
  return ht;
}

// Per-solution data needed to estimate reassignment moves: the OS position of
// every operation and, per machine, its operations in OS order.
struct ReassignmentContext {
  std::vector<int> os_position;
  std::vector<std::vector<OpId>> by_os_order;

  ReassignmentContext(const Instance& inst, const Solution& sol) { rebuild(inst, sol); }

  void rebuild(const Instance& inst, const Solution& sol) {
    const auto ops = os_operations(inst, sol.os);
    os_position.assign(ops.size(), 0);
    for (std::size_t k = 0; k < ops.size(); ++k) os_position[ops[k]] = static_cast<int>(k);
    refresh_machines(inst, sol, ops);
  }

  // OS positions are unchanged by reassignment moves; only the machine lists
  // need refreshing.
  void refresh_machines(const Instance& inst, const Solution& sol, const std::vector<OpId>& ops_in_os_order) {
    by_os_order.resize(static_cast<std::size_t>(inst.machine_count()));
    for (auto& list : by_os_order) list.clear();
    for (OpId o : ops_in_os_order) by_os_order[sol.ms[o]].push_back(o);
  }

  // OS-order neighbors of `op` among the operations currently on `machine`.
  std::pair<OpId, OpId> neighbors_on(MachineId machine, OpId op) const {
    const auto& list = by_os_order[machine];
    auto it = std::lower_bound(list.begin(), list.end(), os_position[op],
                               [&](OpId a, int pos) { return os_position[a] < pos; });
    const OpId pred = it == list.begin() ? -1 : *(it - 1);
    if (it != list.end() && *it == op) ++it;
    const OpId succ = it == list.end() ? -1 : *it;
    return {pred, succ};
  }
};

// Makespan after moving `op` to `machine`. Exact mode re-decodes; estimate
// mode combines the completion of its job and OS-order machine predecessors,
// the new duration, and the tails of its job and OS-order machine successors.
inline Time evaluate_reassignment(const Instance& inst, const Solution& sol, const Schedule& sched,
                                  const HeadsTails& ht, const ReassignmentContext& ctx, OpId op,
                                  MachineId machine, EvalMode mode) {
  if (!inst.eligible(op, machine)) throw std::invalid_argument("reassignment to ineligible machine");
  if (sol.ms[op] == machine) throw std::invalid_argument("reassignment must change the machine");
  if (mode == EvalMode::Exact) {
    Solution moved = sol;
    moved.ms[op] = machine;
    return decode_active(inst, moved).makespan;
  }
  const auto [mpred, msucc] = ctx.neighbors_on(machine, op);
  Time before = 0;
  if (inst.has_job_predecessor(op)) before = sched.completion[op - 1];
  if (mpred >= 0) before = std::max(before, sched.completion[mpred]);
  Time after = 0;
  if (inst.has_job_successor(op)) after = ht.tail[op + 1];
  if (msucc >= 0) after = std::max(after, ht.tail[msucc]);
  return before + inst.duration(op, machine) + after;
}

inline Time evaluate_reassignment(const Instance& inst, const Solution& sol, const Schedule& sched,
                                  const HeadsTails& ht, OpId op, MachineId machine, EvalMode mode) {
  return evaluate_reassignment(inst, sol, sched, ht, ReassignmentContext(inst, sol), op, machine, mode);
}

enum class MoveReason { NotTabu, Aspiration, OldestTabu };

struct TabuMove {
  long iteration = 0;
  OpId op = 0;
  MachineId machine = 0;
  MoveReason reason = MoveReason::NotTabu;
  long expiry = 0;
  Time makespan = 0;  // exact makespan after the move
  Time best_before = 0;
};

struct TabuResult {
  Solution solution;
  Time makespan = 0;
  long iterations = 0;
};

// Runs up to `budget` iterations from `cell` and returns the best solution
// seen, which is never worse than `cell`. Moves are screened with `mode`;
// the selected move is always re-decoded exactly. When `log` is non-null
// every applied move is appended to it.
template <typename Gen>
TabuResult tabu_search(const Instance& inst, const Solution& cell, long budget, Gen& rng, EvalMode mode,
                       std::vector<TabuMove>* log = nullptr) {
  Solution cur = cell;
  Schedule sched = decode_active(inst, cur);
  TabuResult result{cell, sched.makespan, 0};
  TabuList tabu(inst.operation_count(), inst.machine_count());

  const auto ops_in_os = os_operations(inst, cur.os);
  ReassignmentContext ctx(inst, cur);

  struct Candidate {
    OpId op;
    MachineId machine;
    Time score;
  };
  std::vector<Candidate> moves;
  Schedule scratch;
  auto exact_if_moved = [&](OpId op, MachineId machine) {
    const MachineId old = cur.ms[op];
    cur.ms[op] = machine;
    decode_active_into(inst, cur, scratch);
    cur.ms[op] = old;
    return scratch.makespan;
  };

  for (long it = 0; it < budget; ++it) {
    const CriticalPath path = critical_path(inst, sched, rng);
    moves.clear();
    for (OpId o : path.ops)
      for (const auto& opt : inst.options(o))
        if (opt.machine != cur.ms[o]) moves.push_back({o, opt.machine, 0});
    if (moves.empty()) break;

    HeadsTails ht;
    if (mode == EvalMode::Estimate) {
      ht = heads_and_tails(inst, sched);
      ctx.refresh_machines(inst, cur, ops_in_os);
    }
    for (auto& mv : moves) {
      if (mode == EvalMode::Exact) {
        mv.score = exact_if_moved(mv.op, mv.machine);
      } else {
        mv.score = evaluate_reassignment(inst, cur, sched, ht, ctx, mv.op, mv.machine, mode);
      }
    }
    // Random order among equal scores.
    std::shuffle(moves.begin(), moves.end(), rng);
    std::stable_sort(moves.begin(), moves.end(), [](const Candidate& a, const Candidate& b) { return a.score < b.score; });

    const Candidate* chosen = nullptr;
    MoveReason reason = MoveReason::NotTabu;
    for (const auto& mv : moves) {
      if (!tabu.is_tabu(mv.op, mv.machine)) {
        chosen = &mv;
        break;
      }
      const Time exact = mode == EvalMode::Exact ? mv.score : exact_if_moved(mv.op, mv.machine);
      if (exact < result.makespan) {
        chosen = &mv;
        reason = MoveReason::Aspiration;
        break;
      }
    }
    if (!chosen) {
      reason = MoveReason::OldestTabu;
      long oldest = std::numeric_limits<long>::max();
      std::size_t ties = 0;
      for (const auto& mv : moves) {
        const long e = tabu.expiry(mv.op, mv.machine);
        if (e < oldest) {
          oldest = e;
          chosen = &mv;
          ties = 1;
        } else if (e == oldest && uniform_int<std::size_t>(rng, 0, ties++) == 0) {
          chosen = &mv;
        }
      }
    }

    const Candidate mv = *chosen;
    const Time best_before = result.makespan;
    cur.ms[mv.op] = mv.machine;
    decode_active_into(inst, cur, sched);
    if (sched.makespan < result.makespan) {
      result.solution = cur;
      result.makespan = sched.makespan;
    }
    tabu.set(mv.op, mv.machine, tabu_threshold(path.length(), mv.op, inst));
    if (log)
      log->push_back({tabu.current_iteration(), mv.op, mv.machine, reason, tabu.expiry(mv.op, mv.machine),
                      sched.makespan, best_before});
    tabu.advance();
    ++result.iterations;
  }
  return result;
}

}  // namespace glnsa
