#pragma once

// Main optimization loop: a population of smart cells refined each iteration
// by elitism + tournament selection, the exploration neighborhood, and a tabu
// search whose budget grows with the iteration number.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <span>
#include <thread>
#include <vector>

#include "glnsa/config.hpp"
#include "glnsa/instance.hpp"
#include "glnsa/operators.hpp"
#include "glnsa/random.hpp"
#include "glnsa/schedule.hpp"
#include "glnsa/tabu.hpp"

namespace glnsa {

enum class StopReason { Iterations, Stagnation, TimeLimit };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Iterations: return "iterations";
    case StopReason::Stagnation: return "stagnation";
    case StopReason::TimeLimit: return "time_limit";
  }
  return "?";
}

struct RunReport {
  Solution best_solution;
  Time best_makespan = 0;
  std::vector<Time> curve;  // curve[0]: initial population, curve[i]: after iteration i
  int iterations_run = 0;
  int stagnation_final = 0;
  StopReason stop_reason = StopReason::Iterations;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
};

struct Selection {
  std::vector<std::size_t> elites;      // indices into the population, best first
  std::vector<std::size_t> contenders;  // tournament winners, one per remaining slot
};

// Elites are the elite_count() lowest-makespan cells (ties by index). Each
// other slot is filled by the winner of a tournament among `b` distinct,
// uniformly drawn cells; ties in a tournament are broken at random.
template <typename Gen>
Selection select_population(std::span<const Time> makespans, const GlnsaConfig& cfg, Gen& rng) {
  const std::size_t size = makespans.size();
  const auto elite = std::min<std::size_t>(static_cast<std::size_t>(cfg.elite_count()), size);
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return makespans[a] < makespans[b]; });

  Selection sel;
  sel.elites.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(elite));
  const auto b = std::min<std::size_t>(static_cast<std::size_t>(cfg.tournament_size), size);
  std::vector<std::size_t> pool(size);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t slot = elite; slot < size; ++slot) {
    std::size_t winner = 0;
    std::size_t ties = 0;
    for (std::size_t t = 0; t < b; ++t) {
      std::swap(pool[t], pool[uniform_int<std::size_t>(rng, t, size - 1)]);
      const std::size_t c = pool[t];
      if (t == 0 || makespans[c] < makespans[winner]) {
        winner = c;
        ties = 1;
      } else if (makespans[c] == makespans[winner] && uniform_int<std::size_t>(rng, 0, ties++) == 0) {
        winner = c;
      }
    }
    sel.contenders.push_back(winner);
  }
  return sel;
}

// Tabu iterations granted to each cell at (1-based) iteration i.
inline long tabu_budget(const GlnsaConfig& cfg, int iteration) {
  return static_cast<long>(cfg.tabu_multiplier) * iteration;
}

namespace detail {

enum StreamTag : std::uint64_t { kInit = 1, kSelect = 2, kExplore = 3, kTabu = 4 };

// Runs body(i) for i in [0, count) on up to `workers` threads.
template <typename Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  for (std::size_t t = 1; t < n; ++t) threads.emplace_back(run);
  run();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

using ProgressCallback = std::function<void(int iteration, Time best)>;

inline RunReport glnsa_run(const Instance& inst, const GlnsaConfig& cfg, const ProgressCallback& progress = {}) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - started).count(); };

  const auto size = static_cast<std::size_t>(cfg.population);
  std::vector<Solution> population(size);
  std::vector<Time> makespans(size);
  detail::parallel_for(size, cfg.workers, [&](std::size_t c) {
    auto rng = make_stream(cfg.seed, {detail::kInit, c});
    population[c] = random_solution(inst, rng);
    makespans[c] = makespan(inst, population[c]);
  });

  RunReport report;
  report.seed = cfg.seed;
  auto best_it = std::min_element(makespans.begin(), makespans.end());
  report.best_solution = population[static_cast<std::size_t>(best_it - makespans.begin())];
  report.best_makespan = *best_it;
  report.curve.push_back(report.best_makespan);

  int stagnation = 0;
  int iteration = 0;
  StopReason stop = StopReason::Iterations;
  while (true) {
    if (iteration >= cfg.iterations) {
      stop = StopReason::Iterations;
      break;
    }
    if (stagnation >= cfg.stagnation_limit) {
      stop = StopReason::Stagnation;
      break;
    }
    if (cfg.time_limit && elapsed() >= *cfg.time_limit) {
      stop = StopReason::TimeLimit;
      break;
    }
    ++iteration;
    const auto it = static_cast<std::uint64_t>(iteration);

    auto sel_rng = make_stream(cfg.seed, {detail::kSelect, it});
    const Selection sel = select_population(std::span<const Time>(makespans), cfg, sel_rng);
    std::vector<Solution> refined;
    std::vector<Time> refined_ms;
    refined.reserve(size);
    for (auto idx : sel.elites) refined.push_back(population[idx]), refined_ms.push_back(makespans[idx]);
    for (auto idx : sel.contenders) refined.push_back(population[idx]), refined_ms.push_back(makespans[idx]);

    const std::size_t elites = sel.elites.size();
    const long budget = tabu_budget(cfg, iteration);
    std::vector<Solution> next(size);
    std::vector<Time> next_ms(size);
    detail::parallel_for(size, cfg.workers, [&](std::size_t c) {
      Solution cell;
      if (c < elites) {
        cell = refined[c];
      } else {
        auto rng = make_stream(cfg.seed, {detail::kExplore, it, c});
        cell = explore_neighborhood(inst, std::span<const Solution>(refined), c, cfg, rng).solution;
      }
      auto rng = make_stream(cfg.seed, {detail::kTabu, it, c});
      auto improved = tabu_search(inst, cell, budget, rng, cfg.eval_mode);
      next[c] = std::move(improved.solution);
      next_ms[c] = improved.makespan;
    });
    population = std::move(next);
    makespans = std::move(next_ms);

    best_it = std::min_element(makespans.begin(), makespans.end());
    if (*best_it < report.best_makespan) {
      report.best_makespan = *best_it;
      report.best_solution = population[static_cast<std::size_t>(best_it - makespans.begin())];
      stagnation = 0;
    } else {
      ++stagnation;
    }
    report.curve.push_back(report.best_makespan);
    if (progress) progress(iteration, report.best_makespan);
  }

  report.iterations_run = iteration;
  report.stagnation_final = stagnation;
  report.stop_reason = stop;
  report.wall_time = elapsed();
  return report;
}

}  // namespace glnsa
