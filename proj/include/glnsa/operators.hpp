#pragma once

// Exploration neighborhood: OS operators (insertion, swapping, path
// relinking), MS mutation, and best-of-l neighbor selection for one cell.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "glnsa/config.hpp"
#include "glnsa/instance.hpp"
#include "glnsa/random.hpp"
#include "glnsa/schedule.hpp"

namespace glnsa {

enum class SequenceOperator { Insertion, Swapping, PathRelinking };

namespace detail {
inline void check_positions(std::size_t size, std::size_t k1, std::size_t k2) {
  if (k1 >= size || k2 >= size) throw std::invalid_argument("operator position out of range");
  if (k1 == k2) throw std::invalid_argument("operator positions must differ");
}
}  // namespace detail

// Moves the element at position k1 to position k2 (0-based); the elements in
// between shift by one toward k1's old slot.
template <typename T>
std::vector<T> insertion(std::vector<T> seq, std::size_t k1, std::size_t k2) {
  detail::check_positions(seq.size(), k1, k2);
  auto first = seq.begin();
  if (k1 > k2)
    std::rotate(first + k2, first + k1, first + k1 + 1);
  else
    std::rotate(first + k1, first + k1 + 1, first + k2 + 1);
  return seq;
}

template <typename T>
std::vector<T> swapping(std::vector<T> seq, std::size_t k1, std::size_t k2) {
  detail::check_positions(seq.size(), k1, k2);
  std::swap(seq[k1], seq[k2]);
  return seq;
}

// Intermediate strings visited while transforming `from` into `guide`,
// excluding both endpoints. Each step takes the first mismatched position k
// and swaps into it the first later occurrence of guide[k] that is itself
// out of place, so every step fixes at least one position.
template <typename T>
std::vector<std::vector<T>> relinking_route(const std::vector<T>& from, const std::vector<T>& guide) {
  if (from.size() != guide.size() || !std::is_permutation(from.begin(), from.end(), guide.begin()))
    throw std::invalid_argument("path relinking requires permutations of the same multiset");
  std::vector<std::vector<T>> route;
  std::vector<T> cur = from;
  std::size_t k = 0;
  while (true) {
    while (k < cur.size() && cur[k] == guide[k]) ++k;
    if (k == cur.size()) break;
    std::size_t p = k + 1;
    while (!(cur[p] == guide[k] && cur[p] != guide[p])) ++p;
    std::swap(cur[k], cur[p]);
    if (cur != guide) route.push_back(cur);
  }
  return route;
}

template <typename T, typename Gen>
std::vector<T> path_relinking(const std::vector<T>& from, const std::vector<T>& guide, Gen& rng) {
  auto route = relinking_route(from, guide);
  if (route.empty()) return from;
  return std::move(route[uniform_int<std::size_t>(rng, 0, route.size() - 1)]);
}

// Reassigns floor(T/2) distinct, uniformly chosen positions of MS to a
// different eligible machine; single-machine operations stay put.
template <typename Gen>
std::vector<MachineId> mutate_machines(const Instance& inst, std::vector<MachineId> ms, Gen& rng) {
  const std::size_t total = ms.size();
  std::vector<OpId> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t picks = total / 2;
  for (std::size_t i = 0; i < picks; ++i) {
    std::swap(idx[i], idx[uniform_int<std::size_t>(rng, i, total - 1)]);
    const OpId o = idx[i];
    const auto& opts = inst.options(o);
    if (opts.size() < 2) continue;
    auto r = uniform_int<std::size_t>(rng, 0, opts.size() - 2);
    if (opts[r].machine == ms[o]) r = opts.size() - 1;
    ms[o] = opts[r].machine;
  }
  return ms;
}

struct NeighborTag {
  SequenceOperator op = SequenceOperator::Insertion;
  bool mutated = false;
};

struct NeighborhoodSample {
  std::vector<Solution> neighbors;
  std::vector<NeighborTag> tags;
  std::vector<Time> makespans;
  std::size_t best = 0;  // first neighbor with minimal makespan
};

// Generates cfg.neighbors variants of population[cell]. The OS operator is
// drawn per neighbor with probabilities (alpha_I, alpha_S, alpha_P); path
// relinking is guided by a uniformly chosen other member of the population.
// MS is mutated with probability alpha_M.
template <typename Gen>
NeighborhoodSample sample_neighborhood(const Instance& inst, std::span<const Solution> population,
                                       std::size_t cell, const GlnsaConfig& cfg, Gen& rng) {
  const Solution& base = population[cell];
  const std::size_t len = base.os.size();
  NeighborhoodSample sample;
  sample.neighbors.reserve(static_cast<std::size_t>(cfg.neighbors));
  Schedule scratch;
  for (int n = 0; n < cfg.neighbors; ++n) {
    NeighborTag tag;
    const double u = uniform_real(rng);
    if (u < cfg.alpha_insertion)
      tag.op = SequenceOperator::Insertion;
    else if (u < cfg.alpha_insertion + cfg.alpha_swapping)
      tag.op = SequenceOperator::Swapping;
    else
      tag.op = SequenceOperator::PathRelinking;

    Solution next;
    switch (tag.op) {
      case SequenceOperator::Insertion:
      case SequenceOperator::Swapping:
        if (len < 2) {
          next.os = base.os;
        } else {
          auto [k1, k2] = distinct_pair(rng, len);
          next.os = tag.op == SequenceOperator::Insertion ? insertion(base.os, k1, k2) : swapping(base.os, k1, k2);
        }
        break;
      case SequenceOperator::PathRelinking:
        if (population.size() < 2) {
          next.os = base.os;
        } else {
          auto g = uniform_int<std::size_t>(rng, 0, population.size() - 2);
          if (g >= cell) ++g;
          next.os = path_relinking(base.os, population[g].os, rng);
        }
        break;
    }
    tag.mutated = uniform_real(rng) < cfg.alpha_mutation;
    next.ms = tag.mutated ? mutate_machines(inst, base.ms, rng) : base.ms;

    decode_active_into(inst, next, scratch);
    sample.makespans.push_back(scratch.makespan);
    sample.tags.push_back(tag);
    sample.neighbors.push_back(std::move(next));
    if (scratch.makespan < sample.makespans[sample.best]) sample.best = sample.neighbors.size() - 1;
  }
  return sample;
}

struct Evaluated {
  Solution solution;
  Time makespan = 0;
};

// Best of the sampled neighbors; it replaces the cell even when worse.
template <typename Gen>
Evaluated explore_neighborhood(const Instance& inst, std::span<const Solution> population, std::size_t cell,
                               const GlnsaConfig& cfg, Gen& rng) {
  auto sample = sample_neighborhood(inst, population, cell, cfg, rng);
  return {std::move(sample.neighbors[sample.best]), sample.makespans[sample.best]};
}

}  // namespace glnsa
