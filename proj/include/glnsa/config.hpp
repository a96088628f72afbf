#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace glnsa {

enum class EvalMode { Exact, Estimate };

inline const char* to_string(EvalMode mode) { return mode == EvalMode::Exact ? "exact" : "estimate"; }

inline EvalMode parse_eval_mode(const std::string& text) {
  if (text == "exact") return EvalMode::Exact;
  if (text == "estimate") return EvalMode::Estimate;
  throw std::invalid_argument("unknown evaluation mode '" + text + "' (expected exact or estimate)");
}

// Tunable parameters; defaults are the tuned values for high-flexibility
// instances.
struct GlnsaConfig {
  int iterations = 250;         // G_n
  int population = 40;          // S_n, number of smart cells
  int neighbors = 2;            // l, neighbors generated per cell
  double alpha_insertion = 0.5;   // alpha_I
  double alpha_swapping = 0.25;   // alpha_S
  double alpha_relinking = 0.25;  // alpha_P
  double alpha_mutation = 0.1;    // alpha_M
  int stagnation_limit = 40;    // S_b
  double elite_proportion = 0.025;  // E_p
  int tabu_multiplier = 1;      // T_n; a cell gets T_n * i tabu iterations at iteration i
  int tournament_size = 2;      // b
  std::uint64_t seed = 1;
  EvalMode eval_mode = EvalMode::Estimate;
  std::optional<double> time_limit;  // seconds
  int workers = 1;

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("invalid config: " + what); };
    auto prob = [&](double p, const char* name) {
      if (!(p >= 0.0 && p <= 1.0)) fail(std::string(name) + " must lie in [0,1]");
    };
    prob(alpha_insertion, "alpha_I");
    prob(alpha_swapping, "alpha_S");
    prob(alpha_relinking, "alpha_P");
    prob(alpha_mutation, "alpha_M");
    if (std::abs(alpha_insertion + alpha_swapping + alpha_relinking - 1.0) > 1e-9)
      fail("alpha_I + alpha_S + alpha_P must equal 1");
    if (iterations < 0) fail("G_n must be >= 0");
    if (population < 2) fail("S_n must be >= 2");
    if (neighbors < 1) fail("l must be >= 1");
    if (tournament_size < 2) fail("b must be >= 2");
    if (tournament_size > population) fail("b must not exceed S_n");
    if (!(elite_proportion >= 0.0 && elite_proportion < 1.0)) fail("E_p must lie in [0,1)");
    if (stagnation_limit < 1) fail("S_b must be >= 1");
    if (tabu_multiplier < 0) fail("T_n must be >= 0");
    if (time_limit && !(*time_limit > 0.0)) fail("time limit must be positive");
    if (workers < 1) fail("workers must be >= 1");
  }

  int elite_count() const {
    const auto n = static_cast<int>(std::lround(elite_proportion * population));
    return n < 1 ? 1 : (n >= population ? population - 1 : n);
  }
};

}  // namespace glnsa
