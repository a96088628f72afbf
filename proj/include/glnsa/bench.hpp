#pragma once

// Benchmark harness: exhaustive oracle for tiny instances, best-known
// tables, per-run report rows and their CSV/JSON serialization.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "glnsa/config.hpp"
#include "glnsa/engine.hpp"
#include "glnsa/instance.hpp"
#include "glnsa/schedule.hpp"

namespace glnsa {

// ---------------------------------------------------------------------------
// Exhaustive oracle

class EnumerationTooLarge : public std::runtime_error {
 public:
  EnumerationTooLarge(long double size, std::uint64_t cap)
      : std::runtime_error(message(size, cap)), size_(size) {}
  long double size() const { return size_; }

 private:
  static std::string message(long double size, std::uint64_t cap) {
    std::ostringstream out;
    out << "enumeration of " << size << " (sequence, assignment) pairs exceeds cap " << cap;
    return out.str();
  }
  long double size_;
};

// Number of distinct OS strings times number of MS strings.
inline long double enumeration_size(const Instance& inst) {
  long double count = 1;
  int placed = 0;
  for (JobId j = 0; j < inst.job_count(); ++j)
    for (int k = 1; k <= inst.ops_in_job(j); ++k) count = count * (++placed) / k;
  for (OpId o = 0; o < inst.operation_count(); ++o) count *= static_cast<long double>(inst.eligible_count(o));
  return count;
}

struct OracleResult {
  Time makespan = 0;
  Solution solution;
  std::uint64_t evaluated = 0;
};

// Decodes every (OS, MS) pair and returns a minimal one.
inline OracleResult brute_force_optimal(const Instance& inst, std::uint64_t cap) {
  const long double size = enumeration_size(inst);
  if (size > static_cast<long double>(cap)) throw EnumerationTooLarge(size, cap);

  Solution sol;
  for (JobId j = 0; j < inst.job_count(); ++j) sol.os.insert(sol.os.end(), inst.ops_in_job(j), j);
  const auto total = static_cast<std::size_t>(inst.operation_count());
  std::vector<std::size_t> choice(total, 0);

  OracleResult best;
  best.makespan = std::numeric_limits<Time>::max();
  Schedule sched;
  do {
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      sol.ms.resize(total);
      for (std::size_t o = 0; o < total; ++o) sol.ms[o] = inst.options(static_cast<OpId>(o))[choice[o]].machine;
      decode_active_into(inst, sol, sched);
      ++best.evaluated;
      if (sched.makespan < best.makespan) {
        best.makespan = sched.makespan;
        best.solution = sol;
      }
      std::size_t o = 0;
      while (o < total && ++choice[o] == inst.eligible_count(static_cast<OpId>(o))) choice[o++] = 0;
      if (o == total) break;
    }
  } while (std::next_permutation(sol.os.begin(), sol.os.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Best-known tables: whitespace-separated "name value" lines, '#' comments.

using BestKnownTable = std::map<std::string, Time>;

inline BestKnownTable parse_best_known(std::istream& in) {
  BestKnownTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string name, value, extra;
    if (!(fields >> name)) continue;
    if (!(fields >> value) || (fields >> extra))
      throw std::runtime_error("best-known table line " + std::to_string(line_no) + ": expected 'name value'");
    Time v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || v < 1)
      throw std::runtime_error("best-known table line " + std::to_string(line_no) + ": bad makespan '" + value + "'");
    table[name] = v;
  }
  return table;
}

inline BestKnownTable load_best_known(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open best-known table '" + path + "'");
  return parse_best_known(in);
}

// ---------------------------------------------------------------------------
// Report rows

struct BenchRow {
  std::string instance;
  int n = 0;
  int m = 0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  Time best_makespan = 0;
  std::optional<Time> best_known;
  std::optional<double> gap_pct;
  int iterations_run = 0;
  bool stagnation_hit = false;
  double wall_time_s = 0.0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

inline double gap_percent(Time best, Time known) {
  return 100.0 * static_cast<double>(best - known) / static_cast<double>(known);
}

inline BenchRow make_row(const Instance& inst, const RunReport& report, const BestKnownTable* known) {
  BenchRow row;
  row.instance = inst.name();
  row.n = inst.job_count();
  row.m = inst.machine_count();
  row.beta = flexibility_rate(inst);
  row.seed = report.seed;
  row.best_makespan = report.best_makespan;
  if (known) {
    if (auto it = known->find(inst.name()); it != known->end()) {
      row.best_known = it->second;
      row.gap_pct = gap_percent(report.best_makespan, it->second);
    }
  }
  row.iterations_run = report.iterations_run;
  row.stagnation_hit = report.stop_reason == StopReason::Stagnation;
  row.wall_time_s = report.wall_time;
  return row;
}

namespace detail {

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::runtime_error("bad number '" + s + "' in CSV");
  return v;
}

template <typename Int>
Int parse_int(const std::string& s) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::runtime_error("bad integer '" + s + "' in CSV");
  return v;
}

}  // namespace detail

inline constexpr const char* kCsvHeader =
    "instance,n,m,beta,seed,best_makespan,best_known,gap_pct,iterations_run,stagnation_hit,wall_time_s";

inline void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.instance << ',' << r.n << ',' << r.m << ',' << detail::format_double(r.beta) << ',' << r.seed << ','
        << r.best_makespan << ',' << (r.best_known ? std::to_string(*r.best_known) : "") << ','
        << (r.gap_pct ? detail::format_double(*r.gap_pct) : "") << ',' << r.iterations_run << ','
        << (r.stagnation_hit ? 1 : 0) << ',' << detail::format_double(r.wall_time_s) << '\n';
  }
}

inline std::vector<BenchRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("CSV header mismatch");
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (true) {
      auto comma = line.find(',', pos);
      f.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (f.size() != 11) throw std::runtime_error("CSV row has " + std::to_string(f.size()) + " fields, expected 11");
    BenchRow r;
    r.instance = f[0];
    r.n = detail::parse_int<int>(f[1]);
    r.m = detail::parse_int<int>(f[2]);
    r.beta = detail::parse_double(f[3]);
    r.seed = detail::parse_int<std::uint64_t>(f[4]);
    r.best_makespan = detail::parse_int<Time>(f[5]);
    if (!f[6].empty()) r.best_known = detail::parse_int<Time>(f[6]);
    if (!f[7].empty()) r.gap_pct = detail::parse_double(f[7]);
    r.iterations_run = detail::parse_int<int>(f[8]);
    r.stagnation_hit = detail::parse_int<int>(f[9]) != 0;
    r.wall_time_s = detail::parse_double(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// JSON

// Solutions are written with 1-based job and machine ids, as in instance files.
inline nlohmann::json solution_to_json(const Solution& sol) {
  nlohmann::json os = nlohmann::json::array(), ms = nlohmann::json::array();
  for (auto j : sol.os) os.push_back(j + 1);
  for (auto k : sol.ms) ms.push_back(k + 1);
  return {{"os", os}, {"ms", ms}};
}

inline Solution solution_from_json(const nlohmann::json& j) {
  const auto& node = j.contains("best_solution") ? j.at("best_solution") : j;
  Solution sol;
  for (const auto& v : node.at("os")) sol.os.push_back(v.get<int>() - 1);
  for (const auto& v : node.at("ms")) sol.ms.push_back(v.get<int>() - 1);
  return sol;
}

inline nlohmann::json config_to_json(const GlnsaConfig& cfg) {
  nlohmann::json j = {{"G_n", cfg.iterations},
                      {"S_n", cfg.population},
                      {"l", cfg.neighbors},
                      {"alpha_I", cfg.alpha_insertion},
                      {"alpha_S", cfg.alpha_swapping},
                      {"alpha_P", cfg.alpha_relinking},
                      {"alpha_M", cfg.alpha_mutation},
                      {"S_b", cfg.stagnation_limit},
                      {"E_p", cfg.elite_proportion},
                      {"T_n", cfg.tabu_multiplier},
                      {"b", cfg.tournament_size},
                      {"seed", cfg.seed},
                      {"eval_mode", to_string(cfg.eval_mode)}};
  j["time_limit"] = cfg.time_limit ? nlohmann::json(*cfg.time_limit) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json row_to_json(const BenchRow& r) {
  nlohmann::json j = {{"instance", r.instance},
                      {"n", r.n},
                      {"m", r.m},
                      {"beta", r.beta},
                      {"seed", r.seed},
                      {"best_makespan", r.best_makespan},
                      {"iterations_run", r.iterations_run},
                      {"stagnation_hit", r.stagnation_hit},
                      {"wall_time_s", r.wall_time_s}};
  j["best_known"] = r.best_known ? nlohmann::json(*r.best_known) : nlohmann::json(nullptr);
  j["gap_pct"] = r.gap_pct ? nlohmann::json(*r.gap_pct) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json run_to_json(const Instance& inst, const GlnsaConfig& cfg, const RunReport& report,
                                  const BestKnownTable* known = nullptr) {
  nlohmann::json j = row_to_json(make_row(inst, report, known));
  j["config"] = config_to_json(cfg);
  j["stagnation_final"] = report.stagnation_final;
  j["stop_reason"] = to_string(report.stop_reason);
  j["curve"] = report.curve;
  j["best_solution"] = solution_to_json(report.best_solution);
  return j;
}

// ---------------------------------------------------------------------------
// Batch runs

struct BenchFailure {
  std::string path;
  std::string error;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<nlohmann::json> runs;  // row fields plus curve, config and best solution
  std::vector<BenchFailure> failures;
};

// Runs every (instance, seed) pair in input order. An instance that fails to
// load or run is recorded and skipped.
inline BenchResult run_benchmark(const std::vector<std::string>& paths, const GlnsaConfig& cfg,
                                 const std::vector<std::uint64_t>& seeds, const BestKnownTable* known,
                                 const std::function<void(const BenchRow&)>& on_row = {}) {
  BenchResult result;
  for (const auto& path : paths) {
    try {
      const Instance inst = load_instance(path);
      for (auto seed : seeds) {
        GlnsaConfig run_cfg = cfg;
        run_cfg.seed = seed;
        const RunReport report = glnsa_run(inst, run_cfg);
        result.rows.push_back(make_row(inst, report, known));
        result.runs.push_back(run_to_json(inst, run_cfg, report, known));
        if (on_row) on_row(result.rows.back());
      }
    } catch (const std::exception& e) {
      result.failures.push_back({path, e.what()});
    }
  }
  return result;
}

// Lowest makespan over seeds per instance, in first-appearance order.
inline std::vector<BenchRow> best_per_instance(const std::vector<BenchRow>& rows) {
  std::vector<BenchRow> best;
  for (const auto& r : rows) {
    auto it = std::find_if(best.begin(), best.end(), [&](const BenchRow& b) { return b.instance == r.instance; });
    if (it == best.end())
      best.push_back(r);
    else if (r.best_makespan < it->best_makespan)
      *it = r;
  }
  return best;
}

}  // namespace glnsa
