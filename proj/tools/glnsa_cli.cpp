// glnsa: command-line front end for the FJSP solver.
//
//   glnsa solve  INSTANCE [--output run.json] [--gantt chart.svg] [config flags]
//   glnsa bench  INSTANCE... [--seeds 1,2,3] [--csv rows.csv] [--output runs.json] [--best-known table.txt]
//   glnsa oracle INSTANCE [--cap N]
//   glnsa gantt  INSTANCE --solution run.json --output chart.svg

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "glnsa/bench.hpp"
#include "glnsa/engine.hpp"
#include "glnsa/gantt_svg.hpp"
#include "glnsa/instance.hpp"

namespace {

struct ConfigFlags {
  glnsa::GlnsaConfig cfg;
  std::string eval_mode = "estimate";
  double time_limit = 0.0;

  void add_to(CLI::App& app) {
    app.add_option("--G_n", cfg.iterations, "Maximum number of iterations")->capture_default_str();
    app.add_option("--S_n", cfg.population, "Number of smart cells")->capture_default_str();
    app.add_option("--l", cfg.neighbors, "Neighbors generated per cell")->capture_default_str();
    app.add_option("--alpha_I", cfg.alpha_insertion, "Insertion probability")->capture_default_str();
    app.add_option("--alpha_S", cfg.alpha_swapping, "Swapping probability")->capture_default_str();
    app.add_option("--alpha_P", cfg.alpha_relinking, "Path relinking probability")->capture_default_str();
    app.add_option("--alpha_M", cfg.alpha_mutation, "Machine mutation probability")->capture_default_str();
    app.add_option("--S_b", cfg.stagnation_limit, "Stagnation limit")->capture_default_str();
    app.add_option("--E_p", cfg.elite_proportion, "Elite proportion")->capture_default_str();
    app.add_option("--T_n", cfg.tabu_multiplier, "Tabu iterations per cell = T_n * iteration")->capture_default_str();
    app.add_option("--b", cfg.tournament_size, "Tournament size")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--eval-mode", eval_mode, "Tabu move scoring: exact or estimate")
        ->check(CLI::IsMember({"exact", "estimate"}))
        ->capture_default_str();
    app.add_option("--time-limit", time_limit, "Wall-clock limit per run in seconds (0: none)");
    app.add_option("--workers", cfg.workers, "Worker threads per run")->capture_default_str();
  }

  glnsa::GlnsaConfig resolve() const {
    glnsa::GlnsaConfig out = cfg;
    out.eval_mode = glnsa::parse_eval_mode(eval_mode);
    if (time_limit > 0) out.time_limit = time_limit;
    out.validate();
    return out;
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

int run_solve(const std::string& path, const glnsa::GlnsaConfig& cfg, const std::string& output,
              const std::string& gantt, const std::string& best_known, bool verbose, bool no_timing) {
  const auto inst = glnsa::load_instance(path);
  std::optional<glnsa::BestKnownTable> known;
  if (!best_known.empty()) known = glnsa::load_best_known(best_known);

  glnsa::ProgressCallback progress;
  if (verbose)
    progress = [](int it, glnsa::Time best) { std::cerr << "iteration " << it << " best " << best << '\n'; };
  auto report = glnsa::glnsa_run(inst, cfg, progress);
  if (no_timing) report.wall_time = 0;

  const auto row = glnsa::make_row(inst, report, known ? &*known : nullptr);
  std::cout << row.instance << ": makespan " << row.best_makespan;
  if (row.best_known) std::cout << " (best known " << *row.best_known << ", gap " << *row.gap_pct << "%)";
  std::cout << ", " << row.iterations_run << " iterations, stop: " << glnsa::to_string(report.stop_reason) << ", "
            << report.wall_time << " s\n";

  if (!output.empty()) write_text(output, glnsa::run_to_json(inst, cfg, report, known ? &*known : nullptr).dump(2) + "\n");
  if (!gantt.empty()) glnsa::write_gantt_svg(inst, glnsa::decode_active(inst, report.best_solution), gantt);
  return 0;
}

int run_bench(const std::vector<std::string>& paths, glnsa::GlnsaConfig cfg, std::vector<std::uint64_t> seeds,
              const std::string& csv, const std::string& output, const std::string& best_known,
              std::optional<double> max_gap, bool no_timing) {
  std::optional<glnsa::BestKnownTable> known;
  if (!best_known.empty()) known = glnsa::load_best_known(best_known);
  if (seeds.empty()) seeds.push_back(cfg.seed);

  auto result = glnsa::run_benchmark(paths, cfg, seeds, known ? &*known : nullptr, [](const glnsa::BenchRow& r) {
    std::cerr << r.instance << " seed " << r.seed << ": " << r.best_makespan;
    if (r.best_known) std::cerr << " (known " << *r.best_known << ")";
    std::cerr << " in " << r.wall_time_s << " s\n";
  });
  if (no_timing) {
    for (auto& r : result.rows) r.wall_time_s = 0;
    for (auto& j : result.runs) j["wall_time_s"] = 0.0;
  }

  if (!csv.empty()) {
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + csv + "'");
    glnsa::write_csv(out, result.rows);
  } else {
    glnsa::write_csv(std::cout, result.rows);
  }
  if (!output.empty()) {
    nlohmann::json doc = {{"runs", result.runs}, {"failures", nlohmann::json::array()}};
    for (const auto& f : result.failures) doc["failures"].push_back({{"path", f.path}, {"error", f.error}});
    write_text(output, doc.dump(2) + "\n");
  }

  int status = 0;
  for (const auto& f : result.failures) {
    std::cerr << "error: " << f.path << ": " << f.error << '\n';
    status = 1;
  }
  if (max_gap) {
    for (const auto& best : glnsa::best_per_instance(result.rows)) {
      if (best.gap_pct && *best.gap_pct > *max_gap + 1e-9) {
        std::cerr << "target missed: " << best.instance << " best " << best.best_makespan << " vs "
                  << *best.best_known << " (gap " << *best.gap_pct << "% > " << *max_gap << "%)\n";
        if (status == 0) status = 2;
      }
    }
  }
  return status;
}

int run_oracle(const std::string& path, std::uint64_t cap) {
  const auto inst = glnsa::load_instance(path);
  const auto result = glnsa::brute_force_optimal(inst, cap);
  std::cout << inst.name() << ": optimal makespan " << result.makespan << " (" << result.evaluated
            << " pairs decoded)\n";
  return 0;
}

int run_gantt(const std::string& path, const std::string& solution_path, const std::string& output) {
  const auto inst = glnsa::load_instance(path);
  std::ifstream in(solution_path);
  if (!in) throw std::runtime_error("cannot open solution file '" + solution_path + "'");
  const auto sol = glnsa::solution_from_json(nlohmann::json::parse(in));
  if (auto err = glnsa::validate(inst, sol); !err.empty()) throw std::runtime_error("invalid solution: " + err);
  const auto sched = glnsa::decode_active(inst, sol);
  glnsa::write_gantt_svg(inst, sched, output);
  std::cout << inst.name() << ": makespan " << sched.makespan << ", chart written to " << output << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GLNSA solver for the flexible job shop scheduling problem"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve one instance");
  ConfigFlags solve_flags;
  std::string solve_path, solve_output, solve_gantt, solve_known;
  bool verbose = false, solve_no_timing = false;
  solve->add_option("instance", solve_path, "Instance file")->required()->check(CLI::ExistingFile);
  solve_flags.add_to(*solve);
  solve->add_option("--output", solve_output, "Write the run report (JSON)");
  solve->add_option("--gantt", solve_gantt, "Write a Gantt chart of the best schedule (SVG)");
  solve->add_option("--best-known", solve_known, "Best-known table for the gap column");
  solve->add_flag("--no-timing", solve_no_timing, "Report wall time as 0 for byte-stable output");
  solve->add_flag("-v,--verbose", verbose, "Print the best makespan after every iteration");

  auto* bench = app.add_subcommand("bench", "Run a batch of instances over several seeds");
  ConfigFlags bench_flags;
  std::vector<std::string> bench_paths;
  std::vector<std::uint64_t> bench_seeds;
  std::string bench_csv, bench_output, bench_known;
  double max_gap = -1;
  bool bench_no_timing = false;
  bench->add_option("instances", bench_paths, "Instance files")->required()->check(CLI::ExistingFile);
  bench_flags.add_to(*bench);
  bench->add_option("--seeds", bench_seeds, "Seeds to run (default: --seed)")->delimiter(',');
  bench->add_option("--csv", bench_csv, "Write rows as CSV (default: stdout)");
  bench->add_option("--output", bench_output, "Write runs with curves (JSON)");
  bench->add_option("--best-known", bench_known, "Best-known table ('name value' lines)");
  bench->add_option("--max-gap", max_gap, "Exit with status 2 if an instance's best gap exceeds this percentage");
  bench->add_flag("--no-timing", bench_no_timing, "Report wall times as 0 for byte-stable output");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for a tiny instance");
  std::string oracle_path;
  std::uint64_t cap = 10'000'000;
  oracle->add_option("instance", oracle_path, "Instance file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--cap", cap, "Maximum number of (sequence, assignment) pairs")->capture_default_str();

  auto* gantt = app.add_subcommand("gantt", "Render a saved solution as an SVG Gantt chart");
  std::string gantt_path, gantt_solution, gantt_output;
  gantt->add_option("instance", gantt_path, "Instance file")->required()->check(CLI::ExistingFile);
  gantt->add_option("--solution", gantt_solution, "Run report or {os, ms} JSON")->required()->check(CLI::ExistingFile);
  gantt->add_option("--output", gantt_output, "SVG output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve)
      return run_solve(solve_path, solve_flags.resolve(), solve_output, solve_gantt, solve_known, verbose,
                       solve_no_timing);
    if (*bench)
      return run_bench(bench_paths, bench_flags.resolve(), bench_seeds, bench_csv, bench_output, bench_known,
                       max_gap >= 0 ? std::optional<double>(max_gap) : std::nullopt, bench_no_timing);
    if (*oracle) return run_oracle(oracle_path, cap);
    if (*gantt) return run_gantt(gantt_path, gantt_solution, gantt_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
