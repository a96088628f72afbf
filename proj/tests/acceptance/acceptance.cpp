// Acceptance runner. Prints one PASS/FAIL/SKIP line per criterion.
//
//   glnsa_acceptance                 all criteria
//   glnsa_acceptance --criterion N   one criterion; exit 0 pass, 1 fail, 77 skipped
//
// Benchmark files are read from GLNSA_HU_DATA_DIR (environment variable, else
// the path configured at build time) as rdata/<name>.fjs and vdata/<name>.fjs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "CLI11.hpp"

#include "glnsa/bench.hpp"
#include "glnsa/engine.hpp"
#include "glnsa/instance.hpp"
#include "support/fixtures.hpp"
#include "support/properties.hpp"

namespace fs = std::filesystem;
using namespace glnsa;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

constexpr int kSeeds = 5;

std::string hu_dir() {
  if (const char* env = std::getenv("GLNSA_HU_DATA_DIR"); env && *env) return env;
  return GLNSA_HU_DATA_DIR;
}

fs::path hu_file(const std::string& set, const std::string& name) { return fs::path(hu_dir()) / set / (name + ".fjs"); }

struct TableRow {
  std::string set, name;
  int n = 0, m = 0;
  double beta = 0;
  Time glnsa = 0, best_known = 0;
};

std::vector<TableRow> load_tables() {
  std::ifstream in(std::string(GLNSA_DATA_DIR) + "/hu_tables.txt");
  if (!in) throw std::runtime_error("cannot open hu_tables.txt");
  std::vector<TableRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream f(line);
    TableRow r;
    if (!(f >> r.set >> r.name >> r.n >> r.m >> r.beta >> r.glnsa >> r.best_known))
      throw std::runtime_error("bad hu_tables.txt line: " + line);
    rows.push_back(r);
  }
  return rows;
}

const TableRow& table_row(const std::vector<TableRow>& rows, const std::string& set, const std::string& name) {
  for (const auto& r : rows)
    if (r.set == set && r.name == name) return r;
  throw std::runtime_error("no table row for " + set + "/" + name);
}

std::string missing_files(const std::vector<std::pair<std::string, std::string>>& wanted) {
  std::vector<std::string> missing;
  for (const auto& [set, name] : wanted)
    if (!fs::exists(hu_file(set, name))) missing.push_back(set + "/" + name);
  if (missing.empty()) return {};
  std::string text = "data missing: " + std::to_string(missing.size()) + " of " + std::to_string(wanted.size()) +
                     " benchmark files not found under " + hu_dir() + " (first: " + missing.front() + ".fjs)";
  return text;
}

struct Target {
  std::string set, name;
  Time limit;  // best of seeds must be <= limit
};

// Best of kSeeds default-config runs per target; every run must finish within
// `cap_s` seconds.
Outcome run_targets(const std::vector<Target>& targets, double cap_s) {
  std::vector<std::pair<std::string, std::string>> wanted;
  for (const auto& t : targets) wanted.emplace_back(t.set, t.name);
  if (auto m = missing_files(wanted); !m.empty()) return {Verdict::Skip, m};

  int met = 0;
  std::string misses;
  double slowest = 0;
  for (const auto& t : targets) {
    const Instance inst = load_instance(hu_file(t.set, t.name).string());
    Time best = std::numeric_limits<Time>::max();
    bool over_time = false;
    for (int s = 1; s <= kSeeds; ++s) {
      GlnsaConfig cfg;
      cfg.seed = static_cast<std::uint64_t>(s);
      const auto report = glnsa_run(inst, cfg);
      best = std::min(best, report.best_makespan);
      slowest = std::max(slowest, report.wall_time);
      if (report.wall_time > cap_s) over_time = true;
    }
    std::cout << "  " << t.set << "/" << t.name << ": best " << best << " (target <= " << t.limit << ")"
              << (over_time ? " [over time cap]" : "") << std::endl;
    if (best <= t.limit && !over_time)
      ++met;
    else
      misses += " " + t.set + "/" + t.name + "=" + std::to_string(best) + (over_time ? "(slow)" : "");
  }
  std::ostringstream detail;
  detail << met << "/" << targets.size() << " targets met, slowest run " << slowest << " s";
  if (!misses.empty()) detail << "; missed:" << misses;
  return {met == static_cast<int>(targets.size()) ? Verdict::Pass : Verdict::Fail, detail.str()};
}

Outcome criterion1() {
  const std::vector<Target> t{{"vdata", "mt06", 47},  {"vdata", "la01", 570}, {"vdata", "la02", 529},
                              {"vdata", "la03", 477}, {"vdata", "la04", 502}, {"vdata", "la05", 457},
                              {"vdata", "mt10", 655}, {"vdata", "la16", 717}, {"vdata", "la17", 646},
                              {"vdata", "la18", 663}, {"vdata", "la19", 617}, {"vdata", "la20", 756}};
  return run_targets(t, 60);
}

Outcome criterion2() {
  const std::vector<Target> t{{"rdata", "mt06", 47},  {"rdata", "mt10", 686}, {"rdata", "la16", 717},
                              {"rdata", "la17", 646}, {"rdata", "la20", 756}, {"rdata", "la05", 457},
                              {"rdata", "la12", 936}};
  return run_targets(t, 60);
}

Outcome criterion3() {
  const auto tables = load_tables();
  std::vector<Target> t;
  for (const auto& [set, tol] : {std::pair<std::string, double>{"vdata", 0.02}, {"rdata", 0.03}})
    for (int k = 21; k <= 30; ++k) {
      const std::string name = "la" + std::to_string(k);
      const auto& row = table_row(tables, set, name);
      t.push_back({set, name, static_cast<Time>(std::floor(static_cast<double>(row.glnsa) * (1.0 + tol)))});
    }
  return run_targets(t, 180);
}

Outcome criterion4() {
  const auto started = std::chrono::steady_clock::now();
  int agree = 0, total = 0;
  std::string first_miss;
  for (std::uint64_t c = 0; total < 50; ++c) {
    auto rng = make_stream(2024, {c});
    const Instance inst = support::random_instance(rng, 3, 2, 3);
    if (enumeration_size(inst) > 1e6L) continue;
    ++total;
    const Time optimum = brute_force_optimal(inst, 1'000'000).makespan;
    GlnsaConfig cfg;
    cfg.seed = c + 1;
    const Time found = glnsa_run(inst, cfg).best_makespan;
    if (found == optimum)
      ++agree;
    else if (first_miss.empty())
      first_miss = "; first miss: case " + std::to_string(c) + " found " + std::to_string(found) + " vs optimum " +
                   std::to_string(optimum);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::ostringstream detail;
  detail << agree << "/" << total << " instances match the exhaustive optimum in " << secs << " s (cap 120 s)"
         << first_miss;
  return {agree == total && secs <= 120 ? Verdict::Pass : Verdict::Fail, detail.str()};
}

Outcome criterion5() {
  constexpr int kCases = 10000;
  struct Suite {
    const char* name;
    std::function<support::PropertyResult()> run;
  };
  const std::vector<Suite> suites{
      {"decoder feasibility + active", [] { return support::decoder_property(kCases, 1); }},
      {"operator multiset preservation", [] { return support::operator_property(kCases + kCases / 4, 2); }},
      {"relinking termination + Hamming monotonicity", [] { return support::relinking_property(kCases, 3); }},
      {"mutation floor(T/2) + feasibility", [] { return support::mutation_property(kCases, 4); }},
      {"head+tail bound + critical-path equality", [] { return support::heads_tails_property(kCases, 5); }},
      {"tabu monotone + discipline (exact)", [] { return support::tabu_property(kCases, 6, EvalMode::Exact); }},
      {"tabu monotone + discipline (estimate)", [] { return support::tabu_property(kCases, 7, EvalMode::Estimate); }},
      {"exact reassignment = re-decode", [] { return support::exact_reassignment_property(kCases, 8); }},
  };
  int failed = 0;
  for (const auto& s : suites) {
    const auto r = s.run();
    const bool ok = r.ok() && r.cases >= kCases;
    std::cout << "  " << s.name << ": " << r.cases << " cases, " << r.failures << " failures"
              << (r.first_failure.empty() ? "" : " (" + r.first_failure + ")") << std::endl;
    failed += !ok;
  }
  return {failed == 0 ? Verdict::Pass : Verdict::Fail,
          std::to_string(suites.size() - failed) + "/" + std::to_string(suites.size()) +
              " suites clean with >= 10000 cases each"};
}

int run_command(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome criterion6() {
  // Prefer a real benchmark file; fall back to a generated 10x5 instance.
  const fs::path tmp = fs::temp_directory_path() / ("glnsa_repro_" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  fs::path inst_path = hu_file("vdata", "la01");
  if (!fs::exists(inst_path)) {
    auto rng = make_stream(77, {});
    Instance gen = support::random_instance(rng, 1, 1, 1);
    while (gen.job_count() < 8 || gen.machine_count() < 4) gen = support::random_instance(rng, 10, 6, 5, 30, 2);
    inst_path = tmp / "repro.fjs";
    std::ofstream(inst_path) << serialize_instance(gen);
  }
  const Instance inst = load_instance(inst_path.string());
  GlnsaConfig cfg;
  cfg.iterations = 30;
  cfg.seed = 12345;

  std::vector<std::string> reports;
  for (int workers : {1, 4})
    for (int rep = 0; rep < 3; ++rep) {
      cfg.workers = workers;
      auto report = glnsa_run(inst, cfg);
      report.wall_time = 0;
      reports.push_back(run_to_json(inst, cfg, report).dump());
    }
  bool same = true;
  for (const auto& r : reports) same = same && r == reports.front();

  std::vector<std::string> csvs, jsons;
  for (int workers : {1, 4})
    for (int rep = 0; rep < 3; ++rep) {
      const auto csv = tmp / ("w" + std::to_string(workers) + "_" + std::to_string(rep) + ".csv");
      const auto json = tmp / ("w" + std::to_string(workers) + "_" + std::to_string(rep) + ".json");
      const std::string cmd = std::string(GLNSA_CLI_PATH) + " bench '" + inst_path.string() +
                              "' --G_n 30 --seeds 12345,7 --no-timing --workers " + std::to_string(workers) +
                              " --csv '" + csv.string() + "' --output '" + json.string() + "' 2>/dev/null";
      if (run_command(cmd) != 0) return {Verdict::Fail, "CLI bench invocation failed: " + cmd};
      csvs.push_back(slurp(csv));
      jsons.push_back(slurp(json));
    }
  bool bytes = true;
  for (std::size_t i = 1; i < csvs.size(); ++i) bytes = bytes && csvs[i] == csvs[0] && jsons[i] == jsons[0];
  fs::remove_all(tmp);

  std::ostringstream detail;
  detail << inst.name() << " (" << inst.job_count() << "x" << inst.machine_count() << "): RunReport "
         << (same ? "identical" : "DIFFERS") << " over 3 repeats x workers {1,4}; CLI CSV/JSON bytes "
         << (bytes ? "identical" : "DIFFER") << " over 6 invocations";
  return {same && bytes ? Verdict::Pass : Verdict::Fail, detail.str()};
}

Outcome criterion7() {
  const auto tables = load_tables();
  std::vector<std::pair<std::string, std::string>> wanted;
  for (const auto& r : tables) wanted.emplace_back(r.set, r.name);
  if (auto m = missing_files(wanted); !m.empty()) return {Verdict::Skip, m};
  int ok = 0;
  std::string misses;
  for (const auto& r : tables) {
    const Instance inst = load_instance(hu_file(r.set, r.name).string());
    const double beta = std::round(flexibility_rate(inst) * 100) / 100;
    if (inst.job_count() == r.n && inst.machine_count() == r.m && std::abs(beta - r.beta) < 1e-9)
      ++ok;
    else
      misses += " " + r.set + "/" + r.name;
  }
  return {ok == static_cast<int>(tables.size()) ? Verdict::Pass : Verdict::Fail,
          std::to_string(ok) + "/" + std::to_string(tables.size()) + " instances match n, m and beta" +
              (misses.empty() ? "" : "; mismatched:" + misses)};
}

const char* label(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GLNSA acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-7)")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact optima, vdata small instances", criterion1},
      {"exact optima, rdata subset", criterion2},
      {"tolerance on la21-la30", criterion3},
      {"oracle equivalence on 50 tiny instances", criterion4},
      {"property suites", criterion5},
      {"reproducibility across repeats and workers", criterion6},
      {"instance metadata", criterion7},
  };

  bool any_fail = false, all_skipped = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {Verdict::Fail, std::string("error: ") + e.what()};
    }
    std::cout << label(o.verdict) << " criterion " << i + 1 << " (" << criteria[i].first << "): " << o.detail
              << std::endl;
    any_fail = any_fail || o.verdict == Verdict::Fail;
    all_skipped = all_skipped && o.verdict == Verdict::Skip;
  }
  if (any_fail) return 1;
  return only && all_skipped ? 77 : 0;
}
