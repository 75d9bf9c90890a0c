// Benchmark runner: generated yes-instances across sizes, baseline vs
// improved, wall time plus query accounting, and log-log growth fits.
// Output is machine-readable JSON under the schema "psembed-bench-report/1".
#pragma once

#include "psembed/embed_exact.hpp"
#include "psembed/embed_general.hpp"
#include "psembed/generate.hpp"
#include "psembed/rep_tree.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace psembed {

struct BenchConfig {
  std::vector<int> sizes{256, 512, 1024, 2048};
  int reps = 3;
  std::uint64_t seed = 1;
  i64 coord_bound = 1'000'000;
  bool run_baseline = true;
  bool run_improved = true;
  bool run_generalized = false;  // k = n; feasible for small sizes only
  bool skewed = false;
  int threads = 0;  // 0: hardware concurrency
};

struct BenchRow {
  int n = 0;
  int rep = 0;
  std::string mode;
  bool found = false;
  double wall_ms = 0.0;
  AlgoStats stats;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;

  nlohmann::ordered_json to_json() const;
};

namespace detail {

inline double loglog_slope(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    const double lx = std::log2(x);
    const double ly = std::log2(std::max(y, 1.0));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(xy.size());
  const double denom = m * sxx - sx * sx;
  return denom == 0 ? 0.0 : (m * sxy - sx * sy) / denom;
}

}  // namespace detail

inline nlohmann::ordered_json BenchReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "psembed-bench-report/1";
  j["config"] = {{"sizes", config.sizes},
                 {"reps", config.reps},
                 {"seed", config.seed},
                 {"coord_bound", config.coord_bound},
                 {"baseline", config.run_baseline},
                 {"improved", config.run_improved},
                 {"generalized", config.run_generalized},
                 {"skewed", config.skewed}};
  auto& jrows = j["rows"] = nlohmann::ordered_json::array();
  for (const BenchRow& r : rows) {
    jrows.push_back({{"n", r.n},
                    {"rep", r.rep},
                    {"mode", r.mode},
                    {"found", r.found},
                    {"wall_ms", r.wall_ms},
                    {"count_queries", r.stats.count_queries},
                    {"report_queries", r.stats.report_queries},
                    {"candidates_checked", r.stats.candidates_checked},
                    {"binary_search_steps", r.stats.binary_search_steps},
                    {"recursion_nodes", r.stats.recursion_nodes}});
  }

  // Per-(n, mode) means and growth fits.
  auto& aggregates = j["aggregates"] = nlohmann::ordered_json::array();
  std::vector<std::pair<double, double>> improved_queries, baseline_candidates,
      improved_candidates;
  for (const std::string& mode :
       {std::string("baseline"), std::string("improved"), std::string("generalized")}) {
    for (int n : config.sizes) {
      double wall = 0, cq = 0, cand = 0;
      int cnt = 0;
      for (const BenchRow& r : rows) {
        if (r.n != n || r.mode != mode) continue;
        wall += r.wall_ms;
        cq += static_cast<double>(r.stats.count_queries);
        cand += static_cast<double>(r.stats.candidates_checked);
        ++cnt;
      }
      if (cnt == 0) continue;
      wall /= cnt;
      cq /= cnt;
      cand /= cnt;
      aggregates.push_back({{"n", n},
                            {"mode", mode},
                            {"wall_ms_mean", wall},
                            {"count_queries_mean", cq},
                            {"candidates_checked_mean", cand}});
      if (mode == "improved") {
        improved_queries.emplace_back(n, cq);
        improved_candidates.emplace_back(n, cand);
      } else {
        baseline_candidates.emplace_back(n, cand);
      }
    }
  }
  j["fits"] = {{"improved_count_queries_exponent", detail::loglog_slope(improved_queries)},
               {"improved_candidates_exponent", detail::loglog_slope(improved_candidates)},
               {"baseline_candidates_exponent", detail::loglog_slope(baseline_candidates)}};
  return j;
}

inline BenchReport run_bench(const BenchConfig& config) {
  struct Task {
    int n;
    int rep;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int n : config.sizes)
    for (int rep = 0; rep < config.reps; ++rep)
      tasks.push_back({n, rep,
                       config.seed * 0x9e3779b97f4a7c15ull +
                           static_cast<std::uint64_t>(n) * 1000003ull +
                           static_cast<std::uint64_t>(rep)});

  const unsigned threads = config.threads > 0
                               ? static_cast<unsigned>(config.threads)
                               : std::max(1u, std::thread::hardware_concurrency());

  auto run_task = [&](const Task& t) {
    std::vector<BenchRow> rows;
    const YesInstance yi = gen_yes_instance(
        t.n, t.seed, config.coord_bound,
        config.skewed ? YesStyle::Skewed : YesStyle::GeneralPosition);
    const RepTree tree = validate_and_build(yi.instance.graph);
    auto one = [&](EmbedMode mode, const char* name) {
      const auto start = std::chrono::steady_clock::now();
      const EmbedResult res = embed(tree, yi.instance.points, mode);
      const auto stop = std::chrono::steady_clock::now();
      BenchRow row;
      row.n = t.n;
      row.rep = t.rep;
      row.mode = name;
      row.found = res.found();
      row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      row.stats = res.stats;
      rows.push_back(row);
    };
    if (config.run_baseline) one(EmbedMode::Baseline, "baseline");
    if (config.run_improved) one(EmbedMode::Improved, "improved");
    if (config.run_generalized) {
      const auto start = std::chrono::steady_clock::now();
      GeneralEmbedStats gstats;
      const auto m = embed_general(tree, yi.instance.points, &gstats);
      const auto stop = std::chrono::steady_clock::now();
      BenchRow row;
      row.n = t.n;
      row.rep = t.rep;
      row.mode = "generalized";
      row.found = m.has_value();
      row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      row.stats.recursion_nodes = gstats.entries_evaluated;
      rows.push_back(row);
    }
    return rows;
  };

  BenchReport report;
  report.config = config;
  std::vector<std::future<std::vector<BenchRow>>> futures;
  std::size_t next = 0;
  while (next < tasks.size() || !futures.empty()) {
    while (next < tasks.size() && futures.size() < threads)
      futures.push_back(std::async(std::launch::async, run_task, tasks[next++]));
    auto rows = futures.front().get();
    futures.erase(futures.begin());
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  std::sort(report.rows.begin(), report.rows.end(), [](const BenchRow& a, const BenchRow& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.rep != b.rep) return a.rep < b.rep;
    return a.mode < b.mode;
  });
  return report;
}

}  // namespace psembed
