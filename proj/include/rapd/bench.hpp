// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_BENCH_HPP_
#define RAPD_BENCH_HPP_

#include <atomic>
#include <cstdint>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rapd/capexp.hpp"
#include "rapd/instance.hpp"
#include "rapd/network.hpp"

namespace rapd::bench {

struct BenchConfig {
  // The network is instantiated per replicate with seeds master_seed + r,
  // unless `preset_instances` supplies one instance per replicate.
  Network network;
  std::size_t num_scenarios = 18;
  std::uint64_t master_seed = 7;
  std::size_t replicates = 20;
  std::vector<int> algorithms;  // subset of 1..13
  double tolerance = 1e-10;
  std::uint64_t max_iters = 200000;
  std::size_t workers = 1;
  std::vector<Instance> preset_instances;

  void validate() const {
    if (!(tolerance > 0.0)) throw std::invalid_argument("BenchConfig: tolerance");
    if (replicates < 1) throw std::invalid_argument("BenchConfig: replicates");
    if (algorithms.empty()) throw std::invalid_argument("BenchConfig: no algorithms");
    for (int a : algorithms) {
      if (a < 1 || a > 13) {
        throw std::invalid_argument("BenchConfig: unknown algorithm id " +
                                    std::to_string(a));
      }
    }
  }
};

struct BenchRow {
  int algorithm = 0;
  std::string class_label;
  int l = 0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  double wall_seconds = 0.0;
  double final_error = 0.0;
  double objective = 0.0;
  SolveStatus status = SolveStatus::kMaxIterations;
};

struct ImprovementRow {
  int algorithm = 0;
  std::size_t replicate = 0;
  double iteration_improvement_pct = 0.0;
  double time_improvement_pct = 0.0;
};

struct AlgorithmSummary {
  int algorithm = 0;
  std::string class_label;
  int l = 0;
  double mean_iterations = 0.0;
  double mean_wall_seconds = 0.0;
  std::size_t converged = 0;
  std::size_t runs = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;  // sorted by (algorithm, replicate)
  std::vector<ImprovementRow> improvements;  // vs algorithm 1, per replicate
  std::vector<AlgorithmSummary> summaries;
  std::vector<capexp::CapexRun> runs;  // parallel to rows
  std::vector<Instance> instances;     // one per replicate
  std::vector<std::string> warnings;
  int exit_code = 0;  // 0 converged, 2 any max-iterations, 3 any divergence
};

namespace detail {
inline std::string format_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}
}  // namespace detail

/// Runs the configured (algorithm, replicate) grid. All algorithms share the
/// same instance within a replicate; per-run random streams are derived from
/// (master seed, algorithm, replicate). Rows come out sorted regardless of
/// worker count.
inline BenchResult run_benchmark(const BenchConfig& cfg) {
  cfg.validate();
  BenchResult result;

  std::vector<Instance> instances;
  if (!cfg.preset_instances.empty()) {
    if (cfg.preset_instances.size() != cfg.replicates) {
      throw std::invalid_argument(
          "run_benchmark: preset_instances must match replicates");
    }
    instances = cfg.preset_instances;
  } else {
    instances.reserve(cfg.replicates);
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
      instances.push_back(generate_instance(cfg.network, cfg.num_scenarios,
                                            cfg.master_seed + r));
    }
  }
  for (std::size_t r = 0; r < cfg.replicates; ++r) {
    for (const auto& w : feasibility_warnings(instances[r])) {
      result.warnings.push_back("replicate " + std::to_string(r) + ": " + w);
    }
  }

  struct Cell {
    int algorithm;
    std::size_t replicate;
  };
  std::vector<Cell> cells;
  for (int a : cfg.algorithms) {
    for (std::size_t r = 0; r < cfg.replicates; ++r) cells.push_back({a, r});
  }

  result.rows.resize(cells.size());
  result.runs.resize(cells.size());
  std::atomic<std::size_t> cursor{0};
  std::mutex error_mutex;
  std::string first_error;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell cell = cells[i];
      try {
        const std::uint64_t run_seed = SeededRng::derive_seed(
            cfg.master_seed, static_cast<std::uint64_t>(cell.algorithm),
            cell.replicate);
        capexp::CapexRun run =
            capexp::solve_capexp(instances[cell.replicate], cell.algorithm,
                                 run_seed, cfg.tolerance, cfg.max_iters);
        BenchRow row;
        row.algorithm = cell.algorithm;
        row.class_label = run.label;
        row.l = run.l_nominal;
        row.replicate = cell.replicate;
        row.seed = run_seed;
        row.iterations = run.report.iterations;
        row.wall_seconds = run.report.wall_seconds;
        row.final_error = run.report.final_error;
        row.objective = run.solution.objective;
        row.status = run.report.status;
        result.rows[i] = std::move(row);
        result.runs[i] = std::move(run);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error.empty()) first_error = e.what();
        return;
      }
    }
  };

  const std::size_t nworkers =
      std::max<std::size_t>(1, std::min(cfg.workers, cells.size()));
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nworkers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (!first_error.empty()) {
    throw std::runtime_error("run_benchmark: " + first_error);
  }

  std::vector<std::size_t> order(result.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (result.rows[a].algorithm != result.rows[b].algorithm) {
      return result.rows[a].algorithm < result.rows[b].algorithm;
    }
    return result.rows[a].replicate < result.rows[b].replicate;
  });
  std::vector<BenchRow> sorted_rows;
  std::vector<capexp::CapexRun> sorted_runs;
  sorted_rows.reserve(order.size());
  sorted_runs.reserve(order.size());
  for (std::size_t i : order) {
    sorted_rows.push_back(std::move(result.rows[i]));
    sorted_runs.push_back(std::move(result.runs[i]));
  }
  result.rows = std::move(sorted_rows);
  result.runs = std::move(sorted_runs);

  // Per-algorithm means and per-replicate improvement against algorithm 1.
  for (int a : cfg.algorithms) {
    AlgorithmSummary s;
    s.algorithm = a;
    for (const auto& row : result.rows) {
      if (row.algorithm != a) continue;
      s.class_label = row.class_label;
      s.l = row.l;
      s.mean_iterations += static_cast<double>(row.iterations);
      s.mean_wall_seconds += row.wall_seconds;
      s.runs += 1;
      if (row.status == SolveStatus::kConverged) s.converged += 1;
    }
    if (s.runs > 0) {
      s.mean_iterations /= static_cast<double>(s.runs);
      s.mean_wall_seconds /= static_cast<double>(s.runs);
    }
    result.summaries.push_back(s);
  }

  const bool have_baseline =
      std::find(cfg.algorithms.begin(), cfg.algorithms.end(), 1) !=
      cfg.algorithms.end();
  if (have_baseline) {
    std::vector<const BenchRow*> baseline(cfg.replicates, nullptr);
    for (const auto& row : result.rows) {
      if (row.algorithm == 1) baseline[row.replicate] = &row;
    }
    for (const auto& row : result.rows) {
      const BenchRow* base = baseline[row.replicate];
      if (base == nullptr) continue;
      ImprovementRow imp;
      imp.algorithm = row.algorithm;
      imp.replicate = row.replicate;
      imp.iteration_improvement_pct =
          100.0 *
          (static_cast<double>(base->iterations) -
           static_cast<double>(row.iterations)) /
          static_cast<double>(base->iterations);
      imp.time_improvement_pct =
          100.0 * (base->wall_seconds - row.wall_seconds) /
          base->wall_seconds;
      result.improvements.push_back(imp);
    }
  }

  for (const auto& row : result.rows) {
    if (row.status == SolveStatus::kDiverged) {
      result.exit_code = 3;
      break;
    }
    if (row.status == SolveStatus::kMaxIterations) result.exit_code = 2;
  }
  result.instances = std::move(instances);
  return result;
}

inline std::string rows_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "algorithm,class,l,replicate,seed,iterations,wall_seconds,"
        "final_error,objective,status\n";
  for (const auto& r : rows) {
    os << r.algorithm << ',' << r.class_label << ',' << r.l << ','
       << r.replicate << ',' << r.seed << ',' << r.iterations << ','
       << detail::format_double(r.wall_seconds) << ','
       << detail::format_double(r.final_error) << ','
       << detail::format_double(r.objective) << ',' << to_string(r.status)
       << '\n';
  }
  return os.str();
}

inline std::string improvements_to_csv(const std::vector<ImprovementRow>& rows) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "algorithm,replicate,iteration_improvement_pct,time_improvement_pct\n";
  for (const auto& r : rows) {
    os << r.algorithm << ',' << r.replicate << ','
       << detail::format_double(r.iteration_improvement_pct) << ','
       << detail::format_double(r.time_improvement_pct) << '\n';
  }
  return os.str();
}

struct ArcReportRow {
  int arc_id = 0;
  double worst_excess = 0.0;
  double expansion = 0.0;
  bool expanded = false;
};

/// Per-arc table of worst-scenario flow excess and consensus expansion; arcs
/// with positive expansion are flagged as the expanded set.
inline std::vector<ArcReportRow> report_solution(const Network& net,
                                                 const capexp::CapexRun& run,
                                                 double flag_tol = 1e-3) {
  std::vector<ArcReportRow> table;
  for (std::size_t a = 0; a < net.num_arcs(); ++a) {
    ArcReportRow row;
    row.arc_id = net.arcs[a].id;
    row.worst_excess = run.solution.worst_excess[a];
    row.expansion = run.solution.x_consensus[a];
    row.expanded = row.expansion > flag_tol;
    table.push_back(row);
  }
  return table;
}

}  // namespace rapd::bench

#endif  // RAPD_BENCH_HPP_
