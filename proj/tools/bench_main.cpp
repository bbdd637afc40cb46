// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0
//
// Benchmark CLI: runs the 13-algorithm comparison on the built-in
// Nguyen-Dupuis network (or a network/instance JSON), emits per-run CSV rows
// plus a per-replicate improvement CSV, and can print the per-arc expansion
// table of a selected run.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rapd/bench.hpp"
#include "rapd/serialization.hpp"

namespace {

std::vector<int> parse_algorithms(const std::string& text) {
  std::vector<int> ids;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    const auto dash = piece.find('-');
    if (dash == std::string::npos) {
      ids.push_back(std::stoi(piece));
    } else {
      const int lo = std::stoi(piece.substr(0, dash));
      const int hi = std::stoi(piece.substr(dash + 1));
      for (int i = lo; i <= hi; ++i) ids.push_back(i);
    }
  }
  return ids;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized-activation primal-dual benchmark for stochastic "
               "arc-capacity expansion"};

  std::string instance_arg = "builtin:nguyen-dupuis";
  std::string algorithms_arg = "1-13";
  std::size_t replicates = 20;
  std::uint64_t seed = 7;
  double tol = 1e-10;
  std::uint64_t max_iters = 200000;
  std::string out_path;
  std::string dump_dir;
  std::size_t workers = 1;
  std::string report_arg;

  app.add_option("--instance", instance_arg,
                 "builtin:nguyen-dupuis or a network/instance JSON path");
  app.add_option("--algorithms", algorithms_arg,
                 "algorithm ids, e.g. 1-13 or 1,5,10");
  app.add_option("--replicates", replicates, "random instances per algorithm");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--tol", tol, "relative-error stopping tolerance");
  app.add_option("--max-iters", max_iters, "iteration cap per run");
  app.add_option("--out", out_path, "CSV output path");
  app.add_option("--dump-instance", dump_dir,
                 "directory for per-replicate instance JSON dumps");
  app.add_option("--workers", workers, "parallel (algorithm, replicate) runs");
  app.add_option("--report-solution", report_arg,
                 "print per-arc table for one run, format alg:replicate");

  CLI11_PARSE(app, argc, argv);

  try {
    rapd::bench::BenchConfig cfg;
    cfg.master_seed = seed;
    cfg.replicates = replicates;
    cfg.algorithms = parse_algorithms(algorithms_arg);
    cfg.tolerance = tol;
    cfg.max_iters = max_iters;
    cfg.workers = workers;

    if (instance_arg == "builtin:nguyen-dupuis") {
      cfg.network = rapd::build_nguyen_dupuis();
    } else {
      const rapd::json j = rapd::load_json(instance_arg);
      cfg.network = rapd::network_from_json(j);
      if (j.contains("num_scenarios")) {
        cfg.num_scenarios = j.at("num_scenarios").get<std::size_t>();
      }
      if (j.contains("scenarios") && !j.at("scenarios").empty() &&
          replicates == 1) {
        cfg.preset_instances.push_back(rapd::instance_from_json(j));
      }
    }

    const rapd::bench::BenchResult result = rapd::bench::run_benchmark(cfg);

    for (const auto& w : result.warnings) {
      std::cerr << "warning: " << w << "\n";
    }

    const std::string csv = rapd::bench::rows_to_csv(result.rows);
    if (out_path.empty()) {
      std::cout << csv;
    } else {
      write_file(out_path, csv);
      const std::filesystem::path p(out_path);
      const std::string imp_path =
          (p.parent_path() / (p.stem().string() + "_improvement.csv")).string();
      write_file(imp_path,
                 rapd::bench::improvements_to_csv(result.improvements));
      std::cout << "wrote " << out_path << " and " << imp_path << "\n";
    }

    if (!dump_dir.empty()) {
      std::filesystem::create_directories(dump_dir);
      for (std::size_t r = 0; r < result.instances.size(); ++r) {
        const std::string path =
            (std::filesystem::path(dump_dir) /
             ("instance_rep" + std::to_string(r) + ".json"))
                .string();
        rapd::save_json(rapd::instance_to_json(result.instances[r]), path);
      }
      std::cout << "dumped " << result.instances.size() << " instance files to "
                << dump_dir << "\n";
    }

    std::cout << "algorithm  class  l   mean_iters    mean_seconds  converged\n";
    for (const auto& s : result.summaries) {
      std::cout << std::left << std::setw(11) << s.algorithm << std::setw(7)
                << s.class_label << std::setw(4) << s.l << std::setw(14)
                << std::fixed << std::setprecision(1) << s.mean_iterations
                << std::setw(14) << std::setprecision(3) << s.mean_wall_seconds
                << s.converged << "/" << s.runs << "\n";
      std::cout.unsetf(std::ios::fixed);
    }

    if (!report_arg.empty()) {
      const auto colon = report_arg.find(':');
      if (colon == std::string::npos) {
        throw std::runtime_error("--report-solution expects alg:replicate");
      }
      const int alg = std::stoi(report_arg.substr(0, colon));
      const std::size_t rep = std::stoul(report_arg.substr(colon + 1));
      const rapd::bench::BenchRow* row = nullptr;
      const rapd::capexp::CapexRun* run = nullptr;
      for (std::size_t i = 0; i < result.rows.size(); ++i) {
        if (result.rows[i].algorithm == alg &&
            result.rows[i].replicate == rep) {
          row = &result.rows[i];
          run = &result.runs[i];
        }
      }
      if (run == nullptr) {
        throw std::runtime_error("--report-solution: run not in the grid");
      }
      if (row->status != rapd::SolveStatus::kConverged) {
        std::cerr << "warning: reported run did not converge\n";
      }
      const auto table = rapd::bench::report_solution(cfg.network, *run);
      std::cout << "\nper-arc solution for algorithm " << alg << ", replicate "
                << rep << "\n";
      std::cout << "arc   worst_excess     expansion  expanded\n";
      for (const auto& arc_row : table) {
        std::cout << std::left << std::setw(6) << arc_row.arc_id << std::right
                  << std::setw(12) << std::fixed << std::setprecision(2)
                  << arc_row.worst_excess << std::setw(14)
                  << arc_row.expansion << "  "
                  << (arc_row.expanded ? "yes" : "no") << "\n";
        std::cout.unsetf(std::ios::fixed);
      }
      if (!out_path.empty()) {
        rapd::json j;
        j["algorithm"] = alg;
        j["replicate"] = rep;
        j["objective"] = run->solution.objective;
        j["arcs"] = rapd::json::array();
        for (const auto& arc_row : table) {
          j["arcs"].push_back({{"arc", arc_row.arc_id},
                               {"worst_excess", arc_row.worst_excess},
                               {"x", arc_row.expansion},
                               {"expanded", arc_row.expanded}});
        }
        const std::filesystem::path p(out_path);
        const std::string sol_path =
            (p.parent_path() / (p.stem().string() + "_solution.json")).string();
        rapd::save_json(j, sol_path);
        std::cout << "wrote " << sol_path << "\n";
      }
    }

    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
