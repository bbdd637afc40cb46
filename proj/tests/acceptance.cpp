// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0
//
// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rapd/bench.hpp"
#include "rapd/capexp.hpp"
#include "rapd/kaczmarz.hpp"
#include "rapd/network.hpp"
#include "test_instances.hpp"

namespace {

using rapd::Instance;
using rapd::RealVector;
using rapd::SeededRng;
namespace capexp = rapd::capexp;

int failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("criterion %02d [%s] %s%s%s\n", id, name.c_str(),
              pass ? "PASS" : "FAIL", detail.empty() ? "" : " — ",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Route-structure reproduction.
void criterion_route_structure() {
  const auto t0 = std::chrono::steady_clock::now();
  const rapd::Network net = rapd::build_nguyen_dupuis();
  const double elapsed = seconds_since(t0);
  const bool pass = net.routes[0].size() == 8 && net.routes[1].size() == 6 &&
                    net.routes[2].size() == 5 && net.routes[3].size() == 6 &&
                    net.num_routes() == 25 && elapsed < 1.0;
  report(1, "route-structure", pass,
         "|R12|=" + std::to_string(net.routes[0].size()) +
             " |R13|=" + std::to_string(net.routes[1].size()) +
             " |R42|=" + std::to_string(net.routes[2].size()) +
             " |R43|=" + std::to_string(net.routes[3].size()) +
             " |R|=" + std::to_string(net.num_routes()) + ", " +
             fmt(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// 2. Projection oracle suite: each projection against the active-set QP
// oracle on 1000 seeded random inputs, error <= 1e-9.
void criterion_projection_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  SeededRng rng(20260809);
  double worst = 0.0;

  auto rand_vec = [&](std::size_t n, double scale) {
    RealVector v(n);
    for (auto& x : v) x = scale * (2.0 * rng.uniform() - 1.0);
    return v;
  };

  for (int trial = 0; trial < 1000; ++trial) {
    // capped simplex, dim <= 6
    {
      const std::size_t n = 1 + rng.below(6);
      const RealVector v = rand_vec(n, 3.0);
      const double h = 4.0 * rng.uniform();
      worst = std::max(worst, rapd::dist(rapd::project_capped_simplex(v, h),
                                         oracle::project_capped_simplex(v, h)));
    }
    // box consensus
    {
      const std::size_t s = 1 + rng.below(3);
      const std::size_t dim = 1 + rng.below(2);
      RealVector upper(dim);
      for (auto& u : upper) u = 0.5 + 3.0 * rng.uniform();
      const RealVector x = rand_vec(s * dim, 5.0);
      worst = std::max(worst,
                       rapd::dist(rapd::project_box_consensus(x, s, upper),
                                  oracle::project_box_consensus(x, s, upper)));
    }
    // capacity pair
    {
      const double eta = 5.0 * (2.0 * rng.uniform() - 1.0);
      const double nu = 5.0 * (2.0 * rng.uniform() - 1.0);
      const double c = 3.0 * rng.uniform();
      const auto [pe, pn] = rapd::project_capacity_pair(eta, nu, c);
      const RealVector ref =
          oracle::project_halfspaces({{{-1.0, 1.0}, c}}, {eta, nu});
      worst = std::max({worst, std::abs(pe - ref[0]), std::abs(pn - ref[1])});
    }
    // halfspace
    {
      RealVector n = rand_vec(4, 2.0);
      if (rapd::norm(n) < 1e-3) n[0] += 1.0;
      const double b = 2.0 * rng.uniform() - 1.0;
      const RealVector z = rand_vec(4, 3.0);
      worst = std::max(
          worst, rapd::dist(rapd::project_halfspace(rapd::HalfSpace(n, b), z),
                            oracle::project_halfspaces({{n, b}}, z)));
    }
    // constraint block on the tiny instance (two entries, distinct scenarios)
    {
      static const Instance tiny = testing_instances::tiny_instance();
      static const capexp::CapexData d(tiny);
      capexp::ConstraintBlock block;
      block.entries = {{static_cast<int>(rng.below(2)), 0},
                       {static_cast<int>(rng.below(2)), 1}};
      const RealVector z = rand_vec(d.layout.primal_dim(), 6.0);
      std::vector<std::pair<RealVector, double>> constraints;
      for (const auto& [arc, scen] : block.entries) {
        RealVector normal(d.layout.primal_dim(), 0.0);
        normal[d.layout.x_at(static_cast<std::size_t>(scen),
                             static_cast<std::size_t>(arc))] = -1.0;
        for (int r : d.routes_through[static_cast<std::size_t>(arc)]) {
          normal[d.layout.f_at(static_cast<std::size_t>(scen),
                               static_cast<std::size_t>(r))] = 1.0;
        }
        constraints.emplace_back(std::move(normal), d.cap[scen][arc]);
      }
      worst = std::max(worst,
                       rapd::dist(capexp::project_block(d, block, z),
                                  oracle::project_halfspaces(constraints, z)));
    }
  }
  const double elapsed = seconds_since(t0);
  report(2, "projection-oracles", worst <= 1e-9 && elapsed < 30.0,
         "max error " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// 3. Gradient vs central finite differences on 50 random states.
void criterion_gradient_check(const Instance& inst) {
  const capexp::CapexData d(inst);
  SeededRng rng(424242);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    RealVector z(d.layout.primal_dim());
    for (auto& v : z) v = 100.0 * rng.uniform();
    const RealVector g = capexp::smooth_gradient(d, z);
    const RealVector fd = oracle::fd_gradient(
        [&](const RealVector& q) { return capexp::objective_value(d, q); }, z,
        1e-2);
    worst =
        std::max(worst, rapd::dist(g, fd) / std::max(1.0, rapd::norm(g)));
  }
  report(3, "gradient-check", worst <= 1e-6, "max rel error " + fmt(worst));
}

// ---------------------------------------------------------------------------
// 4. Baseline equivalence: solver Algorithm 1 vs a straight-line reference
// of the optimization routine, bit for bit over 50 iterations.
void criterion_baseline_equivalence(const Instance& inst) {
  const capexp::AssembledProblem ap = capexp::assemble_problem(inst);
  const capexp::CapexData& d = *ap.data;
  const capexp::Layout& L = d.layout;
  const double tau = ap.steps.tau;
  const double gamma = ap.steps.gamma;

  // Engine path: Algorithm 1 through solve() with the identity-only schedule.
  std::vector<rapd::IterationState> engine;
  rapd::SolveOptions opts;
  opts.error_fn = capexp::four_block_error(L);
  opts.on_iterate = [&](const rapd::IterationState& st) {
    engine.push_back(st);
  };
  const auto bs =
      capexp::make_blocks(inst, ap.data, capexp::SelectionClass::kNone, 1, {});
  rapd::ProblemSpec spec = ap.spec;
  spec.activated_maps = capexp::make_block_maps(ap.data, bs.blocks);
  rapd::solve(spec, ap.steps, bs.schedule, capexp::initial_state(d), 1e-300,
              50, opts);

  // Straight-line transcription of the same routine from the module's
  // primitive operations.
  rapd::IterationState ref = capexp::initial_state(d);
  double max_diff = engine.size() == 50 ? 0.0 : 1.0;
  for (int k = 0; k < 50 && max_diff == 0.0; ++k) {
    // dual half-step: w = u + gamma * L xbar
    RealVector lx(L.dual_dim());
    for (std::size_t s = 0; s < L.S; ++s) {
      for (std::size_t a = 0; a < L.A; ++a) {
        lx[L.u_at(s, a)] = ref.x_bar[L.x_at(s, a)];
      }
      const RealVector w = d.arc_flows(ref.x_bar, s);
      for (std::size_t a = 0; a < L.A; ++a) lx[L.v_at(s, a)] = w[a];
    }
    RealVector w(L.dual_dim());
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = ref.u[i] + gamma * lx[i];
    }
    // conjugate resolvent via the Moreau identity over capacity pairs
    RealVector q(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) q[i] = w[i] / gamma;
    RealVector proj(w.size());
    for (std::size_t s = 0; s < L.S; ++s) {
      for (std::size_t a = 0; a < L.A; ++a) {
        const auto [pe, pn] = rapd::project_capacity_pair(
            q[L.u_at(s, a)], q[L.v_at(s, a)], d.cap[s][a]);
        proj[L.u_at(s, a)] = pe;
        proj[L.v_at(s, a)] = pn;
      }
    }
    RealVector u1(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) u1[i] = w[i] - gamma * proj[i];
    // primal half-step: z = x - tau (L* u1 + grad)
    RealVector lstar(L.primal_dim(), 0.0);
    for (std::size_t s = 0; s < L.S; ++s) {
      for (std::size_t a = 0; a < L.A; ++a) {
        lstar[L.x_at(s, a)] = u1[L.u_at(s, a)];
      }
      for (std::size_t r = 0; r < L.R; ++r) {
        double sum = 0.0;
        for (int a : d.route_arcs[r]) {
          sum += u1[L.v_at(s, static_cast<std::size_t>(a))];
        }
        lstar[L.f_at(s, r)] = sum;
      }
    }
    const RealVector grad = capexp::smooth_gradient(d, ref.x);
    RealVector z(L.primal_dim());
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = ref.x[i] - tau * (lstar[i] + grad[i]);
    }
    // P_Lambda: consensus box on x, capped simplices on f
    RealVector xs(z.begin(), z.begin() + static_cast<long>(L.S * L.A));
    const RealVector xproj = rapd::project_box_consensus(xs, L.S, d.upper);
    RealVector p1(L.primal_dim());
    std::copy(xproj.begin(), xproj.end(), p1.begin());
    for (std::size_t s = 0; s < L.S; ++s) {
      for (std::size_t od = 0; od < L.OD; ++od) {
        const auto [off, cnt] = d.od_span[od];
        RealVector slice(cnt);
        for (std::size_t r = 0; r < cnt; ++r) slice[r] = z[L.f_at(s, off + r)];
        const RealVector pslice =
            rapd::project_capped_simplex(slice, d.dem[s][od]);
        for (std::size_t r = 0; r < cnt; ++r) {
          p1[L.f_at(s, off + r)] = pslice[r];
        }
      }
    }
    // no activation; extrapolate
    RealVector xbar1(L.primal_dim());
    for (std::size_t i = 0; i < xbar1.size(); ++i) {
      xbar1[i] = p1[i] + p1[i] - ref.x[i];
    }
    ref.u = u1;
    ref.p = p1;
    ref.x_bar = xbar1;
    ref.x = p1;

    const auto& eng = engine[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < L.primal_dim(); ++i) {
      max_diff = std::max(max_diff, std::abs(eng.x[i] - ref.x[i]));
    }
    for (std::size_t i = 0; i < L.dual_dim(); ++i) {
      max_diff = std::max(max_diff, std::abs(eng.u[i] - ref.u[i]));
    }
  }
  report(4, "baseline-equivalence", max_diff == 0.0,
         "max |engine - reference| = " + fmt(max_diff) + " over 50 iterations");
}

// ---------------------------------------------------------------------------
// 5. Desk-scale solver correctness: all 13 algorithms on the tiny instance
// against a projected-gradient oracle.
void criterion_tiny_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance tiny = testing_instances::tiny_instance();

  // Oracle: the single route pins f = h, so the primal reduces to the
  // consensus expansion inside [lower, M] with quadratic cost; projected
  // gradient to 1e-12.
  RealVector lower(2, 0.0);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t s = 0; s < 2; ++s) {
      lower[a] = std::max(lower[a], tiny.scenarios[s].demands[0] -
                                        tiny.scenarios[s].capacities[a]);
    }
  }
  RealVector xo{5.0, 5.0};
  for (int it = 0; it < 100000; ++it) {
    RealVector next(2);
    for (std::size_t a = 0; a < 2; ++a) {
      next[a] = std::clamp(xo[a] - 0.5 * xo[a], lower[a],
                           tiny.net.params[a].M);
    }
    const double step = rapd::dist(next, xo);
    xo = next;
    if (step <= 1e-12) break;
  }

  bool all_converged = true;
  double worst_primal = 0.0;
  std::vector<std::uint64_t> iters;
  for (int alg = 1; alg <= 13; ++alg) {
    const capexp::CapexRun run =
        capexp::solve_capexp(tiny, alg, 1000 + static_cast<std::uint64_t>(alg),
                             1e-10, 200000);
    iters.push_back(run.report.iterations);
    if (run.report.status != rapd::SolveStatus::kConverged) {
      all_converged = false;
      continue;
    }
    for (std::size_t a = 0; a < 2; ++a) {
      worst_primal =
          std::max(worst_primal, std::abs(run.solution.x_consensus[a] - xo[a]));
    }
    for (std::size_t s = 0; s < 2; ++s) {
      worst_primal = std::max(
          worst_primal,
          std::abs(run.solution.f[s] - tiny.scenarios[s].demands[0]));
    }
  }
  const double elapsed = seconds_since(t0);
  std::string iter_list;
  for (auto i : iters) iter_list += std::to_string(i) + " ";
  report(5, "desk-scale-oracle",
         all_converged && worst_primal <= 1e-5 && elapsed < 60.0,
         "max primal error " + fmt(worst_primal) + ", iterations: " +
             iter_list + ", " + fmt(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// 6/7/8 share full-scale runs.
struct FullScaleRuns {
  std::map<std::pair<int, int>, capexp::CapexRun> runs;  // (alg, replicate)
  std::vector<Instance> instances;
};

void criterion_full_scale(FullScaleRuns& fs) {
  const rapd::Network net = rapd::build_nguyen_dupuis();
  const std::uint64_t master = 1;
  for (int r = 0; r < 5; ++r) {
    fs.instances.push_back(rapd::generate_instance(net, 18, master + r));
  }

  // Criterion 6: all 13 algorithms on replicate 0.
  bool all_converged = true;
  double worst_feas = 0.0;
  std::string iter_list;
  for (int alg = 1; alg <= 13; ++alg) {
    const std::uint64_t seed = SeededRng::derive_seed(master, alg, 0);
    capexp::CapexRun run =
        capexp::solve_capexp(fs.instances[0], alg, seed, 1e-10, 200000);
    iter_list += std::to_string(run.report.iterations) + " ";
    if (run.report.status != rapd::SolveStatus::kConverged) {
      all_converged = false;
    }
    worst_feas = std::max({worst_feas, run.solution.demand_residual,
                           run.solution.capacity_residual,
                           run.solution.consensus_spread,
                           run.solution.box_violation});
    fs.runs[{alg, 0}] = std::move(run);
  }

  // Pairwise primal agreement on the components the objective pins uniquely:
  // the consensus expansion block and the per-scenario arc flows.
  double worst_pair = 0.0;
  const capexp::CapexData d0(fs.instances[0]);
  std::vector<RealVector> unique_parts;
  for (int alg = 1; alg <= 13; ++alg) {
    const auto& sol = fs.runs[{alg, 0}].solution;
    RealVector u = sol.x;
    for (std::size_t s = 0; s < d0.layout.S; ++s) {
      RealVector z(d0.layout.primal_dim(), 0.0);
      std::copy(sol.f.begin(), sol.f.end(),
                z.begin() + static_cast<long>(d0.layout.S * d0.layout.A));
      const RealVector w = d0.arc_flows(z, s);
      u.insert(u.end(), w.begin(), w.end());
    }
    unique_parts.push_back(std::move(u));
  }
  for (std::size_t i = 0; i < unique_parts.size(); ++i) {
    for (std::size_t j = i + 1; j < unique_parts.size(); ++j) {
      const double rel = rapd::dist(unique_parts[i], unique_parts[j]) /
                         std::max(1.0, rapd::norm(unique_parts[i]));
      worst_pair = std::max(worst_pair, rel);
    }
  }
  report(6, "full-scale-consistency",
         all_converged && worst_pair <= 1e-4 && worst_feas <= 1e-6,
         "pairwise " + fmt(worst_pair) + ", feasibility " + fmt(worst_feas) +
             ", iterations: " + iter_list);
}

void criterion_directional_improvement(FullScaleRuns& fs) {
  const std::uint64_t master = 1;
  for (int alg : {1, 10, 13}) {
    for (int r = 1; r < 5; ++r) {
      const std::uint64_t seed = SeededRng::derive_seed(
          master, static_cast<std::uint64_t>(alg), static_cast<std::uint64_t>(r));
      fs.runs[{alg, r}] = capexp::solve_capexp(fs.instances[static_cast<std::size_t>(r)],
                                               alg, seed, 1e-10, 200000);
    }
  }
  auto median_iters = [&](int alg) {
    std::vector<double> v;
    for (int r = 0; r < 5; ++r) {
      v.push_back(static_cast<double>(fs.runs[{alg, r}].report.iterations));
    }
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  const double base = median_iters(1);
  const double da = median_iters(10);
  const double rk = median_iters(13);
  const double imp_da = 100.0 * (base - da) / base;
  const double imp_rk = 100.0 * (base - rk) / base;
  report(7, "directional-improvement", imp_da >= 10.0 && imp_rk >= 10.0,
         "median iterations: alg1 " + fmt(base) + ", alg10 " + fmt(da) + " (" +
             fmt(imp_da) + "%), alg13 " + fmt(rk) + " (" + fmt(imp_rk) + "%)");
}

void criterion_complementarity(const FullScaleRuns& fs) {
  double worst_gap = 0.0;
  bool sets_match = true;
  int audited = 0;
  for (const auto& [key, run] : fs.runs) {
    if (run.report.status != rapd::SolveStatus::kConverged) continue;
    ++audited;
    const auto& sol = run.solution;
    for (std::size_t a = 0; a < sol.x_consensus.size(); ++a) {
      const double excess = sol.worst_excess[a];
      const double x = sol.x_consensus[a];
      worst_gap = std::max(worst_gap, std::abs(x - std::max(0.0, excess)));
      if (excess > 1e-3 && x <= 1e-3) sets_match = false;
      if (excess < -1e-3 && x > 1e-3) sets_match = false;
    }
  }
  report(8, "expansion-excess-complementarity",
         worst_gap <= 1e-3 && sets_match && audited > 0,
         "max |x - positive excess| = " + fmt(worst_gap) + " over " +
             std::to_string(audited) + " converged runs");
}

// ---------------------------------------------------------------------------
// 9. Kaczmarz: randomized residual decay and exact agreement of the cyclic
// method with the splitting reduction.
void criterion_kaczmarz() {
  std::vector<double> residuals;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SeededRng rng(seed);
    rapd::LinearSystem sys;
    RealVector x_true(20);
    for (auto& v : x_true) v = 2.0 * rng.uniform() - 1.0;
    for (int i = 0; i < 50; ++i) {
      RealVector row(20);
      for (auto& v : row) v = 2.0 * rng.uniform() - 1.0;
      sys.rhs.push_back(rapd::dot(row, x_true));
      sys.rows.push_back(std::move(row));
    }
    SeededRng step_rng(seed + 1000);
    const RealVector x =
        rapd::kaczmarz_randomized(sys, RealVector(20, 0.0), 5000, step_rng);
    double r2 = 0.0;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
      const double r = rapd::dot(sys.rows[i], x) - sys.rhs[i];
      r2 += r * r;
    }
    residuals.push_back(std::sqrt(r2));
  }
  std::sort(residuals.begin(), residuals.end());
  const double median = residuals[residuals.size() / 2];

  // Cyclic Kaczmarz vs the inert-operator splitting with a deterministic
  // alternating schedule over the row hyperplanes.
  rapd::LinearSystem sys;
  sys.rows = {{1, 2}, {1, -1}, {2, 1}};
  const RealVector x_true{0.8, 1.3};
  for (const auto& row : sys.rows) sys.rhs.push_back(rapd::dot(row, x_true));

  rapd::ProblemSpec spec;
  spec.primal_dim = 2;
  spec.dual_dim = 1;
  spec.resolvent_A = [](double, const RealVector& z) { return z; };
  spec.resolvent_Binv = [](double, const RealVector& w) {
    return rapd::zeros(w.size());
  };
  spec.mu = 1.0;
  spec.L = rapd::make_zero_map(2, 1);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const RealVector row = sys.rows[i];
    const double b = sys.rhs[i];
    spec.activated_maps.push_back(rapd::AveragedMap{
        [row, b](const RealVector& z) {
          return rapd::project_hyperplane(row, b, z);
        },
        0.5});
  }
  rapd::ActivationSchedule sched;
  sched.kind = rapd::ScheduleKind::kDeterministicAlternating;
  sched.num_operators = 3;
  std::vector<RealVector> split_states;
  rapd::SolveOptions opts;
  opts.on_iterate = [&](const rapd::IterationState& st) {
    split_states.push_back(st.x);
  };
  rapd::solve(spec, {1.0, 1.0}, sched,
              rapd::make_initial_state({0.0, 0.0}, {0.0}), 1e-300, 15, opts);
  std::vector<RealVector> kz_states;
  rapd::kaczmarz_cyclic(sys, {0.0, 0.0}, 5, -1.0,
                        [&](std::uint64_t, const RealVector& x) {
                          kz_states.push_back(x);
                        });
  double max_dev = split_states.size() == 15 && kz_states.size() == 15
                       ? 0.0
                       : 1.0;
  for (std::size_t k = 0; k < split_states.size() && max_dev <= 1e-12; ++k) {
    max_dev = std::max(max_dev, rapd::dist(split_states[k], kz_states[k]));
  }
  report(9, "kaczmarz", median < 1e-8 && max_dev <= 1e-12,
         "median residual " + fmt(median) + ", reduction deviation " +
             fmt(max_dev));
}

// ---------------------------------------------------------------------------
// 10. Fejer diagnostic on the tiny instance with the analytic reference.
void criterion_fejer() {
  const Instance tiny = testing_instances::tiny_instance();
  const capexp::AssembledProblem ap = capexp::assemble_problem(tiny);
  const capexp::CapexData& d = *ap.data;
  const capexp::Layout& L = d.layout;

  // Analytic primal-dual solution: x* = worst excess (active only in
  // scenario 0), f* = demands, multipliers on the active pairs.
  RealVector x_ref(L.primal_dim(), 0.0);
  const RealVector xbar{1.0, 0.5};
  for (std::size_t s = 0; s < L.S; ++s) {
    for (std::size_t a = 0; a < L.A; ++a) x_ref[L.x_at(s, a)] = xbar[a];
    x_ref[L.f_at(s, 0)] = d.dem[s][0];
  }
  RealVector u_ref(L.dual_dim(), 0.0);
  for (std::size_t a = 0; a < L.A; ++a) {
    u_ref[L.u_at(0, a)] = -xbar[a];
    u_ref[L.v_at(0, a)] = xbar[a];
  }

  rapd::FejerMetric metric;
  metric.tau = ap.steps.tau;
  metric.gamma = ap.steps.gamma;
  metric.mu = ap.spec.mu;
  metric.L = ap.spec.L;

  bool monotone = true;
  double worst_rise = 0.0;
  for (int alg : {1, 2, 3, 4, 8, 9, 10}) {  // deterministic schedules
    const capexp::SelectionClass cls = capexp::algorithm_class(alg);
    const std::size_t le =
        capexp::effective_block_size(cls, capexp::algorithm_block_size(alg), L.S);
    capexp::BlockParams params;
    auto bs = cls == capexp::SelectionClass::kNone
                  ? capexp::make_blocks(tiny, ap.data, cls, 1, params)
                  : capexp::make_blocks(tiny, ap.data, cls, le, params);
    rapd::ProblemSpec spec = ap.spec;
    spec.activated_maps = capexp::make_block_maps(ap.data, bs.blocks);
    double prev = std::numeric_limits<double>::infinity();
    rapd::SolveOptions opts;
    opts.error_fn = capexp::four_block_error(L);
    opts.on_iterate = [&](const rapd::IterationState& st) {
      const double dist = rapd::fejer_distance(metric, st, x_ref, u_ref);
      if (dist > prev + 1e-10) {
        monotone = false;
        worst_rise = std::max(worst_rise, dist - prev);
      }
      prev = dist;
    };
    rapd::solve(spec, ap.steps, bs.schedule, capexp::initial_state(d), 1e-300,
                1000, opts);
  }
  report(10, "fejer-monotonicity", monotone,
         monotone ? "nonincreasing over 1000 iterations for 7 schedules"
                  : "rise " + fmt(worst_rise));
}

// ---------------------------------------------------------------------------
// 11. Determinism of the benchmark pipeline.
void criterion_determinism() {
  rapd::bench::BenchConfig cfg;
  cfg.network = rapd::build_nguyen_dupuis();
  cfg.num_scenarios = 18;
  cfg.master_seed = 7;
  cfg.replicates = 2;
  cfg.algorithms = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  cfg.tolerance = 1e-10;
  cfg.max_iters = 200000;
  cfg.workers = 2;
  const auto a = rapd::bench::run_benchmark(cfg);
  const auto b = rapd::bench::run_benchmark(cfg);
  bool same = a.rows.size() == b.rows.size();
  for (std::size_t i = 0; same && i < a.rows.size(); ++i) {
    same = a.rows[i].algorithm == b.rows[i].algorithm &&
           a.rows[i].replicate == b.rows[i].replicate &&
           a.rows[i].iterations == b.rows[i].iterations;
  }
  report(11, "benchmark-determinism", same,
         std::to_string(a.rows.size()) + " rows compared across two runs");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_route_structure();
  criterion_projection_oracles();

  const rapd::Network net = rapd::build_nguyen_dupuis();
  const Instance inst1 = rapd::generate_instance(net, 18, 1);
  criterion_gradient_check(inst1);
  criterion_baseline_equivalence(inst1);
  criterion_tiny_oracle();

  FullScaleRuns fs;
  criterion_full_scale(fs);
  criterion_directional_improvement(fs);
  criterion_complementarity(fs);
  criterion_kaczmarz();
  criterion_fejer();
  criterion_determinism();

  std::printf("acceptance: %d criterion(s) failed, total %.1f s\n", failures,
              seconds_since(t0));
  return failures;
}
