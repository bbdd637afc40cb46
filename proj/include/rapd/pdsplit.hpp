// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_PDSPLIT_HPP_
#define RAPD_PDSPLIT_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rapd/activation.hpp"
#include "rapd/linear_map.hpp"
#include "rapd/projections.hpp"
#include "rapd/vector_ops.hpp"

namespace rapd {

/// The four operator slots of the composite inclusion plus the activated
/// family. `resolvent_A` and `resolvent_Binv` receive the step size as their
/// first argument. `Dinv` may be left empty to encode the zero map
/// (delta = infinity, the plain optimization case).
struct ProblemSpec {
  std::function<RealVector(double, const RealVector&)> resolvent_A;
  std::function<RealVector(double, const RealVector&)> resolvent_Binv;
  std::function<RealVector(const RealVector&)> C;  // empty = zero map
  double mu = 1.0;                                 // cocoercivity of C
  std::function<RealVector(const RealVector&)> Dinv;  // empty = zero map
  double delta = std::numeric_limits<double>::infinity();
  LinearMap L;
  std::vector<AveragedMap> activated_maps;  // T_1..T_m; T_0 = identity
  std::size_t primal_dim = 0;
  std::size_t dual_dim = 0;
};

struct StepSizes {
  double tau = 0.0;
  double gamma = 0.0;
};

struct StepValidation {
  bool ok = false;
  double lhs = 0.0;    // norm_bound^2
  double rhs = 0.0;    // (1/gamma - 1/(2 delta)) (1/tau - 1/(2 mu))
  double slack = 0.0;  // rhs - lhs, positive when accepted
  std::string message;
};

/// Accepts step sizes iff tau in (0, 2 mu), gamma in (0, 2 delta) and
/// ||L||^2 < (1/gamma - 1/(2 delta)) (1/tau - 1/(2 mu)) strictly, with
/// norm_bound standing in for ||L||.
inline StepValidation validate_steps(const ProblemSpec& spec,
                                     const StepSizes& s) {
  StepValidation v;
  if (!(s.tau > 0.0) || !(s.gamma > 0.0)) {
    v.message = "step sizes must be positive";
    return v;
  }
  if (!(s.tau < 2.0 * spec.mu)) {
    v.message = "tau must lie strictly inside (0, 2 mu)";
    return v;
  }
  const double half_delta_inv =
      std::isinf(spec.delta) ? 0.0 : 1.0 / (2.0 * spec.delta);
  if (!std::isinf(spec.delta) && !(s.gamma < 2.0 * spec.delta)) {
    v.message = "gamma must lie strictly inside (0, 2 delta)";
    return v;
  }
  v.lhs = spec.L.norm_bound * spec.L.norm_bound;
  v.rhs = (1.0 / s.gamma - half_delta_inv) *
          (1.0 / s.tau - 1.0 / (2.0 * spec.mu));
  v.slack = v.rhs - v.lhs;
  v.ok = v.lhs < v.rhs;
  if (!v.ok) {
    v.message = "step-size condition violated; slack " + std::to_string(v.slack);
  }
  return v;
}

/// tau = mu, gamma at the fraction `safety` of the largest value the step
/// condition admits. When the condition is vacuous (L = 0 and delta
/// infinite) gamma falls back to the natural scale 1/(1/tau - 1/(2 mu)).
inline StepSizes default_steps(const ProblemSpec& spec, double safety) {
  if (!(safety > 0.0)) throw std::invalid_argument("default_steps: safety");
  safety = std::min(safety, 1.0 - 1e-6);
  StepSizes s;
  s.tau = spec.mu;
  const double excess = 1.0 / s.tau - 1.0 / (2.0 * spec.mu);
  const double half_delta_inv =
      std::isinf(spec.delta) ? 0.0 : 1.0 / (2.0 * spec.delta);
  const double denom =
      spec.L.norm_bound * spec.L.norm_bound / excess + half_delta_inv;
  s.gamma = denom > 0.0 ? safety / denom : 1.0 / excess;
  return s;
}

/// One primal-dual-extrapolation state. x_bar - x equals p^k - x^{k-1} by the
/// extrapolation rule, which the Fejer metric relies on.
struct IterationState {
  RealVector x;
  RealVector x_bar;
  RealVector u;
  RealVector p;
  std::uint64_t k = 0;
};

inline IterationState make_initial_state(RealVector x0, RealVector u0) {
  require_finite(x0, "make_initial_state");
  require_finite(u0, "make_initial_state");
  IterationState st;
  st.x_bar = x0;
  st.p = x0;
  st.x = std::move(x0);
  st.u = std::move(u0);
  st.k = 0;
  return st;
}

namespace detail {
/// The four update lines, with the activation supplied as a callable
/// (nullptr = identity). Kept as straight loops so a hand-rolled transcription
/// of the same formulas reproduces the iterates bit for bit.
inline IterationState iterate_with_map(
    const ProblemSpec& spec, const StepSizes& s, const IterationState& st,
    const std::function<RealVector(const RealVector&)>* map) {
  IterationState next;
  next.k = st.k + 1;

  // u^{k+1} = J_{gamma B^-1}(u^k + gamma (L xbar^k - D^-1 u^k))
  const RealVector lx = spec.L.forward(st.x_bar);
  RealVector dual_in(st.u.size());
  for (std::size_t i = 0; i < dual_in.size(); ++i) {
    dual_in[i] = st.u[i] + s.gamma * lx[i];
  }
  if (spec.Dinv) {
    const RealVector dv = spec.Dinv(st.u);
    for (std::size_t i = 0; i < dual_in.size(); ++i) {
      dual_in[i] -= s.gamma * dv[i];
    }
  }
  next.u = spec.resolvent_Binv(s.gamma, dual_in);

  // p^{k+1} = J_{tau A}(x^k - tau (L* u^{k+1} + C x^k))
  const RealVector lstar = spec.L.adjoint(next.u);
  RealVector primal_in(st.x.size());
  if (spec.C) {
    const RealVector grad = spec.C(st.x);
    for (std::size_t i = 0; i < primal_in.size(); ++i) {
      primal_in[i] = st.x[i] - s.tau * (lstar[i] + grad[i]);
    }
  } else {
    for (std::size_t i = 0; i < primal_in.size(); ++i) {
      primal_in[i] = st.x[i] - s.tau * lstar[i];
    }
  }
  next.p = spec.resolvent_A(s.tau, primal_in);

  // x^{k+1} = T p^{k+1};  xbar^{k+1} = x^{k+1} + p^{k+1} - x^k
  next.x = map ? (*map)(next.p) : next.p;
  next.x_bar.resize(next.x.size());
  for (std::size_t i = 0; i < next.x.size(); ++i) {
    next.x_bar[i] = next.x[i] + next.p[i] - st.x[i];
  }
  return next;
}
}  // namespace detail

/// Applies one iteration with operator index `idx` (0 = identity).
inline IterationState iterate_once(const ProblemSpec& spec, const StepSizes& s,
                                   const IterationState& st, int idx) {
  if (idx < 0 || idx > static_cast<int>(spec.activated_maps.size())) {
    throw std::invalid_argument("iterate_once: operator index out of range");
  }
  if (idx == 0) return detail::iterate_with_map(spec, s, st, nullptr);
  return detail::iterate_with_map(
      spec, s, st, &spec.activated_maps[static_cast<std::size_t>(idx - 1)].apply);
}

enum class SolveStatus { kConverged, kMaxIterations, kDiverged };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kMaxIterations: return "max_iterations";
    case SolveStatus::kDiverged: return "diverged";
  }
  return "unknown";
}

struct SolveReport {
  std::uint64_t iterations = 0;
  double wall_seconds = 0.0;
  double final_error = std::numeric_limits<double>::infinity();
  std::vector<double> error_trace;  // decimated past 1e5 iterations
  IterationState terminal;
  SolveStatus status = SolveStatus::kMaxIterations;
};

/// Relative step error over the primal and dual blocks,
/// sqrt((|dx|^2 + |du|^2) / (|x|^2 + |u|^2)); 0/0 counts as converged and
/// x/0 as +infinity.
inline double two_block_error(const IterationState& prev,
                              const IterationState& next) {
  const double num = dist_sq(next.x, prev.x) + dist_sq(next.u, prev.u);
  const double den = norm_sq(prev.x) + norm_sq(prev.u);
  if (den == 0.0) {
    return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::sqrt(num / den);
}

struct SolveOptions {
  std::function<double(const IterationState&, const IterationState&)> error_fn;
  bool full_trace = false;
  // Invoked after every accepted iteration; for diagnostics and tests.
  std::function<void(const IterationState&)> on_iterate;
};

/// Runs the randomized-activation iteration until the relative step error
/// drops below `tolerance`. The schedule must carry a validity certificate
/// (or be an acknowledged fixed selection); the run's random stream is seeded
/// from the schedule.
inline SolveReport solve(const ProblemSpec& spec, const StepSizes& steps,
                         const ActivationSchedule& schedule,
                         const IterationState& init, double tolerance,
                         std::uint64_t max_iters,
                         const SolveOptions& opts = {}) {
  const StepValidation sv = validate_steps(spec, steps);
  if (!sv.ok) throw std::invalid_argument("solve: " + sv.message);
  if (!schedule.block_sampler) {
    const ScheduleCertificate cert = validate_schedule(schedule);
    if (!cert.valid && !(cert.case_i_only && schedule.allow_case_i)) {
      throw std::invalid_argument("solve: invalid schedule: " + cert.message);
    }
    if (static_cast<std::size_t>(schedule.num_operators) !=
        spec.activated_maps.size()) {
      throw std::invalid_argument("solve: schedule/operator count mismatch");
    }
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("solve: tolerance");

  const auto error_fn = opts.error_fn ? opts.error_fn : two_block_error;
  SeededRng rng(schedule.seed);
  SolveReport report;
  report.error_trace.reserve(1024);

  const auto t0 = std::chrono::steady_clock::now();
  IterationState state = init;
  report.terminal = init;
  for (std::uint64_t k = 0; k < max_iters; ++k) {
    IterationState next;
    if (schedule.block_sampler) {
      const auto map = schedule.block_sampler(k, rng);
      next = detail::iterate_with_map(spec, steps, state, map ? &map : nullptr);
    } else {
      const int idx = next_index(schedule, k, rng);
      next = iterate_once(spec, steps, state, idx);
    }

    if (!all_finite(next.x) || !all_finite(next.u) || !all_finite(next.p)) {
      report.status = SolveStatus::kDiverged;
      report.iterations = k + 1;
      report.terminal = std::move(next);
      report.final_error = std::numeric_limits<double>::quiet_NaN();
      break;
    }

    const double e = error_fn(state, next);
    if (opts.full_trace || k < 100000 || k % 10 == 0) {
      report.error_trace.push_back(e);
    }
    state = std::move(next);
    if (opts.on_iterate) opts.on_iterate(state);

    if (e <= tolerance) {
      report.status = SolveStatus::kConverged;
      report.iterations = k + 1;
      report.final_error = e;
      report.terminal = std::move(state);
      break;
    }
    if (k + 1 == max_iters) {
      report.status = SolveStatus::kMaxIterations;
      report.iterations = max_iters;
      report.final_error = e;
      report.terminal = std::move(state);
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

/// Weighted norm from the convergence analysis,
/// |(x,u,p)|_V^2 = |x|^2/tau + |u|^2/gamma + 2<Lp,u> + (1/tau - 1/(2mu))|p|^2.
/// Positive definite exactly when the step-size condition holds.
struct FejerMetric {
  double tau = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  LinearMap L;

  bool positive_definite() const {
    return L.norm_bound * L.norm_bound <
           (1.0 / gamma) * (1.0 / tau - 1.0 / (2.0 * mu));
  }

  double norm_sq_v(const RealVector& x, const RealVector& u,
                   const RealVector& p) const {
    return rapd::norm_sq(x) / tau + rapd::norm_sq(u) / gamma +
           2.0 * dot(L.forward(p), u) +
           (1.0 / tau - 1.0 / (2.0 * mu)) * rapd::norm_sq(p);
  }
};

/// V-distance of the current state to the reference primal-dual pair, with
/// the extrapolation residual p^k - x^{k-1} = x_bar^k - x^k as third block.
inline double fejer_distance(const FejerMetric& metric,
                             const IterationState& st, const RealVector& x_ref,
                             const RealVector& u_ref) {
  if (!metric.positive_definite()) {
    throw std::domain_error("fejer_distance: metric is not positive definite");
  }
  const RealVector dx = diff(st.x, x_ref);
  const RealVector du = diff(st.u, u_ref);
  const RealVector dp = diff(st.x_bar, st.x);
  const double v = metric.norm_sq_v(dx, du, dp);
  return std::sqrt(std::max(v, 0.0));
}

}  // namespace rapd

#endif  // RAPD_PDSPLIT_HPP_
