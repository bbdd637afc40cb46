// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_CAPEXP_HPP_
#define RAPD_CAPEXP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rapd/instance.hpp"
#include "rapd/pdsplit.hpp"
#include "rapd/projections.hpp"

namespace rapd::capexp {

/// Flat layout of the solver vectors. Primal = [x | f], dual = [u | v]; all
/// blocks are scenario-major.
struct Layout {
  std::size_t A = 0;   // arcs
  std::size_t R = 0;   // routes
  std::size_t S = 0;   // scenarios
  std::size_t OD = 0;  // od pairs

  std::size_t primal_dim() const { return S * A + S * R; }
  std::size_t dual_dim() const { return 2 * S * A; }
  std::size_t x_at(std::size_t s, std::size_t a) const { return s * A + a; }
  std::size_t f_at(std::size_t s, std::size_t r) const {
    return S * A + s * R + r;
  }
  std::size_t u_at(std::size_t s, std::size_t a) const { return s * A + a; }
  std::size_t v_at(std::size_t s, std::size_t a) const {
    return S * A + s * A + a;
  }
};

/// Numeric tables extracted from an Instance, shared read-only by the
/// operator closures.
struct CapexData {
  Layout layout;
  std::vector<std::vector<int>> routes_through;  // arc -> flat route indices
  std::vector<std::vector<int>> route_arcs;      // flat route -> arc indices
  std::vector<std::pair<std::size_t, std::size_t>> od_span;  // offset, count
  std::vector<RealVector> cap;  // [scenario][arc]
  std::vector<RealVector> dem;  // [scenario][od]
  RealVector prob;
  RealVector eta, cong, upper;
  DenseMatrix Q;
  bool q_is_identity = true;
  double norm_N = 0.0;
  double norm_Q = 0.0;

  explicit CapexData(const Instance& inst) {
    inst.validate();
    const Network& net = inst.net;
    layout.A = net.num_arcs();
    layout.R = net.num_routes();
    layout.S = inst.num_scenarios();
    layout.OD = net.od_pairs.size();

    routes_through.assign(layout.A, {});
    std::size_t flat = 0;
    for (std::size_t od = 0; od < net.routes.size(); ++od) {
      od_span.emplace_back(flat, net.routes[od].size());
      for (const auto& route : net.routes[od]) {
        route_arcs.push_back(route);
        for (int a : route) {
          routes_through[static_cast<std::size_t>(a)].push_back(
              static_cast<int>(flat));
        }
        ++flat;
      }
    }

    for (const auto& sc : inst.scenarios) {
      cap.push_back(sc.capacities);
      dem.push_back(sc.demands);
      prob.push_back(sc.probability);
    }
    for (const auto& p : net.params) {
      eta.push_back(p.eta);
      cong.push_back(p.cong);
      upper.push_back(p.M);
    }
    Q = inst.Q;
    const DenseMatrix id = DenseMatrix::identity(layout.A);
    q_is_identity = Q.data == id.data;
    norm_N = estimate_operator_norm(net.incidence, 1e-8);
    norm_Q = q_is_identity ? 1.0 : estimate_operator_norm(Q, 1e-8);
  }

  /// Arc flows (N f_s) of one scenario.
  RealVector arc_flows(const RealVector& z, std::size_t s) const {
    RealVector w(layout.A, 0.0);
    for (std::size_t a = 0; a < layout.A; ++a) {
      double sum = 0.0;
      for (int r : routes_through[a]) {
        sum += z[layout.f_at(s, static_cast<std::size_t>(r))];
      }
      w[a] = sum;
    }
    return w;
  }
};

/// Gradient of the smooth term: per scenario, p * Q x on the expansion block
/// and p * N^T t(N f) on the flow block, with affine travel times
/// t_a(w) = eta_a + cong_a w / c_a.
inline RealVector smooth_gradient(const CapexData& d, const RealVector& z) {
  const Layout& L = d.layout;
  if (z.size() != L.primal_dim()) {
    throw std::invalid_argument("smooth_gradient: dimension");
  }
  RealVector g(L.primal_dim(), 0.0);
  for (std::size_t s = 0; s < L.S; ++s) {
    const double p = d.prob[s];
    if (d.q_is_identity) {
      for (std::size_t a = 0; a < L.A; ++a) {
        g[L.x_at(s, a)] = p * z[L.x_at(s, a)];
      }
    } else {
      RealVector xs(L.A);
      for (std::size_t a = 0; a < L.A; ++a) xs[a] = z[L.x_at(s, a)];
      const RealVector qx = d.Q.apply(xs);
      for (std::size_t a = 0; a < L.A; ++a) g[L.x_at(s, a)] = p * qx[a];
    }
    const RealVector w = d.arc_flows(z, s);
    RealVector t(L.A);
    for (std::size_t a = 0; a < L.A; ++a) {
      t[a] = d.eta[a] + d.cong[a] * w[a] / d.cap[s][a];
    }
    for (std::size_t r = 0; r < L.R; ++r) {
      double sum = 0.0;
      for (int a : d.route_arcs[r]) sum += t[static_cast<std::size_t>(a)];
      g[L.f_at(s, r)] = p * sum;
    }
  }
  return g;
}

/// Closed-form objective: expected congestion integral plus quadratic
/// expansion cost.
inline double objective_value(const CapexData& d, const RealVector& z) {
  const Layout& L = d.layout;
  double total = 0.0;
  for (std::size_t s = 0; s < L.S; ++s) {
    const RealVector w = d.arc_flows(z, s);
    double term = 0.0;
    for (std::size_t a = 0; a < L.A; ++a) {
      term += d.eta[a] * w[a] + d.cong[a] * w[a] * w[a] / (2.0 * d.cap[s][a]);
    }
    RealVector xs(L.A);
    for (std::size_t a = 0; a < L.A; ++a) xs[a] = z[L.x_at(s, a)];
    const RealVector qx = d.q_is_identity ? xs : d.Q.apply(xs);
    term += 0.5 * dot(xs, qx);
    total += d.prob[s] * term;
  }
  return total;
}

/// Lipschitz constant of the smooth gradient,
/// mu^{-1} = max_s p_s max{ |Q|, |N|^2 max_a cong_a / c_{a,s} }.
inline double lipschitz_constant(const CapexData& d) {
  double worst = 0.0;
  for (std::size_t s = 0; s < d.layout.S; ++s) {
    double beta_max = 0.0;
    for (std::size_t a = 0; a < d.layout.A; ++a) {
      beta_max = std::max(beta_max, d.cong[a] / d.cap[s][a]);
    }
    worst = std::max(
        worst, d.prob[s] * std::max(d.norm_Q, d.norm_N * d.norm_N * beta_max));
  }
  return worst;
}

/// A selection of capacity constraints (arc, scenario) with pairwise distinct
/// scenarios; its projection is the composition of the per-entry halfspace
/// projections.
struct ConstraintBlock {
  std::vector<std::pair<int, int>> entries;  // (arc index, scenario index)
};

/// Sequential halfspace projections for one block. Entries touch disjoint
/// scenario coordinates, so the order does not matter.
inline RealVector project_block(const CapexData& d, const ConstraintBlock& b,
                                RealVector z) {
  const Layout& L = d.layout;
  for (const auto& [arc, scen] : b.entries) {
    const auto a = static_cast<std::size_t>(arc);
    const auto s = static_cast<std::size_t>(scen);
    double flow = 0.0;
    for (int r : d.routes_through[a]) {
      flow += z[L.f_at(s, static_cast<std::size_t>(r))];
    }
    const double slack = flow - z[L.x_at(s, a)] - d.cap[s][a];
    if (slack > 0.0) {
      const double denom = 1.0 + static_cast<double>(d.routes_through[a].size());
      const double step = slack / denom;
      z[L.x_at(s, a)] += step;
      for (int r : d.routes_through[a]) {
        z[L.f_at(s, static_cast<std::size_t>(r))] -= step;
      }
    }
  }
  return z;
}

enum class SelectionClass { kNone, kFixed, kBernoulliAlternating,
                            kDeterministicAlternating, kRandomKaczmarz };

inline const char* class_label(SelectionClass c) {
  switch (c) {
    case SelectionClass::kNone: return "none";
    case SelectionClass::kFixed: return "F";
    case SelectionClass::kBernoulliAlternating: return "BA";
    case SelectionClass::kDeterministicAlternating: return "DA";
    case SelectionClass::kRandomKaczmarz: return "RK";
  }
  return "?";
}

struct BlockParams {
  int fixed_arc_id = 16;     // fixed-selection arc; falls back to the
                             // smallest-base-capacity arc when absent
  double bernoulli_q = 0.5;
  std::uint64_t seed = 0;
};

struct BlockSet {
  std::vector<ConstraintBlock> blocks;
  ActivationSchedule schedule;
};

/// Builds the constraint-block family and its activation schedule for one
/// selection class at block size l.
///   F  : one fixed block on the chosen arc over the first l scenarios.
///   BA : same-arc blocks over consecutive scenario groups, arc-major cycle,
///        gated per iteration by a Bernoulli(q) coin.
///   DA : the BA family, always active.
///   RK : uniform constructive sampling of l (arc, scenario) entries with
///        distinct scenarios.
inline BlockSet make_blocks(const Instance& inst,
                            const std::shared_ptr<const CapexData>& data,
                            SelectionClass cls, std::size_t l,
                            const BlockParams& params) {
  const std::size_t S = data->layout.S;
  const std::size_t A = data->layout.A;
  if (l < 1 || l > S) throw std::invalid_argument("make_blocks: l out of range");

  BlockSet out;
  out.schedule.seed = params.seed;
  switch (cls) {
    case SelectionClass::kNone: {
      out.schedule.kind = ScheduleKind::kFixed;
      out.schedule.fixed_index = 0;
      out.schedule.num_operators = 0;
      return out;
    }
    case SelectionClass::kFixed: {
      int arc = inst.net.arc_index(params.fixed_arc_id);
      if (arc < 0) {
        std::size_t best = 0;
        for (std::size_t a = 1; a < A; ++a) {
          if (inst.net.params[a].c < inst.net.params[best].c) best = a;
        }
        arc = static_cast<int>(best);
      }
      ConstraintBlock b;
      for (std::size_t j = 0; j < l; ++j) {
        b.entries.emplace_back(arc, static_cast<int>(j));
      }
      out.blocks.push_back(std::move(b));
      out.schedule.kind = ScheduleKind::kFixed;
      out.schedule.fixed_index = 1;
      out.schedule.num_operators = 1;
      out.schedule.allow_case_i = true;
      return out;
    }
    case SelectionClass::kBernoulliAlternating:
    case SelectionClass::kDeterministicAlternating: {
      if (S % l != 0) {
        throw std::invalid_argument(
            "make_blocks: block size must divide the scenario count");
      }
      const std::size_t groups = S / l;
      for (std::size_t a = 0; a < A; ++a) {
        for (std::size_t g = 0; g < groups; ++g) {
          ConstraintBlock b;
          for (std::size_t j = 0; j < l; ++j) {
            b.entries.emplace_back(static_cast<int>(a),
                                   static_cast<int>(g * l + j));
          }
          out.blocks.push_back(std::move(b));
        }
      }
      out.schedule.num_operators = static_cast<int>(out.blocks.size());
      if (cls == SelectionClass::kBernoulliAlternating) {
        out.schedule.kind = ScheduleKind::kBernoulliAlternating;
        out.schedule.bernoulli_q = params.bernoulli_q;
      } else {
        out.schedule.kind = ScheduleKind::kDeterministicAlternating;
      }
      return out;
    }
    case SelectionClass::kRandomKaczmarz: {
      out.schedule.kind = ScheduleKind::kRandomizedUniform;
      // |A|^l * S (S-1) ... (S-l+1), the family the sampler draws from.
      double family = std::pow(static_cast<double>(A), static_cast<double>(l));
      for (std::size_t j = 0; j < l; ++j) {
        family *= static_cast<double>(S - j);
      }
      out.schedule.family_size = family;
      out.schedule.num_operators = 0;
      auto d = data;
      const std::size_t block_len = l;
      out.schedule.block_sampler =
          [d, block_len, A, S](std::uint64_t, SeededRng& rng)
          -> std::function<RealVector(const RealVector&)> {
        ConstraintBlock b;
        b.entries.reserve(block_len);
        std::vector<int> scen(S);
        std::iota(scen.begin(), scen.end(), 0);
        for (std::size_t j = 0; j < block_len; ++j) {
          const auto arc = static_cast<int>(rng.below(A));
          const std::size_t pick =
              j + static_cast<std::size_t>(rng.below(S - j));
          std::swap(scen[j], scen[pick]);
          b.entries.emplace_back(arc, scen[j]);
        }
        return [d, b = std::move(b)](const RealVector& z) {
          return project_block(*d, b, z);
        };
      };
      return out;
    }
  }
  throw std::invalid_argument("make_blocks: unknown class");
}

inline std::vector<AveragedMap> make_block_maps(
    const std::shared_ptr<const CapexData>& data,
    const std::vector<ConstraintBlock>& blocks) {
  std::vector<AveragedMap> maps;
  maps.reserve(blocks.size());
  for (const auto& b : blocks) {
    maps.push_back(AveragedMap{
        [data, b](const RealVector& z) { return project_block(*data, b, z); },
        0.5});
  }
  return maps;
}

struct AssembledProblem {
  std::shared_ptr<const CapexData> data;
  ProblemSpec spec;
  StepSizes steps;
};

/// Wires the problem into the generic solver slots: P_Lambda as J_{tau A}
/// (consensus box on x, capped simplices on f), the conjugate resolvent via
/// the Moreau identity over per-(arc, scenario) capacity-pair projections,
/// the smooth gradient as C, and the scenario-wise coupling (x, f) ->
/// (x, N f) as L with |L| <= max{1, |N|}.
inline AssembledProblem assemble_problem(const Instance& inst,
                                         double safety = 0.99) {
  AssembledProblem ap;
  ap.data = std::make_shared<const CapexData>(inst);
  const auto d = ap.data;
  const Layout L = d->layout;

  ap.spec.primal_dim = L.primal_dim();
  ap.spec.dual_dim = L.dual_dim();

  ap.spec.resolvent_A = [d](double, const RealVector& z) {
    const Layout& lay = d->layout;
    RealVector xs(z.begin(), z.begin() + static_cast<long>(lay.S * lay.A));
    const RealVector xproj = project_box_consensus(xs, lay.S, d->upper);
    RealVector out(z.size());
    std::copy(xproj.begin(), xproj.end(), out.begin());
    for (std::size_t s = 0; s < lay.S; ++s) {
      for (std::size_t od = 0; od < lay.OD; ++od) {
        const auto [off, cnt] = d->od_span[od];
        RealVector slice(cnt);
        for (std::size_t r = 0; r < cnt; ++r) {
          slice[r] = z[lay.f_at(s, off + r)];
        }
        const RealVector proj = project_capped_simplex(slice, d->dem[s][od]);
        for (std::size_t r = 0; r < cnt; ++r) {
          out[lay.f_at(s, off + r)] = proj[r];
        }
      }
    }
    return out;
  };

  auto pair_projection = [d](const RealVector& q) {
    const Layout& lay = d->layout;
    RealVector out(q.size());
    for (std::size_t s = 0; s < lay.S; ++s) {
      for (std::size_t a = 0; a < lay.A; ++a) {
        const auto [pe, pn] = project_capacity_pair(
            q[lay.u_at(s, a)], q[lay.v_at(s, a)], d->cap[s][a]);
        out[lay.u_at(s, a)] = pe;
        out[lay.v_at(s, a)] = pn;
      }
    }
    return out;
  };
  ap.spec.resolvent_Binv = [pair_projection](double gamma, const RealVector& w) {
    return moreau_dual_prox(pair_projection, gamma, w);
  };

  ap.spec.C = [d](const RealVector& z) { return smooth_gradient(*d, z); };
  ap.spec.mu = 1.0 / lipschitz_constant(*d);

  LinearMap map;
  map.dim_in = L.primal_dim();
  map.dim_out = L.dual_dim();
  map.norm_bound = std::max(1.0, d->norm_N);
  map.forward = [d](const RealVector& z) {
    const Layout& lay = d->layout;
    RealVector y(lay.dual_dim());
    for (std::size_t s = 0; s < lay.S; ++s) {
      for (std::size_t a = 0; a < lay.A; ++a) {
        y[lay.u_at(s, a)] = z[lay.x_at(s, a)];
      }
      const RealVector w = d->arc_flows(z, s);
      for (std::size_t a = 0; a < lay.A; ++a) y[lay.v_at(s, a)] = w[a];
    }
    return y;
  };
  map.adjoint = [d](const RealVector& y) {
    const Layout& lay = d->layout;
    RealVector z(lay.primal_dim(), 0.0);
    for (std::size_t s = 0; s < lay.S; ++s) {
      for (std::size_t a = 0; a < lay.A; ++a) {
        z[lay.x_at(s, a)] = y[lay.u_at(s, a)];
      }
      for (std::size_t r = 0; r < lay.R; ++r) {
        double sum = 0.0;
        for (int a : d->route_arcs[r]) {
          sum += y[lay.v_at(s, static_cast<std::size_t>(a))];
        }
        z[lay.f_at(s, r)] = sum;
      }
    }
    return z;
  };
  ap.spec.L = std::move(map);

  // tau = mu starves the dual block on this problem family; mu/40 balances
  // the two, with gamma at the fraction `safety` of the step-size bound.
  ap.steps.tau = ap.spec.mu / 40.0;
  const double excess = 1.0 / ap.steps.tau - 1.0 / (2.0 * ap.spec.mu);
  ap.steps.gamma = std::min(safety, 1.0 - 1e-6) * excess /
                   (ap.spec.L.norm_bound * ap.spec.L.norm_bound);
  return ap;
}

/// x0 = 0, f0 spreads each demand uniformly over its routes, u0 = v0 = 0.
inline IterationState initial_state(const CapexData& d) {
  const Layout& L = d.layout;
  RealVector x0(L.primal_dim(), 0.0);
  for (std::size_t s = 0; s < L.S; ++s) {
    for (std::size_t od = 0; od < L.OD; ++od) {
      const auto [off, cnt] = d.od_span[od];
      const double share = d.dem[s][od] / static_cast<double>(cnt);
      for (std::size_t r = 0; r < cnt; ++r) x0[L.f_at(s, off + r)] = share;
    }
  }
  return make_initial_state(std::move(x0), zeros(L.dual_dim()));
}

/// Relative step error over the four blocks x, f, u, v.
inline std::function<double(const IterationState&, const IterationState&)>
four_block_error(const Layout& lay) {
  return [lay](const IterationState& prev, const IterationState& next) {
    const std::size_t xa = lay.S * lay.A;
    double num = 0.0;
    double den = 0.0;
    auto accumulate = [&](const RealVector& a, const RealVector& b,
                          std::size_t begin, std::size_t end) {
      double n = 0.0;
      double dd = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        const double delta = b[i] - a[i];
        n += delta * delta;
        dd += a[i] * a[i];
      }
      num += n;
      den += dd;
    };
    accumulate(prev.x, next.x, 0, xa);                    // x block
    accumulate(prev.x, next.x, xa, lay.primal_dim());     // f block
    accumulate(prev.u, next.u, 0, xa);                    // u block
    accumulate(prev.u, next.u, xa, lay.dual_dim());       // v block
    if (den == 0.0) {
      return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::sqrt(num / den);
  };
}

/// Table of the thirteen benchmark algorithms: class and nominal block size.
inline SelectionClass algorithm_class(int id) {
  if (id == 1) return SelectionClass::kNone;
  if (id >= 2 && id <= 4) return SelectionClass::kFixed;
  if (id >= 5 && id <= 7) return SelectionClass::kBernoulliAlternating;
  if (id >= 8 && id <= 10) return SelectionClass::kDeterministicAlternating;
  if (id >= 11 && id <= 13) return SelectionClass::kRandomKaczmarz;
  throw std::invalid_argument("algorithm id must lie in 1..13");
}

inline int algorithm_block_size(int id) {
  if (id == 1) return 0;
  static const int grid[3] = {1, 9, 18};
  return grid[(id - 2) % 3];
}

/// Nominal block sizes come from the 18-scenario benchmark grid; on other
/// instances they are clamped to the scenario count (and, for the
/// alternating classes, to the largest divisor of it).
inline std::size_t effective_block_size(SelectionClass cls, int nominal,
                                        std::size_t num_scenarios) {
  if (cls == SelectionClass::kNone) return 0;
  std::size_t l = std::min<std::size_t>(static_cast<std::size_t>(nominal),
                                        num_scenarios);
  if (cls == SelectionClass::kBernoulliAlternating ||
      cls == SelectionClass::kDeterministicAlternating) {
    while (l > 1 && num_scenarios % l != 0) --l;
  }
  return l;
}

struct CapexSolution {
  RealVector x;             // S x A, scenario-major
  RealVector f;             // S x R, scenario-major
  RealVector x_consensus;   // per arc
  RealVector worst_excess;  // per arc: max_s (N f_s)_a - c_{a,s}
  double objective = 0.0;
  double demand_residual = 0.0;    // max |sum_r f - h|
  double capacity_residual = 0.0;  // max positive part of (N f)_a - x_a - c
  double consensus_spread = 0.0;   // max_a max_s |x_{a,s} - mean|
  double box_violation = 0.0;      // max violation of 0 <= x <= M
};

struct CapexRun {
  int algorithm_id = 0;
  std::string label;
  int l_nominal = 0;
  std::size_t l_effective = 0;
  SolveReport report;
  CapexSolution solution;
};

/// Extracts the reported solution from the terminal pre-activation iterate
/// p (the output of P_Lambda, which satisfies demand, box, and consensus by
/// construction) and audits feasibility.
inline CapexSolution extract_solution(const CapexData& d,
                                      const IterationState& st) {
  const Layout& L = d.layout;
  CapexSolution sol;
  sol.x.assign(st.p.begin(), st.p.begin() + static_cast<long>(L.S * L.A));
  sol.f.assign(st.p.begin() + static_cast<long>(L.S * L.A), st.p.end());
  sol.objective = objective_value(d, st.p);

  sol.x_consensus.assign(L.A, 0.0);
  for (std::size_t s = 0; s < L.S; ++s) {
    for (std::size_t a = 0; a < L.A; ++a) {
      sol.x_consensus[a] += sol.x[s * L.A + a];
    }
  }
  for (std::size_t a = 0; a < L.A; ++a) {
    sol.x_consensus[a] /= static_cast<double>(L.S);
  }

  sol.worst_excess.assign(L.A, -std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < L.S; ++s) {
    const RealVector w = d.arc_flows(st.p, s);
    for (std::size_t a = 0; a < L.A; ++a) {
      sol.worst_excess[a] =
          std::max(sol.worst_excess[a], w[a] - d.cap[s][a]);
      sol.capacity_residual =
          std::max(sol.capacity_residual,
                   w[a] - sol.x[s * L.A + a] - d.cap[s][a]);
      sol.consensus_spread =
          std::max(sol.consensus_spread,
                   std::abs(sol.x[s * L.A + a] - sol.x_consensus[a]));
      sol.box_violation = std::max(
          {sol.box_violation, -sol.x[s * L.A + a],
           sol.x[s * L.A + a] - d.upper[a]});
    }
    for (std::size_t od = 0; od < L.OD; ++od) {
      const auto [off, cnt] = d.od_span[od];
      double total = 0.0;
      for (std::size_t r = 0; r < cnt; ++r) total += sol.f[s * L.R + off + r];
      sol.demand_residual =
          std::max(sol.demand_residual, std::abs(total - d.dem[s][od]));
      for (std::size_t r = 0; r < cnt; ++r) {
        sol.box_violation =
            std::max(sol.box_violation, -sol.f[s * L.R + off + r]);
      }
    }
  }
  return sol;
}

/// Runs one of the thirteen benchmark algorithms on an instance.
inline CapexRun solve_capexp(const Instance& inst, int algorithm_id,
                             std::uint64_t seed, double tolerance,
                             std::uint64_t max_iters,
                             const SolveOptions& extra_opts = {}) {
  AssembledProblem ap = assemble_problem(inst);
  const SelectionClass cls = algorithm_class(algorithm_id);
  const int l_nominal = algorithm_block_size(algorithm_id);
  const std::size_t l_eff =
      effective_block_size(cls, l_nominal, ap.data->layout.S);

  BlockParams params;
  params.seed = seed;
  BlockSet bs = cls == SelectionClass::kNone
                    ? make_blocks(inst, ap.data, cls, 1, params)
                    : make_blocks(inst, ap.data, cls, l_eff, params);
  ap.spec.activated_maps = make_block_maps(ap.data, bs.blocks);

  SolveOptions opts = extra_opts;
  if (!opts.error_fn) opts.error_fn = four_block_error(ap.data->layout);
  const IterationState init = initial_state(*ap.data);
  SolveReport report =
      solve(ap.spec, ap.steps, bs.schedule, init, tolerance, max_iters, opts);

  CapexRun run;
  run.algorithm_id = algorithm_id;
  run.label = class_label(cls);
  run.l_nominal = l_nominal;
  run.l_effective = l_eff;
  run.solution = extract_solution(*ap.data, report.terminal);
  run.report = std::move(report);
  return run;
}

}  // namespace rapd::capexp

#endif  // RAPD_CAPEXP_HPP_
