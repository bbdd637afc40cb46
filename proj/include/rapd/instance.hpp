// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_INSTANCE_HPP_
#define RAPD_INSTANCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapd/dense_matrix.hpp"
#include "rapd/network.hpp"
#include "rapd/rng.hpp"
#include "rapd/vector_ops.hpp"

namespace rapd {

/// One scenario: occurrence probability, per-arc capacities, per-OD demands.
struct ScenarioData {
  double probability = 0.0;
  RealVector capacities;  // |A|
  RealVector demands;     // |OD|
};

struct BetaParams {
  double cap_a = 20.0;
  double cap_b = 20.0;
  double dem_a = 50.0;
  double dem_b = 10.0;
};

/// A network together with sampled scenario data and the quadratic expansion
/// cost. Immutable once built; shared read-only across solver runs.
struct Instance {
  Network net;
  std::vector<ScenarioData> scenarios;
  DenseMatrix Q;  // |A| x |A|, identity unless configured otherwise
  BetaParams beta;
  std::uint64_t seed = 0;

  std::size_t num_scenarios() const { return scenarios.size(); }

  void validate() const {
    if (scenarios.empty()) throw std::invalid_argument("Instance: no scenarios");
    double total_p = 0.0;
    for (const auto& sc : scenarios) {
      if (!(sc.probability > 0.0)) {
        throw std::invalid_argument("Instance: scenario probability <= 0");
      }
      total_p += sc.probability;
      if (sc.capacities.size() != net.num_arcs() ||
          sc.demands.size() != net.od_pairs.size()) {
        throw std::invalid_argument("Instance: scenario dimension mismatch");
      }
      for (double c : sc.capacities) {
        if (!(c > 0.0)) throw std::invalid_argument("Instance: capacity <= 0");
      }
      for (double h : sc.demands) {
        if (!(h >= 0.0)) throw std::invalid_argument("Instance: demand < 0");
      }
    }
    if (std::abs(total_p - 1.0) > 1e-9) {
      throw std::invalid_argument("Instance: probabilities must sum to 1");
    }
  }

  /// Lipschitz row beta_{a,xi} = cong_a / c_{a,xi}.
  double lipschitz_row(std::size_t arc, std::size_t scenario) const {
    return net.params[arc].cong / scenarios[scenario].capacities[arc];
  }
};

/// Samples capacities c_a + kappa_a * Beta(20,20) and demands
/// d_od + s_od * Beta(50,10) with uniform scenario probabilities. Sampling
/// order is fixed (scenario-major; arcs, then OD pairs) so equal seeds give
/// identical instances.
inline Instance generate_instance(const Network& net,
                                  std::size_t num_scenarios,
                                  std::uint64_t seed,
                                  const BetaParams& beta = {}) {
  if (num_scenarios == 0) {
    throw std::invalid_argument("generate_instance: num_scenarios >= 1");
  }
  Instance inst;
  inst.net = net;
  inst.Q = DenseMatrix::identity(net.num_arcs());
  inst.beta = beta;
  inst.seed = seed;
  SeededRng rng(seed);
  const double p = 1.0 / static_cast<double>(num_scenarios);
  for (std::size_t s = 0; s < num_scenarios; ++s) {
    ScenarioData sc;
    sc.probability = p;
    sc.capacities.reserve(net.num_arcs());
    for (std::size_t a = 0; a < net.num_arcs(); ++a) {
      sc.capacities.push_back(net.params[a].c +
                              net.params[a].kappa *
                                  sample_beta(beta.cap_a, beta.cap_b, rng));
    }
    sc.demands.reserve(net.od_pairs.size());
    for (const auto& od : net.od_pairs) {
      sc.demands.push_back(od.demand_base +
                           od.demand_spread *
                               sample_beta(beta.dem_a, beta.dem_b, rng));
    }
    inst.scenarios.push_back(std::move(sc));
  }
  inst.validate();
  return inst;
}

/// Crude solvability screen: per scenario, the total expanded capacity must
/// cover the route-demand lower bound (each demand unit occupies at least the
/// shortest route's arc count). Returns human-readable warnings; an empty
/// list means the screen passed.
inline std::vector<std::string> feasibility_warnings(const Instance& inst) {
  std::vector<std::string> warnings;
  for (std::size_t s = 0; s < inst.num_scenarios(); ++s) {
    double capacity_total = 0.0;
    for (std::size_t a = 0; a < inst.net.num_arcs(); ++a) {
      capacity_total += inst.scenarios[s].capacities[a] + inst.net.params[a].M;
    }
    double demand_lower = 0.0;
    for (std::size_t od = 0; od < inst.net.od_pairs.size(); ++od) {
      std::size_t min_len = inst.net.num_arcs();
      for (const auto& route : inst.net.routes[od]) {
        min_len = std::min(min_len, route.size());
      }
      if (inst.net.routes[od].empty()) {
        warnings.push_back("OD pair " + std::to_string(od) +
                           " has no routes but positive demand");
        continue;
      }
      demand_lower +=
          inst.scenarios[s].demands[od] * static_cast<double>(min_len);
    }
    if (demand_lower > capacity_total) {
      std::ostringstream os;
      os << "scenario " << s << ": route-demand lower bound " << demand_lower
         << " exceeds total expanded capacity " << capacity_total;
      warnings.push_back(os.str());
    }
  }
  return warnings;
}

}  // namespace rapd

#endif  // RAPD_INSTANCE_HPP_
