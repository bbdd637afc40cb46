// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_PROJECTIONS_HPP_
#define RAPD_PROJECTIONS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rapd/vector_ops.hpp"

namespace rapd {

/// The set {z : <normal, z> <= offset}.
struct HalfSpace {
  RealVector normal;
  double offset = 0.0;

  HalfSpace(RealVector n, double b) : normal(std::move(n)), offset(b) {
    require_finite(normal, "HalfSpace");
    if (!std::isfinite(offset)) throw std::invalid_argument("HalfSpace: offset");
    if (norm_sq(normal) == 0.0) {
      throw std::invalid_argument("HalfSpace: zero normal");
    }
  }
};

/// alpha-averaged nonexpansive operator. Projections carry alpha = 1/2.
struct AveragedMap {
  std::function<RealVector(const RealVector&)> apply;
  double alpha = 0.5;
};

inline RealVector project_halfspace(const HalfSpace& h, const RealVector& z) {
  require_same_dim(h.normal, z, "project_halfspace");
  require_finite(z, "project_halfspace");
  const double g = dot(h.normal, z);
  if (g <= h.offset) return z;
  const double step = (g - h.offset) / norm_sq(h.normal);
  RealVector r(z);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= step * h.normal[i];
  return r;
}

/// Projection onto the hyperplane {z : <r, z> = b}.
inline RealVector project_hyperplane(const RealVector& r, double b,
                                     const RealVector& z) {
  require_same_dim(r, z, "project_hyperplane");
  require_finite(z, "project_hyperplane");
  const double rr = norm_sq(r);
  if (rr == 0.0) throw std::invalid_argument("project_hyperplane: zero row");
  const double step = (b - dot(r, z)) / rr;
  RealVector out(z);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += step * r[i];
  return out;
}

/// Euclidean projection onto {f >= 0, sum f = h} by the exact
/// sort-then-threshold rule.
inline RealVector project_capped_simplex(const RealVector& v, double h) {
  require_finite(v, "project_capped_simplex");
  if (!(h >= 0.0)) {
    throw std::invalid_argument("project_capped_simplex: negative sum target");
  }
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("project_capped_simplex: empty");
  if (h == 0.0) return zeros(n);

  RealVector u(v);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - h) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) {
      theta = candidate;
    } else {
      break;
    }
  }
  RealVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

/// Projection onto the non-anticipativity subspace intersected with the box
/// [0, upper]^scenarios: average the scenario blocks, clamp coordinatewise,
/// and replicate. `x` is scenario-major with block dimension upper.size().
inline RealVector project_box_consensus(const RealVector& x,
                                        std::size_t num_scenarios,
                                        const RealVector& upper) {
  const std::size_t dim = upper.size();
  if (num_scenarios == 0 || dim == 0 || x.size() != num_scenarios * dim) {
    throw std::invalid_argument("project_box_consensus: dimension mismatch");
  }
  require_finite(x, "project_box_consensus");
  RealVector avg(dim, 0.0);
  for (std::size_t s = 0; s < num_scenarios; ++s) {
    for (std::size_t a = 0; a < dim; ++a) avg[a] += x[s * dim + a];
  }
  const double inv = 1.0 / static_cast<double>(num_scenarios);
  for (std::size_t a = 0; a < dim; ++a) {
    avg[a] = std::clamp(avg[a] * inv, 0.0, upper[a]);
  }
  RealVector out(x.size());
  for (std::size_t s = 0; s < num_scenarios; ++s) {
    for (std::size_t a = 0; a < dim; ++a) out[s * dim + a] = avg[a];
  }
  return out;
}

/// Projection of the pair (eta, nu) onto {(x, u) : u - x <= c}.
inline std::pair<double, double> project_capacity_pair(double eta, double nu,
                                                       double c) {
  if (!std::isfinite(eta) || !std::isfinite(nu) || !std::isfinite(c)) {
    throw std::invalid_argument("project_capacity_pair: non-finite input");
  }
  if (eta - nu + c < 0.0) {
    return {(eta + nu - c) / 2.0, (eta + nu + c) / 2.0};
  }
  return {eta, nu};
}

/// prox of the scaled conjugate through the Moreau identity:
/// returns u - gamma * prox_{g/gamma}(u / gamma).
inline RealVector moreau_dual_prox(
    const std::function<RealVector(const RealVector&)>& prox_g_scaled,
    double gamma, const RealVector& u) {
  if (!(gamma > 0.0)) throw std::invalid_argument("moreau_dual_prox: gamma");
  RealVector scaled_point(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) scaled_point[i] = u[i] / gamma;
  const RealVector w = prox_g_scaled(scaled_point);
  require_same_dim(w, u, "moreau_dual_prox");
  RealVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - gamma * w[i];
  return out;
}

}  // namespace rapd

#endif  // RAPD_PROJECTIONS_HPP_
