// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_LINEAR_MAP_HPP_
#define RAPD_LINEAR_MAP_HPP_

#include <functional>
#include <memory>
#include <utility>

#include "rapd/dense_matrix.hpp"
#include "rapd/vector_ops.hpp"

namespace rapd {

/// Bounded linear operator given by its action, its adjoint's action, and an
/// upper bound on the operator norm. The adjoint identity
/// <L x, u> = <x, L* u> is a contract of every instance and is property-tested
/// on random pairs.
struct LinearMap {
  std::function<RealVector(const RealVector&)> forward;
  std::function<RealVector(const RealVector&)> adjoint;
  double norm_bound = 0.0;
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
};

inline LinearMap make_zero_map(std::size_t dim_in, std::size_t dim_out) {
  LinearMap map;
  map.forward = [dim_out](const RealVector&) { return zeros(dim_out); };
  map.adjoint = [dim_in](const RealVector&) { return zeros(dim_in); };
  map.norm_bound = 0.0;
  map.dim_in = dim_in;
  map.dim_out = dim_out;
  return map;
}

/// Wraps a dense matrix; norm_bound is estimated by power iteration.
inline LinearMap make_matrix_map(DenseMatrix m, double norm_tol = 1e-8) {
  LinearMap map;
  map.norm_bound = estimate_operator_norm(m, norm_tol);
  map.dim_in = m.cols;
  map.dim_out = m.rows;
  auto shared = std::make_shared<DenseMatrix>(std::move(m));
  map.forward = [shared](const RealVector& x) { return shared->apply(x); };
  map.adjoint = [shared](const RealVector& y) {
    return shared->apply_transpose(y);
  };
  return map;
}

}  // namespace rapd

#endif  // RAPD_LINEAR_MAP_HPP_
