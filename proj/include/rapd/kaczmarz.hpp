// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_KACZMARZ_HPP_
#define RAPD_KACZMARZ_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rapd/projections.hpp"
#include "rapd/rng.hpp"
#include "rapd/vector_ops.hpp"

namespace rapd {

/// Consistent linear system given row-wise. Consistency is a precondition:
/// on inconsistent systems the sweeps cycle without converging and no
/// detection is attempted.
struct LinearSystem {
  std::vector<RealVector> rows;
  RealVector rhs;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t dim() const { return rows.empty() ? 0 : rows.front().size(); }

  void validate() const {
    if (rows.size() != rhs.size()) {
      throw std::invalid_argument("LinearSystem: rows/rhs size mismatch");
    }
    for (const auto& r : rows) {
      if (r.size() != dim()) {
        throw std::invalid_argument("LinearSystem: ragged rows");
      }
      if (norm_sq(r) == 0.0) {
        throw std::invalid_argument("LinearSystem: zero row");
      }
    }
  }
};

inline double residual_inf(const LinearSystem& sys, const RealVector& x) {
  double m = 0.0;
  for (std::size_t i = 0; i < sys.num_rows(); ++i) {
    m = std::max(m, std::abs(dot(sys.rows[i], x) - sys.rhs[i]));
  }
  return m;
}

using KaczmarzStepCallback =
    std::function<void(std::uint64_t step, const RealVector& x)>;

/// Cyclic row projections, row order (k mod m) + 1. Stops early when the
/// sup-norm residual falls below `stop_tol` (negative disables the check).
inline RealVector kaczmarz_cyclic(const LinearSystem& sys, RealVector x0,
                                  std::uint64_t sweeps, double stop_tol = -1.0,
                                  const KaczmarzStepCallback& on_step = {}) {
  sys.validate();
  if (x0.size() != sys.dim()) {
    throw std::invalid_argument("kaczmarz_cyclic: x0 dimension");
  }
  RealVector x = std::move(x0);
  std::uint64_t step = 0;
  for (std::uint64_t sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t i = 0; i < sys.num_rows(); ++i) {
      x = project_hyperplane(sys.rows[i], sys.rhs[i], x);
      ++step;
      if (on_step) on_step(step, x);
    }
    if (stop_tol >= 0.0 && residual_inf(sys, x) <= stop_tol) break;
  }
  return x;
}

/// Randomized row projections with row i drawn with probability
/// |r_i|^2 / sum_j |r_j|^2. Seed-deterministic through `rng`.
inline RealVector kaczmarz_randomized(const LinearSystem& sys, RealVector x0,
                                      std::uint64_t steps, SeededRng& rng,
                                      double stop_tol = -1.0,
                                      const KaczmarzStepCallback& on_step = {}) {
  sys.validate();
  if (x0.size() != sys.dim()) {
    throw std::invalid_argument("kaczmarz_randomized: x0 dimension");
  }
  // Cumulative squared-norm table for inverse-CDF sampling.
  std::vector<double> cumulative(sys.num_rows());
  double total = 0.0;
  for (std::size_t i = 0; i < sys.num_rows(); ++i) {
    total += norm_sq(sys.rows[i]);
    cumulative[i] = total;
  }
  RealVector x = std::move(x0);
  for (std::uint64_t k = 0; k < steps; ++k) {
    const double target = rng.uniform() * total;
    std::size_t i = static_cast<std::size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), target) -
        cumulative.begin());
    if (i >= sys.num_rows()) i = sys.num_rows() - 1;
    x = project_hyperplane(sys.rows[i], sys.rhs[i], x);
    if (on_step) on_step(k + 1, x);
    if (stop_tol >= 0.0 && residual_inf(sys, x) <= stop_tol) break;
  }
  return x;
}

}  // namespace rapd

#endif  // RAPD_KACZMARZ_HPP_
