// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_VECTOR_OPS_HPP_
#define RAPD_VECTOR_OPS_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rapd {

/// Finite-dimensional real vector. All solver state is kept in this type;
/// non-finite entries are rejected at module boundaries.
using RealVector = std::vector<double>;

inline bool all_finite(const RealVector& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

inline void require_finite(const RealVector& v, const char* who) {
  if (!all_finite(v)) {
    throw std::invalid_argument(std::string(who) + ": non-finite entry");
  }
}

inline void require_same_dim(const RealVector& a, const RealVector& b,
                             const char* who) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

inline double dot(const RealVector& a, const RealVector& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const RealVector& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return s;
}

inline double norm(const RealVector& a) { return std::sqrt(norm_sq(a)); }

inline double dist_sq(const RealVector& a, const RealVector& b) {
  require_same_dim(a, b, "dist_sq");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double dist(const RealVector& a, const RealVector& b) {
  return std::sqrt(dist_sq(a, b));
}

inline RealVector zeros(std::size_t n) { return RealVector(n, 0.0); }

/// y <- y + alpha * x
inline void axpy(double alpha, const RealVector& x, RealVector& y) {
  require_same_dim(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline RealVector scaled(const RealVector& x, double alpha) {
  RealVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = alpha * x[i];
  return r;
}

inline RealVector sum(const RealVector& a, const RealVector& b) {
  require_same_dim(a, b, "sum");
  RealVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RealVector diff(const RealVector& a, const RealVector& b) {
  require_same_dim(a, b, "diff");
  RealVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline double inf_norm(const RealVector& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace rapd

#endif  // RAPD_VECTOR_OPS_HPP_
