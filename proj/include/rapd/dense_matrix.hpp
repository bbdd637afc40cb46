// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_DENSE_MATRIX_HPP_
#define RAPD_DENSE_MATRIX_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "rapd/vector_ops.hpp"

namespace rapd {

/// Small dense row-major matrix. Used for incidence matrices and quadratic
/// cost terms; the problems in scope never exceed a few hundred rows.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major, rows*cols

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  RealVector apply(const RealVector& x) const {
    if (x.size() != cols) throw std::invalid_argument("DenseMatrix::apply: dim");
    RealVector y(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      double s = 0.0;
      const double* row = &data[i * cols];
      for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
      y[i] = s;
    }
    return y;
  }

  RealVector apply_transpose(const RealVector& y) const {
    if (y.size() != rows) {
      throw std::invalid_argument("DenseMatrix::apply_transpose: dim");
    }
    RealVector x(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      const double* row = &data[i * cols];
      const double yi = y[i];
      for (std::size_t j = 0; j < cols; ++j) x[j] += row[j] * yi;
    }
    return x;
  }
};

/// Largest singular value of a dense matrix by power iteration on N^T N,
/// started from the normalized all-ones vector so the result is
/// deterministic. Returns 0 for the zero matrix.
inline double estimate_operator_norm(const DenseMatrix& m, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("estimate_operator_norm: tol > 0");
  if (m.rows == 0 || m.cols == 0) return 0.0;

  RealVector v(m.cols, 1.0 / std::sqrt(static_cast<double>(m.cols)));
  double sigma = 0.0;
  const int max_iters = 100000;
  for (int it = 0; it < max_iters; ++it) {
    RealVector w = m.apply_transpose(m.apply(v));
    const double lambda = std::sqrt(norm_sq(w));
    if (lambda == 0.0) return 0.0;
    const double sigma_next = std::sqrt(lambda);
    for (std::size_t j = 0; j < w.size(); ++j) v[j] = w[j] / lambda;
    if (it > 0 && std::abs(sigma_next - sigma) <= tol * sigma_next) {
      return sigma_next;
    }
    sigma = sigma_next;
  }
  return sigma;
}

}  // namespace rapd

#endif  // RAPD_DENSE_MATRIX_HPP_
