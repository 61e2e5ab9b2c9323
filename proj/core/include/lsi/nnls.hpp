#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lsi {

struct NnlsOptions {
  /// KKT tolerance on the gradient A^T(b - Ax), relative to max(1, |A|_max_col * |b|).
  double tolerance = 1e-10;
  /// Cap on outer (column-activation) iterations; 0 means 3 * columns.
  std::size_t max_iterations = 0;
};

struct NnlsResult {
  std::vector<double> x;
  double residual_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// min |A x - b|_2 subject to x >= 0, by the Lawson-Hanson active-set method.
/// A is given by its columns, each of length b.size().
NnlsResult nnls(const std::vector<std::span<const double>>& columns, std::span<const double> b,
                const NnlsOptions& options = {});

}  // namespace lsi
