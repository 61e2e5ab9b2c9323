#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "lsi/embedding.hpp"

namespace lsi {

/// Row-major dense matrix; used for anchor blocks and the alignment map.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
};

/// Orthogonal map Q (domain dim x semantic dim) minimizing |X Q - Y|_F.
struct OrthogonalMap {
  DenseMatrix q;
  std::size_t anchor_count = 0;
  double residual = 0.0;  // |X Q - Y|_F on the fitting pairs
  bool rank_deficient = false;

  /// row * Q
  std::vector<double> apply(std::span<const double> row) const;
};

/// Orthogonal Procrustes: with U S V^T the SVD of X^T Y, Q = U V^T. No centering,
/// scaling or translation; reflections (det = -1) are allowed. Fewer rows than
/// columns of X is logged as a rank-deficient fit but still solved.
OrthogonalMap fit_alignment(const DenseMatrix& x, const DenseMatrix& y);

/// Aligned domain vectors (domain row * Q) for the domain tokens absent from
/// `semantic`, with Q fit on the anchor pairs.
EmbeddingMatrix mesh_baseline(const EmbeddingMatrix& semantic, const EmbeddingMatrix& domain,
                              const AnchorMap& anchors, OrthogonalMap* fitted = nullptr);

/// Plain-text matrix: "<rows> <cols>" then one space-separated row per line.
void write_matrix(const DenseMatrix& m, const std::filesystem::path& path);
DenseMatrix read_matrix(const std::filesystem::path& path);

}  // namespace lsi
