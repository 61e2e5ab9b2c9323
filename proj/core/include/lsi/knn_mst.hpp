#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lsi/embedding.hpp"

namespace lsi {

/// Union of the Euclidean minimum spanning tree over all rows and the
/// symmetrized k-nearest-neighbor graph. Symmetric, loop-free, connected, and
/// every node has degree >= k.
struct NeighborGraph {
  std::vector<std::vector<std::size_t>> adjacency;           // sorted per node
  std::vector<std::pair<std::size_t, std::size_t>> mst_edges; // (u < v), sorted
  std::size_t k = 0;

  std::size_t size() const noexcept { return adjacency.size(); }
  std::size_t degree(std::size_t i) const { return adjacency[i].size(); }
  std::size_t edge_count() const noexcept;
  std::size_t min_degree() const noexcept;
};

/// Exact Euclidean MST edges (u < v, sorted) via dense Prim, O(n^2 d).
std::vector<std::pair<std::size_t, std::size_t>> euclidean_mst(const EmbeddingMatrix& points);

/// The k nearest other rows of every row, nearest first; equal distances are
/// ordered by smaller row index.
std::vector<std::vector<std::size_t>> k_nearest_neighbors(const EmbeddingMatrix& points,
                                                          std::size_t k);

/// Requires at least 2 rows and k < rows; throws InputError otherwise.
NeighborGraph knn_mst(const EmbeddingMatrix& domain, std::size_t k);

}  // namespace lsi
