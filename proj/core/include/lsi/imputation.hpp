#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lsi/embedding.hpp"
#include "lsi/knn_mst.hpp"

namespace lsi {

enum class UnreachablePolicy {
  kError,      // fail if any non-anchor row cannot reach an anchor
  kAnchorMean  // pin such rows to the anchor mean and report them
};

struct LsiConfig {
  std::size_t k = 50;           // minimum degree of the kNN-MST graph
  double eta = 1e-4;            // stop when every row moves less than eta (max-abs)
  std::size_t max_iters = 10000;
  UnreachablePolicy unreachable = UnreachablePolicy::kAnchorMean;

  void validate() const;
};

/// Sparse row-stochastic reconstruction weights over domain rows. Non-anchor
/// rows hold nonnegative weights on graph neighbors summing to 1; anchor rows
/// are exactly the identity row.
struct WeightMatrix {
  struct Entry {
    std::size_t column = 0;
    double weight = 0.0;
  };

  std::vector<std::vector<Entry>> rows;
  std::vector<bool> is_anchor;
  std::size_t uniform_fallbacks = 0;  // rows whose NNLS solution was all zero

  std::size_t size() const noexcept { return rows.size(); }
  double row_sum(std::size_t i) const;
};

/// NNLS weights reconstructing each non-anchor domain row from its graph
/// neighbors, normalized to sum 1. Anchor rows become identity rows.
WeightMatrix solve_weights(const EmbeddingMatrix& domain, const NeighborGraph& g,
                           std::span<const std::size_t> anchor_rows);

struct ImputationResult {
  EmbeddingMatrix imputed;                 // non-anchor domain tokens, domain order
  std::size_t iterations = 0;
  double final_change = 0.0;               // max-abs row change of the last sweep
  bool converged = false;
  std::size_t anchor_count = 0;
  std::size_t uniform_fallbacks = 0;
  std::vector<std::string> unreachable;    // tokens with no positive-weight path to an anchor
};

/// Power iteration with anchors held fixed. Non-anchor rows start at the mean of
/// the anchor semantic vectors and are updated synchronously,
///   E_i <- sum_j W_ij E_j,
/// until the largest per-row max-abs change drops below eta or max_iters sweeps
/// have run (result flagged not converged). Anchor vectors are never modified.
ImputationResult impute(const WeightMatrix& w, const AnchorMap& anchors,
                        const EmbeddingMatrix& semantic,
                        std::span<const std::string> domain_tokens, const LsiConfig& cfg);

/// find_anchors -> knn_mst -> solve_weights -> impute. Imputes exactly the
/// domain tokens missing from `semantic`.
ImputationResult lsi_pipeline(const EmbeddingMatrix& semantic, const EmbeddingMatrix& domain,
                              const LsiConfig& cfg);

}  // namespace lsi
