#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lsi/graph.hpp"
#include "lsi/random.hpp"
#include "lsi/sgns.hpp"

namespace lsi {

struct WalkConfig {
  double p = 0.5;               // return parameter
  double q = 0.5;               // in-out parameter
  std::size_t n_walks = 10;     // walks started from every node
  std::size_t walk_length = 80; // nodes per walk, including the start node
  std::uint64_t seed = 1;

  void validate() const;
};

/// Second-order transition sampler. For every directed edge (t -> v) it holds an
/// alias table over the neighbors x of v with unnormalized weight 1/p when
/// x == t, 1 when x is adjacent to t, and 1/q otherwise.
class WalkSampler {
 public:
  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t degree(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const std::uint32_t> neighbors(std::size_t v) const {
    return {neighbors_.data() + offsets_[v], degree(v)};
  }

  /// First step from `start`: uniform over its neighbors.
  std::size_t first_step(std::size_t start, Rng& rng) const;
  /// Next node after arriving at `current` from `previous`.
  std::size_t next(std::size_t previous, std::size_t current, Rng& rng) const;

  /// Normalized transition probabilities for state (previous -> current), in
  /// the order of neighbors(current).
  std::vector<double> transition_probabilities(std::size_t previous, std::size_t current) const;

  std::size_t isolated_count() const noexcept { return isolated_; }

 private:
  friend WalkSampler build_transition_tables(const LabeledGraph& g, const WalkConfig& cfg);

  std::size_t edge_slot(std::size_t previous, std::size_t current) const;

  std::vector<std::size_t> offsets_;       // CSR row offsets, size n+1
  std::vector<std::uint32_t> neighbors_;   // sorted per node
  std::vector<std::size_t> table_offsets_; // per directed edge slot
  std::vector<double> accept_;
  std::vector<std::uint32_t> alias_;
  std::size_t isolated_ = 0;
};

WalkSampler build_transition_tables(const LabeledGraph& g, const WalkConfig& cfg);

/// Token emitted for each node in walks: normalize_label(label). When several
/// nodes normalize to the same token, the node with the smallest ID keeps it and
/// the others emit their node ID instead (flagged in `shadowed`).
struct NodeTokens {
  std::vector<std::string> tokens;
  std::vector<bool> shadowed;
  std::size_t collisions = 0;
};

NodeTokens assign_node_tokens(const LabeledGraph& g);

/// n_walks walks per non-isolated node as node-index sequences, grouped by walk
/// round and then node order. Walk (node, r) uses its own RNG stream derived
/// from (seed, node, r), so the output is independent of thread scheduling.
std::vector<std::vector<std::uint32_t>> generate_walk_indices(const WalkSampler& s,
                                                              const WalkConfig& cfg);

/// Walks rendered as token sequences via assign_node_tokens.
Corpus generate_walks(const WalkSampler& s, const LabeledGraph& g, const WalkConfig& cfg);

/// Walks followed by SGNS; rows for shadowed nodes are dropped from the result.
EmbeddingMatrix train_node2vec(const LabeledGraph& g, const WalkConfig& walk,
                               const SgnsConfig& sgns, TrainingLog* log = nullptr);

}  // namespace lsi
