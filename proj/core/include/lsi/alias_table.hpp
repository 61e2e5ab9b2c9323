#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lsi/random.hpp"

namespace lsi {

/// Walker/Vose alias table: O(n) construction, O(1) sampling from a fixed
/// categorical distribution given by nonnegative (unnormalized) weights.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const noexcept { return accept_.size(); }
  bool empty() const noexcept { return accept_.empty(); }

  std::size_t sample(Rng& rng) const;

  /// Exact probability of outcome i implied by the table (for verification).
  double probability(std::size_t i) const;

 private:
  std::vector<double> accept_;
  std::vector<std::uint32_t> alias_;
};

/// Fills `accept`/`alias` (both sized like `weights`) for the alias method.
/// Shared with the flattened per-edge tables used by the walk sampler.
void build_alias(std::span<const double> weights, std::span<double> accept,
                 std::span<std::uint32_t> alias);

}  // namespace lsi
