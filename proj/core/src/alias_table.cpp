#include "lsi/alias_table.hpp"

#include <numeric>
#include <stdexcept>

namespace lsi {

void build_alias(std::span<const double> weights, std::span<double> accept,
                 std::span<std::uint32_t> alias) {
  const std::size_t n = weights.size();
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (n == 0 || !(total > 0.0)) throw std::invalid_argument("alias table needs positive total weight");

  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] < 0.0) throw std::invalid_argument("alias table weight is negative");
    accept[i] = weights[i] * static_cast<double>(n) / total;
    alias[i] = static_cast<std::uint32_t>(i);
    (accept[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    alias[s] = l;
    accept[l] -= 1.0 - accept[s];
    if (accept[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::uint32_t i : small) accept[i] = 1.0;
  for (std::uint32_t i : large) accept[i] = 1.0;
}

AliasTable::AliasTable(std::span<const double> weights)
    : accept_(weights.size()), alias_(weights.size()) {
  build_alias(weights, accept_, alias_);
}

std::size_t AliasTable::sample(Rng& rng) const {
  const std::size_t i = uniform_below(rng, accept_.size());
  return uniform01(rng) < accept_[i] ? i : alias_[i];
}

double AliasTable::probability(std::size_t i) const {
  const double n = static_cast<double>(accept_.size());
  double p = accept_[i];
  for (std::size_t j = 0; j < accept_.size(); ++j) {
    if (j != i && alias_[j] == i) p += 1.0 - accept_[j];
  }
  return p / n;
}

}  // namespace lsi
