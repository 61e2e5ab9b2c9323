#include "lsi/imputation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "lsi/error.hpp"
#include "lsi/log.hpp"
#include "lsi/nnls.hpp"

namespace lsi {

void LsiConfig::validate() const {
  std::string problems;
  if (k < 1) problems += "\n  k: must be >= 1";
  if (!(eta > 0.0) || !std::isfinite(eta)) problems += "\n  eta: must be > 0";
  if (max_iters < 1) problems += "\n  max_iters: must be >= 1";
  if (!problems.empty()) throw InputError("invalid lsi config:" + problems);
}

double WeightMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  for (const auto& e : rows[i]) s += e.weight;
  return s;
}

WeightMatrix solve_weights(const EmbeddingMatrix& domain, const NeighborGraph& g,
                           std::span<const std::size_t> anchor_rows) {
  const std::size_t n = domain.size();
  if (g.size() != n) throw InputError("neighbor graph size does not match the domain matrix");

  WeightMatrix w;
  w.rows.assign(n, {});
  w.is_anchor.assign(n, false);
  for (std::size_t a : anchor_rows) {
    if (a >= n) throw InputError("anchor row " + std::to_string(a) + " out of range");
    w.is_anchor[a] = true;
  }

  std::vector<char> fallback(n, 0);
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    auto& row = w.rows[i];
    if (w.is_anchor[i]) {
      row.push_back({i, 1.0});
      continue;
    }
    const auto& nbrs = g.adjacency[i];
    if (nbrs.empty()) continue;
    std::vector<std::span<const double>> columns;
    columns.reserve(nbrs.size());
    for (std::size_t j : nbrs) columns.push_back(domain.row(j));
    const NnlsResult fit = nnls(columns, domain.row(i));

    double total = 0.0;
    for (double x : fit.x) total += x;
    if (!(total > 0.0)) {
      fallback[i] = 1;
      const double uniform = 1.0 / static_cast<double>(nbrs.size());
      for (std::size_t j : nbrs) row.push_back({j, uniform});
      continue;
    }
    for (std::size_t c = 0; c < nbrs.size(); ++c) {
      if (fit.x[c] > 0.0) row.push_back({nbrs[c], fit.x[c] / total});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (fallback[i]) {
      ++w.uniform_fallbacks;
      logger().debug("solve_weights: row '{}' has all-zero NNLS weights; using uniform",
                     domain.token(i));
    }
  }
  if (w.uniform_fallbacks > 0) {
    logger().warn("solve_weights: {} row(s) fell back to uniform neighbor weights",
                  w.uniform_fallbacks);
  }
  return w;
}

namespace {

/// Rows that can reach an anchor along positive-weight edges, found by a
/// reverse breadth-first search from the anchors.
std::vector<char> reachable_rows(const WeightMatrix& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<std::size_t>> dependents(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (w.is_anchor[i]) continue;
    for (const auto& e : w.rows[i]) {
      if (e.weight > 0.0) dependents[e.column].push_back(i);
    }
  }
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (w.is_anchor[i]) {
      seen[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop_front();
    for (std::size_t i : dependents[j]) {
      if (!seen[i]) {
        seen[i] = 1;
        queue.push_back(i);
      }
    }
  }
  return seen;
}

}  // namespace

ImputationResult impute(const WeightMatrix& w, const AnchorMap& anchors,
                        const EmbeddingMatrix& semantic,
                        std::span<const std::string> domain_tokens, const LsiConfig& cfg) {
  cfg.validate();
  const std::size_t n = w.size();
  if (domain_tokens.size() != n) throw InputError("domain token count does not match W");
  if (anchors.empty()) throw InputError("imputation needs at least one anchor");
  const std::size_t dim = semantic.dim();

  // Semantic row of each anchor domain row.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> semantic_row(n, kNone);
  for (const auto& pair : anchors.pairs) {
    if (pair.domain >= n || pair.semantic >= semantic.size()) {
      throw InputError("anchor pair out of range");
    }
    if (!w.is_anchor[pair.domain]) {
      throw InputError("anchor '" + domain_tokens[pair.domain] + "' is not an identity row of W");
    }
    semantic_row[pair.domain] = pair.semantic;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (w.is_anchor[i] && semantic_row[i] == kNone) {
      throw InputError("identity row '" + domain_tokens[i] + "' of W has no semantic anchor");
    }
  }

  ImputationResult result;
  result.anchor_count = anchors.size();
  result.uniform_fallbacks = w.uniform_fallbacks;
  result.imputed = EmbeddingMatrix(dim);

  std::vector<double> anchor_mean(dim, 0.0);
  for (const auto& pair : anchors.pairs) {
    const auto v = semantic.row(pair.semantic);
    for (std::size_t d = 0; d < dim; ++d) anchor_mean[d] += v[d];
  }
  for (double& v : anchor_mean) v /= static_cast<double>(anchors.size());

  const auto reachable = reachable_rows(w);
  std::vector<std::size_t> active;  // non-anchor rows that are iterated
  for (std::size_t i = 0; i < n; ++i) {
    if (w.is_anchor[i]) continue;
    if (!reachable[i]) {
      result.unreachable.push_back(domain_tokens[i]);
      continue;
    }
    active.push_back(i);
  }
  if (!result.unreachable.empty()) {
    if (cfg.unreachable == UnreachablePolicy::kError) {
      throw InputError(std::to_string(result.unreachable.size()) +
                       " row(s) cannot reach any anchor, e.g. '" + result.unreachable.front() + "'");
    }
    logger().warn("impute: {} row(s) cannot reach an anchor; pinned to the anchor mean",
                  result.unreachable.size());
  }

  // Row-major state over all domain rows; anchors hold their semantic vectors.
  std::vector<double> current(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    const double* src = w.is_anchor[i] ? semantic.row(semantic_row[i]).data() : anchor_mean.data();
    std::copy(src, src + dim, current.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  std::vector<double> next(current);

  const std::ptrdiff_t n_active = static_cast<std::ptrdiff_t>(active.size());
  while (!active.empty() && result.iterations < cfg.max_iters) {
    double change = 0.0;
#pragma omp parallel for schedule(static) reduction(max : change)
    for (std::ptrdiff_t a = 0; a < n_active; ++a) {
      const std::size_t i = active[static_cast<std::size_t>(a)];
      double* out = next.data() + i * dim;
      std::fill(out, out + dim, 0.0);
      for (const auto& e : w.rows[i]) {
        const double* src = current.data() + e.column * dim;
        for (std::size_t d = 0; d < dim; ++d) out[d] += e.weight * src[d];
      }
      const double* old = current.data() + i * dim;
      for (std::size_t d = 0; d < dim; ++d) change = std::max(change, std::abs(out[d] - old[d]));
    }
    for (std::size_t i : active) {
      std::copy(next.begin() + static_cast<std::ptrdiff_t>(i * dim),
                next.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim),
                current.begin() + static_cast<std::ptrdiff_t>(i * dim));
    }
    ++result.iterations;
    result.final_change = change;
    if (change < cfg.eta) {
      result.converged = true;
      break;
    }
  }
  if (active.empty()) result.converged = true;
  if (!result.converged) {
    logger().warn("impute: not converged after {} iterations (last change {:.3e})",
                  result.iterations, result.final_change);
  } else {
    logger().info("impute: converged after {} iterations (last change {:.3e})", result.iterations,
                  result.final_change);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (w.is_anchor[i]) continue;
    result.imputed.append(domain_tokens[i],
                          std::span<const double>(current.data() + i * dim, dim));
  }
  return result;
}

ImputationResult lsi_pipeline(const EmbeddingMatrix& semantic, const EmbeddingMatrix& domain,
                              const LsiConfig& cfg) {
  cfg.validate();
  const AnchorMap anchors = find_anchors(semantic, domain);
  if (anchors.empty()) throw InputError("no anchor terms shared by the semantic and domain vocabularies");
  logger().info("lsi: {} anchors, {} domain rows to impute", anchors.size(),
                domain.size() - anchors.size());

  if (anchors.size() == domain.size()) {
    ImputationResult empty;
    empty.imputed = EmbeddingMatrix(semantic.dim());
    empty.converged = true;
    empty.anchor_count = anchors.size();
    return empty;
  }

  const NeighborGraph graph = knn_mst(domain, cfg.k);
  std::vector<std::size_t> anchor_rows;
  anchor_rows.reserve(anchors.size());
  for (const auto& pair : anchors.pairs) anchor_rows.push_back(pair.domain);
  const WeightMatrix w = solve_weights(domain, graph, anchor_rows);
  return impute(w, anchors, semantic, domain.tokens(), cfg);
}

}  // namespace lsi
