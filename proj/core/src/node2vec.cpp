#include "lsi/node2vec.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lsi/alias_table.hpp"
#include "lsi/embedding.hpp"
#include "lsi/error.hpp"
#include "lsi/log.hpp"

namespace lsi {

void WalkConfig::validate() const {
  std::string problems;
  if (!(p > 0.0) || !std::isfinite(p)) problems += "\n  p: must be > 0";
  if (!(q > 0.0) || !std::isfinite(q)) problems += "\n  q: must be > 0";
  if (n_walks < 1) problems += "\n  n_walks: must be >= 1";
  if (walk_length < 2) problems += "\n  walk_length: must be >= 2";
  if (!problems.empty()) throw InputError("invalid walk config:" + problems);
}

WalkSampler build_transition_tables(const LabeledGraph& g, const WalkConfig& cfg) {
  cfg.validate();
  if (g.node_count() == 0) throw InputError("cannot build walk tables for an empty graph");

  WalkSampler s;
  const auto adj = g.adjacency();
  const std::size_t n = adj.size();
  s.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) s.offsets_[v + 1] = s.offsets_[v] + adj[v].size();
  s.neighbors_.reserve(s.offsets_[n]);
  for (const auto& list : adj) {
    for (std::size_t x : list) s.neighbors_.push_back(static_cast<std::uint32_t>(x));
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (adj[v].empty()) ++s.isolated_;
  }
  if (s.isolated_ > 0) {
    logger().warn("node2vec: {} isolated node(s) excluded from walks", s.isolated_);
  }

  // One table per directed edge slot (t -> v), where slot = offsets[t] + position of v.
  const std::size_t slots = s.offsets_[n];
  s.table_offsets_.assign(slots + 1, 0);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < adj[t].size(); ++j) {
      const std::size_t slot = s.offsets_[t] + j;
      s.table_offsets_[slot + 1] = s.table_offsets_[slot] + adj[adj[t][j]].size();
    }
  }
  s.accept_.resize(s.table_offsets_[slots]);
  s.alias_.resize(s.table_offsets_[slots]);

  const double w_return = 1.0 / cfg.p;
  const double w_out = 1.0 / cfg.q;
  std::vector<double> weights;
  for (std::size_t t = 0; t < n; ++t) {
    const auto& t_nbrs = adj[t];
    for (std::size_t j = 0; j < t_nbrs.size(); ++j) {
      const std::size_t v = t_nbrs[j];
      const auto& v_nbrs = adj[v];
      weights.resize(v_nbrs.size());
      for (std::size_t k = 0; k < v_nbrs.size(); ++k) {
        const std::size_t x = v_nbrs[k];
        if (x == t) {
          weights[k] = w_return;
        } else if (std::binary_search(t_nbrs.begin(), t_nbrs.end(), x)) {
          weights[k] = 1.0;
        } else {
          weights[k] = w_out;
        }
      }
      const std::size_t slot = s.offsets_[t] + j;
      const std::size_t base = s.table_offsets_[slot];
      build_alias(weights, std::span<double>(s.accept_.data() + base, weights.size()),
                  std::span<std::uint32_t>(s.alias_.data() + base, weights.size()));
    }
  }
  return s;
}

std::size_t WalkSampler::edge_slot(std::size_t previous, std::size_t current) const {
  const auto nbrs = neighbors(previous);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), static_cast<std::uint32_t>(current));
  if (it == nbrs.end() || *it != current) throw std::out_of_range("not an edge");
  return offsets_[previous] + static_cast<std::size_t>(it - nbrs.begin());
}

std::size_t WalkSampler::first_step(std::size_t start, Rng& rng) const {
  return neighbors(start)[uniform_below(rng, degree(start))];
}

std::size_t WalkSampler::next(std::size_t previous, std::size_t current, Rng& rng) const {
  const std::size_t slot = edge_slot(previous, current);
  const std::size_t base = table_offsets_[slot];
  const std::size_t k = uniform_below(rng, degree(current));
  const std::size_t pick = uniform01(rng) < accept_[base + k] ? k : alias_[base + k];
  return neighbors(current)[pick];
}

std::vector<double> WalkSampler::transition_probabilities(std::size_t previous,
                                                          std::size_t current) const {
  const std::size_t base = table_offsets_[edge_slot(previous, current)];
  const std::size_t deg = degree(current);
  std::vector<double> probs(deg, 0.0);
  for (std::size_t k = 0; k < deg; ++k) {
    probs[k] += accept_[base + k];
    probs[alias_[base + k]] += 1.0 - accept_[base + k];
  }
  for (double& p : probs) p /= static_cast<double>(deg);
  return probs;
}

NodeTokens assign_node_tokens(const LabeledGraph& g) {
  NodeTokens out;
  const std::size_t n = g.node_count();
  out.tokens.resize(n);
  out.shadowed.assign(n, false);
  std::map<std::string, std::size_t> owner;  // token -> node with smallest id
  for (std::size_t i = 0; i < n; ++i) {
    out.tokens[i] = normalize_label(g.node(i).label);
    auto [it, inserted] = owner.emplace(out.tokens[i], i);
    if (!inserted && g.node(i).id < g.node(it->second).id) it->second = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (owner.at(out.tokens[i]) == i) continue;
    logger().debug("node2vec: label '{}' of {} collides with {}; using the node id", out.tokens[i],
                   g.node(i).id, g.node(owner.at(out.tokens[i])).id);
    out.shadowed[i] = true;
    out.tokens[i] = g.node(i).id;
    ++out.collisions;
  }
  if (out.collisions > 0) {
    logger().warn("node2vec: {} node label(s) collide after normalization", out.collisions);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> generate_walk_indices(const WalkSampler& s,
                                                              const WalkConfig& cfg) {
  cfg.validate();
  std::vector<std::uint32_t> starts;
  for (std::size_t v = 0; v < s.node_count(); ++v) {
    if (s.degree(v) > 0) starts.push_back(static_cast<std::uint32_t>(v));
  }
  const std::size_t per_round = starts.size();
  std::vector<std::vector<std::uint32_t>> walks(cfg.n_walks * per_round);

  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(walks.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t w = 0; w < total; ++w) {
    const std::size_t round = static_cast<std::size_t>(w) / per_round;
    const std::uint32_t start = starts[static_cast<std::size_t>(w) % per_round];
    Rng rng = make_rng(cfg.seed, {start, round});
    auto& walk = walks[static_cast<std::size_t>(w)];
    walk.reserve(cfg.walk_length);
    walk.push_back(start);
    walk.push_back(static_cast<std::uint32_t>(s.first_step(start, rng)));
    while (walk.size() < cfg.walk_length) {
      const std::size_t prev = walk[walk.size() - 2];
      const std::size_t cur = walk.back();
      walk.push_back(static_cast<std::uint32_t>(s.next(prev, cur, rng)));
    }
  }
  return walks;
}

Corpus generate_walks(const WalkSampler& s, const LabeledGraph& g, const WalkConfig& cfg) {
  const NodeTokens names = assign_node_tokens(g);
  const auto walks = generate_walk_indices(s, cfg);
  Corpus corpus;
  corpus.reserve(walks.size());
  for (const auto& walk : walks) {
    std::vector<std::string> sentence;
    sentence.reserve(walk.size());
    for (std::uint32_t v : walk) sentence.push_back(names.tokens[v]);
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

EmbeddingMatrix train_node2vec(const LabeledGraph& g, const WalkConfig& walk,
                               const SgnsConfig& sgns, TrainingLog* log) {
  const WalkSampler sampler = build_transition_tables(g, walk);
  const Corpus corpus = generate_walks(sampler, g, walk);
  logger().info("node2vec: {} walks of length {}", corpus.size(), walk.walk_length);
  EmbeddingMatrix trained = train_sgns(corpus, sgns, log);

  const NodeTokens names = assign_node_tokens(g);
  std::size_t shadowed = 0;
  for (bool b : names.shadowed) shadowed += b ? 1 : 0;
  if (shadowed == 0) return trained;
  std::unordered_map<std::string, bool> drop;
  for (std::size_t i = 0; i < names.tokens.size(); ++i) {
    if (names.shadowed[i]) drop.emplace(names.tokens[i], true);
  }
  EmbeddingMatrix kept(trained.dim());
  for (std::size_t i = 0; i < trained.size(); ++i) {
    if (!drop.count(trained.token(i))) kept.append(trained.token(i), trained.row(i));
  }
  return kept;
}

}  // namespace lsi
