#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "lsi/error.hpp"
#include "lsi/imputation.hpp"
#include "lsi/knn_mst.hpp"
#include "lsi/nnls.hpp"
#include "oracles.hpp"

namespace lsi {
namespace {

using testing::Matrix;
using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

EmbeddingMatrix to_embedding(const Matrix& rows, const std::string& prefix = "r") {
  EmbeddingMatrix m(rows.empty() ? 1 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.append(prefix + std::to_string(i), rows[i]);
  return m;
}

TEST(KnnMst, CollinearExample) {
  const auto g = knn_mst(to_embedding({{0}, {1}, {2}, {10}}), 1);
  EXPECT_EQ(g.mst_edges, (Edges{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(g.adjacency, (std::vector<std::vector<std::size_t>>{{1}, {0, 2}, {1, 3}, {2}}));
  EXPECT_EQ(g.edge_count(), 3u);
}

TEST(KnnMst, FullDegreeGivesCompleteGraph) {
  std::mt19937_64 rng(1);
  const auto g = knn_mst(to_embedding(testing::random_matrix(rng, 7, 3)), 6);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(g.degree(i), 6u);
}

TEST(KnnMst, MatchesKruskalAndDegreeBound) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = testing::random_matrix(rng, 40, 5);
    const auto emb = to_embedding(pts);
    EXPECT_EQ(euclidean_mst(emb), testing::kruskal_mst(pts));
    for (std::size_t k : {1u, 3u, 5u}) {
      const auto g = knn_mst(emb, k);
      EXPECT_GE(g.min_degree(), k);
      for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v : g.adjacency[u]) {
          EXPECT_NE(u, v);
          const auto& back = g.adjacency[v];
          EXPECT_TRUE(std::binary_search(back.begin(), back.end(), u));
        }
    }
  }
}

TEST(KnnMst, TiesBreakBySmallerIndex) {
  // Row 1 is equidistant from rows 0 and 2.
  const auto nn = k_nearest_neighbors(to_embedding({{0}, {1}, {2}}), 1);
  EXPECT_EQ(nn[1], std::vector<std::size_t>{0});
}

TEST(KnnMst, Preconditions) {
  EXPECT_THROW(knn_mst(to_embedding({{0}}), 1), InputError);
  EXPECT_THROW(knn_mst(to_embedding({{0}, {1}}), 2), InputError);
  EXPECT_THROW(knn_mst(to_embedding({{0}, {1}}), 0), InputError);
}

NnlsResult solve(const Matrix& a, const std::vector<double>& b) {
  // columns of a (given row-major)
  std::vector<std::vector<double>> cols(a[0].size(), std::vector<double>(a.size()));
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a[0].size(); ++c) cols[c][r] = a[r][c];
  std::vector<std::span<const double>> views(cols.begin(), cols.end());
  return nnls(views, b);
}

TEST(Nnls, ExactColumn) {
  const auto r = solve({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}, {0, 1, 0, 0});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.x, (std::vector<double>{0, 1, 0}));
}

TEST(Nnls, NonnegativityBinds) {
  const auto r = solve({{1}, {2}}, {-1, -2});
  EXPECT_EQ(r.x, (std::vector<double>{0}));
  EXPECT_NEAR(r.residual_norm, std::sqrt(5.0), 1e-12);
}

TEST(Nnls, MatchesProjectedGradient) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 4 + rng() % 8, n = 1 + rng() % 4;
    const auto a = testing::random_matrix(rng, m, n);
    const auto b = testing::random_matrix(rng, 1, m)[0];
    const auto r = solve(a, b);
    const auto ref = testing::nnls_projected_gradient(a, b);
    for (double v : r.x) EXPECT_GE(v, 0.0);
    EXPECT_NEAR(r.residual_norm, testing::residual_norm(a, ref, b), 1e-8);
    EXPECT_NEAR(r.residual_norm, testing::residual_norm(a, r.x, b), 1e-12);
  }
}

TEST(Nnls, DuplicateColumnsDoNotCycle) {
  const auto r = solve({{1, 1, 0}, {1, 1, 1}, {0, 0, 1}}, {2, 3, 1});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.residual_norm, 0.0, 1e-12);
}

NeighborGraph graph_of(std::size_t n, const Edges& edges) {
  NeighborGraph g;
  g.adjacency.resize(n);
  for (auto [u, v] : edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  for (auto& a : g.adjacency) std::sort(a.begin(), a.end());
  return g;
}

TEST(SolveWeights, SymmetricMidpoint) {
  const auto dom = to_embedding({{-1, 1}, {1, 1}, {0, 1}});
  const std::size_t anchors[] = {0, 1};
  const auto w = solve_weights(dom, graph_of(3, {{0, 2}, {1, 2}}), anchors);
  ASSERT_EQ(w.rows[2].size(), 2u);
  EXPECT_NEAR(w.rows[2][0].weight, 0.5, 1e-12);
  EXPECT_NEAR(w.rows[2][1].weight, 0.5, 1e-12);
  ASSERT_EQ(w.rows[0].size(), 1u);
  EXPECT_EQ(w.rows[0][0].column, 0u);
  EXPECT_EQ(w.rows[0][0].weight, 1.0);
}

TEST(SolveWeights, ExactNeighborAndFallback) {
  // Row 2 equals row 0; row 3 points away from its only neighbor (NNLS gives zero).
  const auto dom = to_embedding({{1, 0}, {0, 1}, {1, 0}, {-1, 0}});
  const std::size_t anchors[] = {0, 1};
  const auto w = solve_weights(dom, graph_of(4, {{0, 2}, {1, 2}, {0, 3}}), anchors);
  EXPECT_NEAR(w.rows[2][0].weight, 1.0, 1e-12);
  EXPECT_NEAR(w.rows[2][1].weight, 0.0, 1e-12);
  EXPECT_EQ(w.uniform_fallbacks, 1u);
  EXPECT_EQ(w.rows[3][0].weight, 1.0);
}

TEST(SolveWeights, BeatsUniformReconstruction) {
  std::mt19937_64 rng(4);
  const auto pts = testing::random_matrix(rng, 30, 4);
  const auto dom = to_embedding(pts);
  const auto g = knn_mst(dom, 4);
  const std::size_t anchors[] = {0, 1, 2};
  const auto w = solve_weights(dom, g, anchors);
  double err_w = 0, err_u = 0;
  for (std::size_t i = 3; i < 30; ++i) {
    std::vector<double> rw(4, 0.0), ru(4, 0.0);
    for (const auto& e : w.rows[i])
      for (int d = 0; d < 4; ++d) rw[d] += e.weight * pts[e.column][d];
    for (std::size_t j : g.adjacency[i])
      for (int d = 0; d < 4; ++d) ru[d] += pts[j][d] / g.degree(i);
    for (int d = 0; d < 4; ++d) {
      err_w += (rw[d] - pts[i][d]) * (rw[d] - pts[i][d]);
      err_u += (ru[d] - pts[i][d]) * (ru[d] - pts[i][d]);
    }
    EXPECT_NEAR(w.row_sum(i), 1.0, 1e-9);
  }
  EXPECT_LE(err_w, err_u);
}

WeightMatrix hand_weights(std::vector<std::vector<WeightMatrix::Entry>> rows,
                          std::vector<bool> anchor) {
  WeightMatrix w;
  w.rows = std::move(rows);
  w.is_anchor = std::move(anchor);
  return w;
}

TEST(Impute, AllAnchorNeighborsConvergeInOneStep) {
  const auto sem = to_embedding({{1, 0}, {0, 1}}, "s");
  const auto w = hand_weights({{{0, 1.0}}, {{1, 1.0}}, {{0, 0.25}, {1, 0.75}}},
                              {true, true, false});
  const AnchorMap anchors{{{0, 0}, {1, 1}}};
  const std::vector<std::string> tokens = {"s0", "s1", "new"};
  const auto r = impute(w, anchors, sem, tokens, LsiConfig{});
  ASSERT_EQ(r.imputed.size(), 1u);
  EXPECT_EQ(r.imputed.token(0), "new");
  EXPECT_NEAR(r.imputed.row(0)[0], 0.25, 1e-15);
  EXPECT_NEAR(r.imputed.row(0)[1], 0.75, 1e-15);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 2u);
}

TEST(Impute, FourNodeChainMatchesLinearSolve) {
  // a - u - v - b with u = .5a + .5v and v = .6u + .4b.
  const auto sem = to_embedding({{1, 3}, {-2, 5}}, "s");
  const auto w = hand_weights({{{0, 1.0}}, {{0, 0.5}, {2, 0.5}}, {{1, 0.6}, {3, 0.4}}, {{3, 1.0}}},
      {true, false, false, true});
  const AnchorMap anchors{{{0, 0}, {1, 3}}};
  const std::vector<std::string> tokens = {"s0", "u", "v", "s1"};
  LsiConfig cfg;
  cfg.eta = 1e-10;
  const auto r = impute(w, anchors, sem, tokens, cfg);
  for (int d = 0; d < 2; ++d) {
    const double a = sem.row(0)[d], b = sem.row(1)[d];
    const auto [u, v] = testing::solve2x2(1.0, -0.5, -0.6, 1.0, 0.5 * a, 0.4 * b);
    EXPECT_NEAR(r.imputed.row(0)[d], u, 1e-8);
    EXPECT_NEAR(r.imputed.row(1)[d], v, 1e-8);
  }
}

TEST(Impute, UnreachablePolicies) {
  // Node 2 only references node 3 and vice versa: no path to the anchor.
  const auto sem = to_embedding({{2, 4}}, "s");
  const auto w = hand_weights({{{0, 1.0}}, {{0, 1.0}}, {{3, 1.0}}, {{2, 1.0}}},
                              {true, false, false, false});
  const AnchorMap anchors{{{0, 0}}};
  const std::vector<std::string> tokens = {"s0", "x", "y", "z"};
  LsiConfig cfg;
  const auto r = impute(w, anchors, sem, tokens, cfg);
  EXPECT_EQ(r.unreachable, (std::vector<std::string>{"y", "z"}));
  EXPECT_EQ(r.imputed.row(1)[0], 2.0);
  cfg.unreachable = UnreachablePolicy::kError;
  EXPECT_THROW(impute(w, anchors, sem, tokens, cfg), InputError);
}

TEST(Impute, MaxItersFlagsNonConvergence) {
  const auto sem = to_embedding({{1}, {-1}}, "s");
  const auto w = hand_weights({{{0, 1.0}}, {{0, 0.01}, {2, 0.99}}, {{1, 0.99}, {3, 0.01}}, {{3, 1.0}}},
      {true, false, false, true});
  const AnchorMap anchors{{{0, 0}, {1, 3}}};
  const std::vector<std::string> tokens = {"s0", "u", "v", "s1"};
  LsiConfig cfg;
  cfg.max_iters = 3;
  const auto r = impute(w, anchors, sem, tokens, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3u);
}

TEST(LsiPipeline, NothingToImpute) {
  const auto sem = to_embedding({{1, 0}, {0, 1}, {1, 1}});
  const auto dom = to_embedding({{0, 0, 1}, {0, 1, 0}});
  const auto r = lsi_pipeline(sem, dom, LsiConfig{1});
  EXPECT_EQ(r.imputed.size(), 0u);
}

TEST(LsiPipeline, ZeroAnchorsIsFatal) {
  const auto sem = to_embedding({{1, 0}}, "a");
  const auto dom = to_embedding({{1}, {2}}, "b");
  EXPECT_THROW(lsi_pipeline(sem, dom, LsiConfig{1}), InputError);
}

TEST(LsiPipeline, ImputesMissingTokensAndBeatsMeanBaseline) {
  const auto bench = testing::make_latent_benchmark(8, 120, 3, 20, 0.01, 30);
  EmbeddingMatrix sem(20), dom(20);
  for (std::size_t i = 0; i < 120; ++i) {
    dom.append(bench.tokens[i], bench.domain[i]);
    if (i >= bench.hidden) sem.append(bench.tokens[i], bench.semantic_truth[i]);
  }
  LsiConfig cfg;
  cfg.k = 8;
  const auto r = lsi_pipeline(sem, dom, cfg);
  ASSERT_EQ(r.imputed.size(), 30u);
  EXPECT_EQ(r.anchor_count, 90u);
  std::vector<double> mean(20, 0.0);
  for (std::size_t i = 30; i < 120; ++i)
    for (int d = 0; d < 20; ++d) mean[d] += bench.semantic_truth[i][d] / 90.0;
  double lsi = 0, base = 0;
  for (std::size_t i = 0; i < 30; ++i) {
    const auto row = r.imputed.row(*r.imputed.find(bench.tokens[i]));
    lsi += testing::cosine({row.begin(), row.end()}, bench.semantic_truth[i]);
    base += testing::cosine(mean, bench.semantic_truth[i]);
  }
  EXPECT_GT(lsi / 30, base / 30 + 0.2);
}

TEST(LsiConfig, Validation) {
  LsiConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.k, 50u);
  EXPECT_DOUBLE_EQ(cfg.eta, 1e-4);
  cfg.k = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = LsiConfig{};
  cfg.eta = 0;
  EXPECT_THROW(cfg.validate(), InputError);
}

}  // namespace
}  // namespace lsi
