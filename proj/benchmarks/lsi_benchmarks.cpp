#include <benchmark/benchmark.h>

#include <random>

#include "lsi/corpus.hpp"
#include "lsi/imputation.hpp"
#include "lsi/knn_mst.hpp"
#include "lsi/log.hpp"
#include "lsi/nnls.hpp"
#include "lsi/node2vec.hpp"
#include "lsi/sgns.hpp"

namespace {

lsi::EmbeddingMatrix random_points(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  lsi::EmbeddingMatrix m(dim);
  std::vector<double> row(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& v : row) v = g(rng);
    m.append("t" + std::to_string(i), row);
  }
  return m;
}

void quiet() { lsi::set_log_level(spdlog::level::err); }

void BM_KnnMst(benchmark::State& state) {
  quiet();
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 50, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lsi::knn_mst(pts, 10));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KnnMst)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNSquared);

void BM_Nnls(benchmark::State& state) {
  const std::size_t cols = static_cast<std::size_t>(state.range(0));
  const auto pts = random_points(cols + 1, 200, 2);
  std::vector<std::span<const double>> a;
  for (std::size_t i = 0; i < cols; ++i) a.push_back(pts.row(i));
  for (auto _ : state) benchmark::DoNotOptimize(lsi::nnls(a, pts.row(cols)));
}
BENCHMARK(BM_Nnls)->Arg(10)->Arg(50)->Arg(100);

void BM_LsiPipeline(benchmark::State& state) {
  quiet();
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto domain = random_points(n, 50, 3);
  const auto all_semantic = random_points(n, 100, 4);
  lsi::EmbeddingMatrix semantic(100);
  for (std::size_t i = n / 4; i < n; ++i) semantic.append(all_semantic.token(i), all_semantic.row(i));
  lsi::LsiConfig cfg;
  cfg.k = 10;
  for (auto _ : state) benchmark::DoNotOptimize(lsi::lsi_pipeline(semantic, domain, cfg));
}
BENCHMARK(BM_LsiPipeline)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

lsi::LabeledGraph ring_lattice(std::size_t n) {
  lsi::LabeledGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node("n" + std::to_string(i), "node " + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 1; d <= 3; ++d) g.add_edge(i, (i + d) % n);
  return g;
}

void BM_Walks(benchmark::State& state) {
  const auto g = ring_lattice(static_cast<std::size_t>(state.range(0)));
  lsi::WalkConfig cfg;
  const auto sampler = lsi::build_transition_tables(g, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(lsi::generate_walk_indices(sampler, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.n_walks * cfg.walk_length);
}
BENCHMARK(BM_Walks)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Sgns(benchmark::State& state) {
  quiet();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> word(0, 999);
  lsi::Corpus corpus(2000);
  for (auto& s : corpus)
    for (int i = 0; i < 20; ++i) s.push_back("w" + std::to_string(word(rng)));
  lsi::SgnsConfig cfg;
  cfg.dim = 100;
  cfg.epochs = 1;
  cfg.window = 5;
  cfg.negative = 5;
  cfg.min_count = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lsi::train_sgns(corpus, cfg));
  state.SetItemsProcessed(state.iterations() * 2000 * 20);
}
BENCHMARK(BM_Sgns)->Unit(benchmark::kMillisecond);

void BM_Filter(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const std::vector<std::string> words = {"anemia", "the", "of", "rales", "lasix", "patients",
                                          "were",   "given", "heart", "x-ray"};
  std::vector<std::string> lines(10000);
  for (auto& l : lines)
    for (int i = 0; i < 15; ++i) l += words[rng() % words.size()] + " ";
  const std::set<std::string> terms = {"anemia", "rale", "x-ray"};
  for (auto _ : state) {
    std::vector<std::string> kept;
    benchmark::DoNotOptimize(lsi::filter_corpus(lines, terms, kept));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Filter)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
