#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixture.hpp"
#include "lsi/error.hpp"
#include "lsi/evaluation.hpp"
#include "lsi/sgns.hpp"
#include "oracles.hpp"

namespace lsi {
namespace {


TEST(SgnsGradient, ZeroVectorsClosedForm) {
  const std::vector<double> zero(4, 0.0);
  const std::vector<double> other = {1.0, -2.0, 0.5, 3.0};
  for (double label : {1.0, 0.0}) {
    const auto g = sgns_pair_gradient(zero, other, {}, label);
    // d loss / d center = (sigma(0) - label) * context
    for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(g.center[i], (0.5 - label) * other[i]);
    for (double v : g.context) EXPECT_DOUBLE_EQ(v, 0.0);
    EXPECT_NEAR(g.loss, std::log(2.0), 1e-15);
  }
}

TEST(SgnsGradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto vec = [&](std::size_t d) {
    std::vector<double> v(d);
    for (auto& x : v) x = u(rng);
    return v;
  };
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 8;
    auto c = vec(d), o = vec(d);
    std::vector<std::vector<double>> negs = {vec(d), vec(d), vec(d)};
    const double label = trial % 2 ? 1.0 : 0.0;
    std::vector<std::span<const double>> nv(negs.begin(), negs.end());
    const auto g = sgns_pair_gradient(c, o, nv, label);
    EXPECT_NEAR(g.loss, testing::sgns_loss(c, o, negs, label), 1e-12);
    auto check = [&](std::vector<double>& x, const std::vector<double>& analytic) {
      for (std::size_t i = 0; i < d; ++i) {
        const double saved = x[i];
        x[i] = saved + h;
        const double up = testing::sgns_loss(c, o, negs, label);
        x[i] = saved - h;
        const double down = testing::sgns_loss(c, o, negs, label);
        x[i] = saved;
        EXPECT_NEAR(analytic[i], (up - down) / (2 * h), 1e-8);
      }
    };
    check(c, g.center);
    check(o, g.context);
    for (std::size_t k = 0; k < negs.size(); ++k) check(negs[k], g.negatives[k]);
  }
}

TEST(Sigmoid, StableAtExtremes) {
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(800.0), 1.0, 1e-15);
  EXPECT_NEAR(sigmoid(-800.0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(softplus(-800.0), 0.0);
  EXPECT_DOUBLE_EQ(softplus(800.0), 800.0);
  EXPECT_NEAR(softplus(0.0), std::log(2.0), 1e-15);
}

Corpus two_clusters(int n) {
  Corpus c;
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> s;
    for (int j = 0; j < 12; ++j) s.push_back(i % 2 ? (j % 2 ? "a" : "b") : (j % 2 ? "x" : "y"));
    c.push_back(s);
  }
  return c;
}

SgnsConfig small_config() {
  SgnsConfig cfg;
  cfg.dim = 10;
  cfg.epochs = 5;
  cfg.window = 3;
  cfg.negative = 3;
  cfg.min_count = 1;
  cfg.sample = 0.0;
  cfg.alpha = 0.025;
  return cfg;
}

TEST(TrainSgns, CoOccurrenceSeparation) {
  const auto m = train_sgns(two_clusters(200), small_config());
  ASSERT_EQ(m.size(), 4u);
  auto row = [&](const char* t) { return m.row(*m.find(t)); };
  EXPECT_GT(cosine_similarity(row("a"), row("b")), cosine_similarity(row("a"), row("x")));
  EXPECT_GT(cosine_similarity(row("x"), row("y")), cosine_similarity(row("b"), row("y")));
}

TEST(TrainSgns, DeterministicVocabularyAndLoss) {
  Corpus c = two_clusters(50);
  c.push_back({"rare"});
  SgnsConfig cfg = small_config();
  cfg.min_count = 2;
  TrainingLog log;
  const auto a = train_sgns(c, cfg, &log);
  EXPECT_EQ(a, train_sgns(c, cfg));
  EXPECT_FALSE(a.contains("rare"));
  EXPECT_EQ(log.vocab_size, 4u);
  EXPECT_EQ(log.corpus_tokens, 600u);
  ASSERT_EQ(log.epoch_loss.size(), 5u);
  EXPECT_LT(log.epoch_loss.back(), log.epoch_loss.front());
}

TEST(TrainSgns, ParallelModeRuns) {
  SgnsConfig cfg = small_config();
  cfg.threads = 2;
  const auto m = train_sgns(two_clusters(100), cfg);
  EXPECT_EQ(m.size(), 4u);
}

TEST(SgnsConfig, DefaultsAndValidation) {
  const auto t = SgnsConfig::text_defaults();
  EXPECT_EQ(t.dim, 200u);
  EXPECT_EQ(t.window, 30u);
  EXPECT_EQ(t.negative, 10u);
  EXPECT_DOUBLE_EQ(t.alpha, 0.05);
  EXPECT_DOUBLE_EQ(t.sample, 1e-4);
  EXPECT_EQ(t.epochs, 10u);
  const auto n = SgnsConfig::node2vec_defaults();
  EXPECT_EQ(n.dim, 200u);
  EXPECT_EQ(n.window, 15u);
  EXPECT_EQ(n.epochs, 50u);
  SgnsConfig bad = t;
  bad.dim = 0;
  EXPECT_THROW(bad.validate(), InputError);
  bad = t;
  bad.alpha = -1;
  EXPECT_THROW(bad.validate(), InputError);
}

TEST(Corpus, ReadWriteRoundTrip) {
  const auto dir = testing::make_temp_dir("corpus");
  const Corpus c = {{"a", "b"}, {"c"}, {"d", "e", "f"}};
  write_corpus(c, dir / "c.txt.gz");
  EXPECT_EQ(read_corpus(dir / "c.txt.gz"), c);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace lsi
