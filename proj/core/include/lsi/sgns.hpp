#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lsi/embedding.hpp"

namespace lsi {

/// Sentences (or walks) of whitespace-free tokens.
using Corpus = std::vector<std::vector<std::string>>;

/// One sentence per line, tokens separated by single spaces.
Corpus read_corpus(const std::filesystem::path& path);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// Skip-gram with negative sampling. Field defaults are the biomedical text
/// settings (window 30, 10 negatives, alpha 0.05, sample 1e-4, 10 epochs, dim 200).
struct SgnsConfig {
  std::size_t dim = 200;
  std::size_t epochs = 10;
  std::size_t negative = 10;
  double alpha = 0.05;       // initial learning rate, decays linearly to alpha / 10
  double sample = 1e-4;      // frequency subsampling threshold; 0 disables
  std::size_t window = 30;   // maximum context distance
  std::size_t min_count = 5;
  std::uint64_t seed = 1;
  std::size_t threads = 1;   // > 1 enables lock-free (non-reproducible) training

  static SgnsConfig text_defaults() { return {}; }
  /// Graph-walk settings: dim 200, window 15, 50 epochs; 5 negatives, alpha
  /// 0.025, no subsampling, every node kept.
  static SgnsConfig node2vec_defaults();

  void validate() const;
};

struct TrainingLog {
  std::size_t vocab_size = 0;
  std::size_t corpus_tokens = 0;     // tokens in vocabulary, before subsampling
  std::vector<double> epoch_loss;    // mean per-example loss, one entry per epoch
};

/// Returns the input (center-word) vectors for every token with count >= min_count,
/// ordered by descending frequency then token. Deterministic for threads == 1.
EmbeddingMatrix train_sgns(const Corpus& corpus, const SgnsConfig& cfg, TrainingLog* log = nullptr);

/// Loss and gradients for one skip-gram example:
///   loss = -[label*log s(c.o) + (1-label)*log s(-c.o)] - sum_k log s(-c.n_k)
/// where c is the center vector, o the context vector and n_k the negatives.
struct SgnsGradients {
  double loss = 0.0;
  std::vector<double> center;
  std::vector<double> context;
  std::vector<std::vector<double>> negatives;
};

SgnsGradients sgns_pair_gradient(std::span<const double> center, std::span<const double> context,
                                 const std::vector<std::span<const double>>& negatives,
                                 double label = 1.0);

/// Numerically stable log(1 + exp(x)).
double softplus(double x);
double sigmoid(double x);

}  // namespace lsi
