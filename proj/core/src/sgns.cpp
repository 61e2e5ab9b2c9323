#include "lsi/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "lsi/alias_table.hpp"
#include "lsi/error.hpp"
#include "lsi/io.hpp"
#include "lsi/log.hpp"
#include "lsi/random.hpp"

namespace lsi {

Corpus read_corpus(const std::filesystem::path& path) {
  Corpus corpus;
  LineReader in(path);
  std::string line;
  while (in.next(line)) {
    std::vector<std::string> sentence;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) sentence.emplace_back(line, i, j - i);
      i = j;
    }
    if (!sentence.empty()) corpus.push_back(std::move(sentence));
  }
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  LineWriter out(path);
  std::string line;
  for (const auto& sentence : corpus) {
    line.clear();
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i > 0) line += ' ';
      line += sentence[i];
    }
    out.write_line(line);
  }
  out.close();
}

SgnsConfig SgnsConfig::node2vec_defaults() {
  SgnsConfig cfg;
  cfg.dim = 200;
  cfg.window = 15;
  cfg.epochs = 50;
  cfg.negative = 5;
  cfg.alpha = 0.025;
  cfg.sample = 0.0;
  cfg.min_count = 1;
  return cfg;
}

void SgnsConfig::validate() const {
  std::string problems;
  if (dim < 1) problems += "\n  dim: must be >= 1";
  if (epochs < 1) problems += "\n  epochs: must be >= 1";
  if (negative < 1) problems += "\n  negative: must be >= 1";
  if (!(alpha > 0.0) || !std::isfinite(alpha)) problems += "\n  alpha: must be > 0";
  if (!(sample >= 0.0) || !std::isfinite(sample)) problems += "\n  sample: must be >= 0";
  if (window < 1) problems += "\n  window: must be >= 1";
  if (threads < 1) problems += "\n  threads: must be >= 1";
  if (!problems.empty()) throw InputError("invalid sgns config:" + problems);
}

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SgnsGradients sgns_pair_gradient(std::span<const double> center, std::span<const double> context,
                                 const std::vector<std::span<const double>>& negatives,
                                 double label) {
  const std::size_t dim = center.size();
  SgnsGradients g;
  g.center.assign(dim, 0.0);
  g.context.assign(dim, 0.0);

  // d/df of -[y log s(f) + (1-y) log s(-f)] is s(f) - y.
  const double f = dot(center, context);
  g.loss = label * softplus(-f) + (1.0 - label) * softplus(f);
  const double coeff = sigmoid(f) - label;
  for (std::size_t i = 0; i < dim; ++i) {
    g.center[i] += coeff * context[i];
    g.context[i] = coeff * center[i];
  }
  for (const auto& neg : negatives) {
    const double fn = dot(center, neg);
    g.loss += softplus(fn);
    const double cn = sigmoid(fn);
    std::vector<double> grad(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      g.center[i] += cn * neg[i];
      grad[i] = cn * center[i];
    }
    g.negatives.push_back(std::move(grad));
  }
  return g;
}

namespace {

struct Vocabulary {
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> counts;
  std::unordered_map<std::string, std::uint32_t> ids;
};

Vocabulary build_vocabulary(const Corpus& corpus, std::size_t min_count) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& sentence : corpus) {
    for (const auto& token : sentence) ++counts[token];
  }
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [token, count] : counts) {
    if (count >= min_count) kept.emplace_back(token, count);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Vocabulary v;
  for (auto& [token, count] : kept) {
    v.ids.emplace(token, static_cast<std::uint32_t>(v.tokens.size()));
    v.tokens.push_back(std::move(token));
    v.counts.push_back(count);
  }
  return v;
}

class SgnsTrainer {
 public:
  SgnsTrainer(const Corpus& corpus, const SgnsConfig& cfg) : cfg_(cfg) {
    vocab_ = build_vocabulary(corpus, cfg.min_count);
    if (vocab_.tokens.empty()) {
      throw InputError("empty vocabulary after min_count=" + std::to_string(cfg.min_count));
    }
    for (const auto& sentence : corpus) {
      std::vector<std::uint32_t> ids;
      ids.reserve(sentence.size());
      for (const auto& token : sentence) {
        if (auto it = vocab_.ids.find(token); it != vocab_.ids.end()) ids.push_back(it->second);
      }
      total_tokens_ += ids.size();
      if (!ids.empty()) sentences_.push_back(std::move(ids));
    }

    const std::size_t n = vocab_.tokens.size();
    keep_prob_.assign(n, 1.0);
    if (cfg.sample > 0.0) {
      const double threshold = cfg.sample * static_cast<double>(total_tokens_);
      for (std::size_t w = 0; w < n; ++w) {
        const double c = static_cast<double>(vocab_.counts[w]);
        keep_prob_[w] = std::min(1.0, (std::sqrt(c / threshold) + 1.0) * threshold / c);
      }
    }
    std::vector<double> noise(n);
    for (std::size_t w = 0; w < n; ++w) {
      noise[w] = std::pow(static_cast<double>(vocab_.counts[w]), 0.75);
    }
    noise_ = AliasTable(noise);

    const std::size_t dim = cfg.dim;
    input_.resize(n * dim);
    output_.assign(n * dim, 0.0);
    Rng init = make_rng(cfg.seed, {0x696e6974});
    for (double& x : input_) x = (uniform01(init) - 0.5) / static_cast<double>(dim);
  }

  void train(TrainingLog* log) {
    const double total_work = static_cast<double>(cfg_.epochs) * static_cast<double>(total_tokens_);
    for (std::size_t epoch = 0; epoch < cfg_.epochs; ++epoch) {
      double loss = 0.0;
      std::uint64_t examples = 0;
      if (cfg_.threads <= 1) {
        std::vector<double> scratch(cfg_.dim);
        std::vector<std::uint32_t> kept;
        for (std::size_t s = 0; s < sentences_.size(); ++s) {
          const double progress = static_cast<double>(processed_.load()) / total_work;
          Rng rng = make_rng(cfg_.seed, {epoch, s});
          train_sentence(sentences_[s], rng, learning_rate(progress), scratch, kept, loss,
                         examples);
          processed_ += sentences_[s].size();
        }
      } else {
        train_parallel(epoch, total_work, loss, examples);
      }
      const double mean = examples > 0 ? loss / static_cast<double>(examples) : 0.0;
      logger().debug("sgns: epoch {} mean loss {:.6f}", epoch + 1, mean);
      if (log) log->epoch_loss.push_back(mean);
    }
    if (log) {
      log->vocab_size = vocab_.tokens.size();
      log->corpus_tokens = total_tokens_;
    }
  }

  EmbeddingMatrix result() && {
    return EmbeddingMatrix(std::move(vocab_.tokens), std::move(input_), cfg_.dim);
  }

 private:
  double learning_rate(double progress) const {
    return cfg_.alpha * (1.0 - 0.9 * std::clamp(progress, 0.0, 1.0));
  }

  void train_parallel(std::size_t epoch, double total_work, double& loss, std::uint64_t& examples) {
    const std::size_t workers = cfg_.threads;
    std::vector<double> losses(workers, 0.0);
    std::vector<std::uint64_t> counts(workers, 0);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        std::vector<double> scratch(cfg_.dim);
        std::vector<std::uint32_t> kept;
        for (std::size_t s = t; s < sentences_.size(); s += workers) {
          const double progress = static_cast<double>(processed_.load()) / total_work;
          Rng rng = make_rng(cfg_.seed, {epoch, s});
          train_sentence(sentences_[s], rng, learning_rate(progress), scratch, kept, losses[t],
                         counts[t]);
          processed_ += sentences_[s].size();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (std::size_t t = 0; t < workers; ++t) {
      loss += losses[t];
      examples += counts[t];
    }
  }

  void train_sentence(const std::vector<std::uint32_t>& sentence, Rng& rng, double alpha,
                      std::vector<double>& grad_center, std::vector<std::uint32_t>& kept,
                      double& loss, std::uint64_t& examples) {
    kept.clear();
    for (std::uint32_t w : sentence) {
      if (keep_prob_[w] >= 1.0 || uniform01(rng) < keep_prob_[w]) kept.push_back(w);
    }
    const std::size_t dim = cfg_.dim;
    const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(kept.size());
    for (std::ptrdiff_t pos = 0; pos < len; ++pos) {
      const std::ptrdiff_t reach =
          static_cast<std::ptrdiff_t>(cfg_.window - uniform_below(rng, cfg_.window));
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, pos - reach);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(len - 1, pos + reach);
      double* center = input_.data() + static_cast<std::size_t>(kept[pos]) * dim;
      for (std::ptrdiff_t c = lo; c <= hi; ++c) {
        if (c == pos) continue;
        std::fill(grad_center.begin(), grad_center.end(), 0.0);
        const std::uint32_t context = kept[c];
        for (std::size_t d = 0; d <= cfg_.negative; ++d) {
          std::uint32_t target;
          double label;
          if (d == 0) {
            target = context;
            label = 1.0;
          } else {
            target = static_cast<std::uint32_t>(noise_.sample(rng));
            if (target == context) continue;
            label = 0.0;
          }
          double* out = output_.data() + static_cast<std::size_t>(target) * dim;
          double f = 0.0;
          for (std::size_t i = 0; i < dim; ++i) f += center[i] * out[i];
          loss += label > 0.0 ? softplus(-f) : softplus(f);
          const double g = (label - sigmoid(f)) * alpha;
          for (std::size_t i = 0; i < dim; ++i) grad_center[i] += g * out[i];
          for (std::size_t i = 0; i < dim; ++i) out[i] += g * center[i];
        }
        for (std::size_t i = 0; i < dim; ++i) center[i] += grad_center[i];
        ++examples;
      }
    }
  }

  const SgnsConfig& cfg_;
  Vocabulary vocab_;
  std::vector<std::vector<std::uint32_t>> sentences_;
  std::size_t total_tokens_ = 0;
  std::vector<double> keep_prob_;
  AliasTable noise_;
  std::vector<double> input_;
  std::vector<double> output_;
  std::atomic<std::uint64_t> processed_{0};
};

}  // namespace

EmbeddingMatrix train_sgns(const Corpus& corpus, const SgnsConfig& cfg, TrainingLog* log) {
  cfg.validate();
  SgnsTrainer trainer(corpus, cfg);
  trainer.train(log);
  EmbeddingMatrix m = std::move(trainer).result();
  logger().info("sgns: trained {} vectors of dim {}", m.size(), m.dim());
  return m;
}

}  // namespace lsi
