#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lsi/embedding.hpp"

namespace lsi {

inline constexpr double kMaxHumanScore = 1600.0;

struct WordPair {
  std::string term1;
  std::string term2;
  double similarity = 0.0;
  double relatedness = 0.0;
  std::size_t line = 0;
};

struct WordPairDataset {
  std::vector<WordPair> records;

  std::set<std::string> terms() const;
  std::size_t size() const noexcept { return records.size(); }
};

/// CSV with header "Term1,Term2,Similarity,Relatedness"; double-quoted fields
/// allowed. Terms are normalized with normalize_label; scores must lie in
/// [0, 1600]; an unordered pair may appear only once.
WordPairDataset load_wordpair_dataset(const std::filesystem::path& path);
WordPairDataset parse_wordpair_csv(std::string_view text, std::string_view source = "<memory>");

struct VocabSplit {
  std::set<std::string> trained;
  std::set<std::string> imputed;
};

/// Seeded uniform random halving of `terms`; the trained half gets the extra
/// term when the count is odd.
VocabSplit split_vocab(const std::set<std::string>& terms, std::uint64_t seed);

enum class PairSubset { kTrainedTrained = 0, kImputedTrained = 1, kImputedImputed = 2 };
inline constexpr PairSubset kAllSubsets[] = {PairSubset::kTrainedTrained,
                                            PairSubset::kImputedTrained,
                                            PairSubset::kImputedImputed};
std::string_view subset_name(PairSubset s);

struct PairSplit {
  std::vector<WordPair> subsets[3];
  std::vector<WordPair> skipped;  // a term in neither vocabulary

  const std::vector<WordPair>& subset(PairSubset s) const { return subsets[static_cast<int>(s)]; }
  std::vector<WordPair>& subset(PairSubset s) { return subsets[static_cast<int>(s)]; }
};

/// Assigns every record by the membership of its two terms (order-insensitive).
/// Throws InputError if the vocabularies overlap.
PairSplit classify_pairs(const WordPairDataset& d, const std::set<std::string>& trained,
                         const std::set<std::string>& imputed);

/// u.v / (|u| |v|); throws InputError for a zero vector or mismatched sizes.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

/// Sample Pearson correlation; throws InputError for fewer than 2 points,
/// mismatched lengths or a constant input.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Below this many embeddable pairs a subset's statistics are flagged low_n.
inline constexpr std::size_t kLowPairCount = 10;

struct CorrelationStats {
  bool evaluable = false;
  double r = 0.0;
  double boot_mean = 0.0;
  double boot_std = 0.0;
  std::size_t n = 0;
  std::size_t valid_resamples = 0;       // resamples with a defined correlation
  std::size_t degenerate_resamples = 0;  // constant resampled values
  bool low_n = false;
};

struct SubsetReport {
  std::size_t records = 0;     // pairs assigned to the subset
  std::size_t embeddable = 0;  // pairs whose two terms have vectors
  CorrelationStats similarity;
  CorrelationStats relatedness;
};

struct EvalReport {
  SubsetReport subsets[3];
  std::size_t skipped = 0;
  std::size_t n_resamples = 0;
  std::uint64_t seed = 0;

  const SubsetReport& subset(PairSubset s) const { return subsets[static_cast<int>(s)]; }
  std::size_t evaluable_subsets() const;
};

/// Per subset and score type: Pearson r between cosine similarity and the human
/// score, plus the mean and standard deviation of r over `n_resamples`
/// resamples-with-replacement of the subset's pairs. Resample i uses the RNG
/// stream (seed, subset, i). Subsets with fewer than 2 embeddable pairs, or
/// whose correlation is undefined, are marked not evaluable.
EvalReport bootstrap_eval(const EmbeddingMatrix& embedding, const PairSplit& split,
                          std::size_t n_resamples = 1000, std::uint64_t seed = 0);

std::string report_to_json(const EvalReport& report);
std::string format_report_table(const EvalReport& report);

}  // namespace lsi
