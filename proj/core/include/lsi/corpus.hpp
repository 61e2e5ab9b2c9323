#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lsi {

/// Lower-cases ASCII, splits on whitespace and strips the characters
/// . , ; : ! ? ( ) " ' [ ] from both ends of each token. Hyphens are kept.
std::vector<std::string> tokenize_sentence(std::string_view line);

struct FilterStats {
  std::size_t total = 0;
  std::size_t removed = 0;
  std::map<std::string, std::size_t> term_hits;  // removed sentences mentioning each term

  double removal_fraction() const {
    return total == 0 ? 0.0 : static_cast<double>(removed) / static_cast<double>(total);
  }
};

/// Removes sentences mentioning any target term. A token matches term t when it
/// equals t or t followed by one of `plural_suffixes` (default "s" and "es").
class CorpusFilter {
 public:
  explicit CorpusFilter(std::set<std::string> terms,
                        std::vector<std::string> plural_suffixes = {"s", "es"});

  /// Distinct terms mentioned in `line` (empty when the sentence is kept).
  std::vector<std::string> matched_terms(std::string_view line) const;
  bool removes(std::string_view line) const { return !matched_terms(line).empty(); }

  /// Streams lines from `next` to `keep` in input order; kept lines are passed
  /// through unmodified.
  FilterStats run(const std::function<bool(std::string&)>& next,
                  const std::function<void(std::string_view)>& keep) const;

  const std::set<std::string>& terms() const noexcept { return terms_; }

 private:
  std::set<std::string> terms_;
  std::vector<std::string> suffixes_;
};

FilterStats filter_corpus(const std::vector<std::string>& sentences,
                          const std::set<std::string>& terms, std::vector<std::string>& kept);

/// File-to-file variant; either side may be gzip (".gz").
FilterStats filter_corpus_file(const std::filesystem::path& input,
                               const std::filesystem::path& output,
                               const CorpusFilter& filter);

std::string filter_stats_to_json(const FilterStats& stats);

}  // namespace lsi
