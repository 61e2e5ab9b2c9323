#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lsi {

/// Ordered vocabulary plus one dense row of coordinates per token.
///
/// Rows are stored contiguously (row-major). Tokens are unique and every value
/// is finite; both are enforced on insertion. The matrix may be empty but always
/// carries its dimension so that an empty file still round-trips.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  explicit EmbeddingMatrix(std::size_t dim);

  /// Builds from parallel arrays; `values.size()` must equal tokens.size() * dim.
  EmbeddingMatrix(std::vector<std::string> tokens, std::vector<double> values, std::size_t dim);

  std::size_t size() const noexcept { return tokens_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return tokens_.empty(); }

  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::string& token(std::size_t row) const { return tokens_.at(row); }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<const double> values() const noexcept { return values_; }

  std::optional<std::size_t> find(const std::string& token) const;
  bool contains(const std::string& token) const { return index_.count(token) != 0; }

  /// Appends a row; throws InputError on duplicate token, wrong arity or non-finite values.
  void append(std::string token, std::span<const double> values);

  friend bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
    return a.dim_ == b.dim_ && a.tokens_ == b.tokens_ && a.values_ == b.values_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> tokens_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Row correspondence between a semantic and a domain matrix for shared tokens.
struct AnchorPair {
  std::size_t semantic = 0;
  std::size_t domain = 0;
  friend bool operator==(const AnchorPair&, const AnchorPair&) = default;
};

struct AnchorMap {
  std::vector<AnchorPair> pairs;  // ascending by semantic row

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
};

/// Reads the word2vec text format: a "<count> <dim>" header followed by one
/// "<token> <v1> ... <vdim>" line per row. Errors carry the offending line number.
EmbeddingMatrix read_embeddings(const std::filesystem::path& path);

/// Parses word2vec text held in memory; `source` names it in diagnostics.
EmbeddingMatrix parse_embeddings(std::string_view text, std::string_view source = "<memory>");

/// Writes the word2vec text format with shortest round-trip float formatting, so
/// reading the file back yields bit-identical values.
void write_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path);
std::string format_embeddings(const EmbeddingMatrix& m);

/// Lower-cases ASCII letters and replaces each space with a hyphen. Nothing else
/// changes; non-ASCII bytes pass through untouched.
std::string normalize_label(std::string_view raw);

/// Exact token matches between the two vocabularies, ordered by semantic row.
AnchorMap find_anchors(const EmbeddingMatrix& semantic, const EmbeddingMatrix& domain);

/// Every base row unchanged, followed by imputed rows whose tokens are absent
/// from base. On a collision the base row wins and the collision is logged.
EmbeddingMatrix merge_embeddings(const EmbeddingMatrix& base, const EmbeddingMatrix& imputed);

}  // namespace lsi
