#include "lsi/embedding.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "lsi/error.hpp"
#include "lsi/io.hpp"
#include "lsi/log.hpp"

namespace lsi {

EmbeddingMatrix::EmbeddingMatrix(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InputError("embedding dimension must be at least 1");
}

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> tokens, std::vector<double> values,
                                 std::size_t dim)
    : EmbeddingMatrix(dim) {
  if (values.size() != tokens.size() * dim) {
    throw InputError("embedding value count " + std::to_string(values.size()) + " != " +
                     std::to_string(tokens.size()) + " rows x " + std::to_string(dim));
  }
  tokens_.reserve(tokens.size());
  values_.reserve(values.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    append(std::move(tokens[i]), std::span<const double>(values.data() + i * dim, dim));
  }
}

std::optional<std::size_t> EmbeddingMatrix::find(const std::string& token) const {
  if (auto it = index_.find(token); it != index_.end()) return it->second;
  return std::nullopt;
}

void EmbeddingMatrix::append(std::string token, std::span<const double> values) {
  if (dim_ == 0) throw InputError("embedding dimension must be at least 1");
  if (values.size() != dim_) {
    throw InputError("row '" + token + "' has " + std::to_string(values.size()) +
                     " values, expected " + std::to_string(dim_));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("row '" + token + "' has a non-finite value");
  }
  if (token.empty()) throw InputError("empty token");
  auto [it, inserted] = index_.emplace(token, tokens_.size());
  if (!inserted) throw InputError("duplicate token '" + token + "'");
  tokens_.push_back(std::move(token));
  values_.insert(values_.end(), values.begin(), values.end());
}

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

class EmbeddingParser {
 public:
  explicit EmbeddingParser(std::string source) : source_(std::move(source)) {}

  void feed(std::string_view line, std::size_t line_no) {
    if (!matrix_) {
      parse_header(line, line_no);
      return;
    }
    if (line.empty()) return;
    const auto fields = split_spaces(line);
    if (fields.empty()) return;
    if (fields.size() - 1 != matrix_->dim()) {
      fail(line_no, "row arity " + std::to_string(fields.size() - 1) + " != declared dim " +
                        std::to_string(matrix_->dim()));
    }
    if (matrix_->size() >= expected_rows_) {
      fail(line_no, "more rows than the declared count " + std::to_string(expected_rows_));
    }
    row_.resize(matrix_->dim());
    for (std::size_t k = 0; k < row_.size(); ++k) {
      if (!parse_number(fields[k + 1], row_[k])) {
        fail(line_no, "invalid number '" + std::string(fields[k + 1]) + "'");
      }
      if (!std::isfinite(row_[k])) fail(line_no, "non-finite value");
    }
    std::string token(fields[0]);
    if (matrix_->contains(token)) fail(line_no, "duplicate token '" + token + "'");
    matrix_->append(std::move(token), row_);
  }

  EmbeddingMatrix finish(std::size_t last_line) {
    if (!matrix_) fail(last_line, "missing '<count> <dim>' header");
    if (matrix_->size() != expected_rows_) {
      fail(last_line, "declared " + std::to_string(expected_rows_) + " rows, found " +
                          std::to_string(matrix_->size()));
    }
    return std::move(*matrix_);
  }

 private:
  void parse_header(std::string_view line, std::size_t line_no) {
    const auto fields = split_spaces(line);
    std::size_t count = 0;
    std::size_t dim = 0;
    if (fields.size() != 2 || !parse_number(fields[0], count) || !parse_number(fields[1], dim) ||
        dim == 0) {
      fail(line_no, "malformed header, expected '<count> <dim>'");
    }
    expected_rows_ = count;
    matrix_.emplace(dim);
  }

  [[noreturn]] void fail(std::size_t line_no, const std::string& what) const {
    throw ParseError(source_, line_no, what);
  }

  std::string source_;
  std::optional<EmbeddingMatrix> matrix_;
  std::size_t expected_rows_ = 0;
  std::vector<double> row_;
};

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

EmbeddingMatrix read_embeddings(const std::filesystem::path& path) {
  LineReader reader(path);
  EmbeddingParser parser(reader.source());
  std::string line;
  while (reader.next(line)) parser.feed(line, reader.line_number());
  return parser.finish(reader.line_number());
}

EmbeddingMatrix parse_embeddings(std::string_view text, std::string_view source) {
  EmbeddingParser parser{std::string(source)};
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    parser.feed(line, ++line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return parser.finish(line_no);
}

std::string format_embeddings(const EmbeddingMatrix& m) {
  std::string out = std::to_string(m.size()) + " " + std::to_string(m.dim()) + "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += m.token(i);
    for (double v : m.row(i)) {
      out += ' ';
      append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

void write_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path) {
  LineWriter out(path);
  out.write(std::to_string(m.size()) + " " + std::to_string(m.dim()) + "\n");
  std::string line;
  for (std::size_t i = 0; i < m.size(); ++i) {
    line = m.token(i);
    for (double v : m.row(i)) {
      line += ' ';
      append_number(line, v);
    }
    out.write_line(line);
  }
  out.close();
}

std::string normalize_label(std::string_view raw) {
  std::string out(raw);
  for (char& c : out) {
    if (c == ' ') {
      c = '-';
    } else if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

AnchorMap find_anchors(const EmbeddingMatrix& semantic, const EmbeddingMatrix& domain) {
  AnchorMap anchors;
  for (std::size_t i = 0; i < semantic.size(); ++i) {
    if (auto j = domain.find(semantic.token(i))) anchors.pairs.push_back({i, *j});
  }
  return anchors;
}

EmbeddingMatrix merge_embeddings(const EmbeddingMatrix& base, const EmbeddingMatrix& imputed) {
  if (imputed.empty() && base.dim() == 0) return base;
  if (!imputed.empty() && imputed.dim() != base.dim()) {
    throw InputError("cannot merge embeddings of dimension " + std::to_string(imputed.dim()) +
                     " into dimension " + std::to_string(base.dim()));
  }
  EmbeddingMatrix merged = base;
  std::size_t collisions = 0;
  for (std::size_t i = 0; i < imputed.size(); ++i) {
    if (merged.contains(imputed.token(i))) {
      ++collisions;
      logger().debug("merge: keeping base row for '{}'", imputed.token(i));
      continue;
    }
    merged.append(imputed.token(i), imputed.row(i));
  }
  if (collisions > 0) {
    logger().warn("merge: {} imputed token(s) already present in base; base rows kept", collisions);
  }
  return merged;
}

}  // namespace lsi
