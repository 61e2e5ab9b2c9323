#include "lsi/align.hpp"

#include <charconv>
#include <string>

#include <Eigen/Dense>

#include "lsi/error.hpp"
#include "lsi/io.hpp"
#include "lsi/log.hpp"

namespace lsi {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> view(const DenseMatrix& m) {
  return {m.values.data(), static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols)};
}

}  // namespace

std::vector<double> OrthogonalMap::apply(std::span<const double> row) const {
  if (row.size() != q.rows) throw InputError("vector dimension does not match the alignment map");
  std::vector<double> out(q.cols, 0.0);
  for (std::size_t i = 0; i < q.rows; ++i) {
    const double xi = row[i];
    for (std::size_t j = 0; j < q.cols; ++j) out[j] += xi * q(i, j);
  }
  return out;
}

OrthogonalMap fit_alignment(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.rows != y.rows) {
    throw InputError("alignment needs paired rows: " + std::to_string(x.rows) + " vs " +
                     std::to_string(y.rows));
  }
  if (x.rows == 0 || x.cols == 0 || y.cols == 0) throw InputError("alignment needs non-empty input");

  OrthogonalMap map;
  map.anchor_count = x.rows;
  map.rank_deficient = x.rows < x.cols;
  if (map.rank_deficient) {
    logger().warn("fit_alignment: {} anchor rows < dimension {}; the fit is rank deficient", x.rows,
                  x.cols);
  }
  const auto xm = view(x);
  const auto ym = view(y);
  const Eigen::MatrixXd cross = xm.transpose() * ym;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::MatrixXd q = svd.matrixU() * svd.matrixV().transpose();

  map.q = DenseMatrix(x.cols, y.cols);
  for (std::size_t i = 0; i < x.cols; ++i) {
    for (std::size_t j = 0; j < y.cols; ++j) {
      map.q(i, j) = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  map.residual = (xm * q - ym).norm();
  return map;
}

EmbeddingMatrix mesh_baseline(const EmbeddingMatrix& semantic, const EmbeddingMatrix& domain,
                              const AnchorMap& anchors, OrthogonalMap* fitted) {
  if (anchors.empty()) throw InputError("alignment baseline needs at least one anchor");
  DenseMatrix x(anchors.size(), domain.dim());
  DenseMatrix y(anchors.size(), semantic.dim());
  for (std::size_t r = 0; r < anchors.size(); ++r) {
    const auto xs = domain.row(anchors.pairs[r].domain);
    const auto ys = semantic.row(anchors.pairs[r].semantic);
    std::copy(xs.begin(), xs.end(), x.values.begin() + static_cast<std::ptrdiff_t>(r * x.cols));
    std::copy(ys.begin(), ys.end(), y.values.begin() + static_cast<std::ptrdiff_t>(r * y.cols));
  }
  OrthogonalMap map = fit_alignment(x, y);
  logger().info("align: fit on {} anchors, residual {:.4g}", map.anchor_count, map.residual);

  EmbeddingMatrix out(semantic.dim());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (semantic.contains(domain.token(i))) continue;
    out.append(domain.token(i), map.apply(domain.row(i)));
  }
  if (fitted) *fitted = std::move(map);
  return out;
}

void write_matrix(const DenseMatrix& m, const std::filesystem::path& path) {
  LineWriter out(path);
  out.write_line(std::to_string(m.rows) + " " + std::to_string(m.cols));
  std::string line;
  char buf[32];
  for (std::size_t r = 0; r < m.rows; ++r) {
    line.clear();
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c > 0) line += ' ';
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), m(r, c));
      line.append(buf, ptr);
    }
    out.write_line(line);
  }
  out.close();
}

DenseMatrix read_matrix(const std::filesystem::path& path) {
  // Same layout as the embedding text format minus the tokens.
  LineReader in(path);
  std::string line;
  auto parse = [&](std::string_view s, auto& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(in.source(), in.line_number(), "invalid number '" + std::string(s) + "'");
    }
  };
  auto fields = [](std::string_view s) {
    std::vector<std::string_view> f;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && s[i] == ' ') ++i;
      std::size_t j = i;
      while (j < s.size() && s[j] != ' ') ++j;
      if (j > i) f.push_back(s.substr(i, j - i));
      i = j;
    }
    return f;
  };
  if (!in.next(line)) throw InputError(in.source() + ": empty matrix file");
  auto header = fields(line);
  if (header.size() != 2) throw ParseError(in.source(), 1, "expected '<rows> <cols>'");
  std::size_t rows = 0;
  std::size_t cols = 0;
  parse(header[0], rows);
  parse(header[1], cols);
  DenseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!in.next(line)) throw ParseError(in.source(), in.line_number(), "missing matrix rows");
    auto f = fields(line);
    if (f.size() != cols) throw ParseError(in.source(), in.line_number(), "wrong column count");
    for (std::size_t c = 0; c < cols; ++c) parse(f[c], m(r, c));
  }
  return m;
}

}  // namespace lsi
