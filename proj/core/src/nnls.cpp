#include "lsi/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace lsi {

NnlsResult nnls(const std::vector<std::span<const double>>& columns, std::span<const double> b,
                const NnlsOptions& options) {
  const std::size_t n = columns.size();
  const std::size_t m = b.size();
  if (n == 0) throw std::invalid_argument("nnls: A has no columns");

  Eigen::MatrixXd a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != m) throw std::invalid_argument("nnls: column length != b length");
    for (std::size_t i = 0; i < m; ++i) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = columns[j][i];
    }
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(m));

  const double scale = std::max(1.0, a.colwise().norm().maxCoeff() * rhs.norm());
  const double tol = options.tolerance * scale;
  const std::size_t max_outer = options.max_iterations > 0 ? options.max_iterations : 3 * n;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::vector<char> passive(n, 0);
  std::vector<char> blocked(n, 0);  // columns that failed to enter since x last changed
  Eigen::VectorXd grad = a.transpose() * rhs;

  NnlsResult result;
  // Least-squares solution restricted to the passive set, scattered back to length n.
  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (std::size_t j = 0; j < n; ++j) {
      if (passive[j]) idx.push_back(static_cast<Eigen::Index>(j));
    }
    Eigen::MatrixXd ap(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) ap.col(static_cast<Eigen::Index>(c)) = a.col(idx[c]);
    const Eigen::VectorXd zp = ap.colPivHouseholderQr().solve(rhs);
    z.setZero(static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < idx.size(); ++c) z(idx[c]) = zp(static_cast<Eigen::Index>(c));
  };

  Eigen::VectorXd z;
  for (;;) {
    // Select the most violated KKT condition among the active (zero) set.
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (passive[j] || blocked[j]) continue;
      if (grad(static_cast<Eigen::Index>(j)) > tol &&
          (enter == n || grad(static_cast<Eigen::Index>(j)) > grad(static_cast<Eigen::Index>(enter)))) {
        enter = j;
      }
    }
    if (enter == n) {
      result.converged = true;
      break;
    }
    if (result.iterations >= max_outer) break;
    ++result.iterations;
    passive[enter] = 1;

    const Eigen::VectorXd x_before = x;
    for (std::size_t inner = 0; inner <= n; ++inner) {
      solve_passive(z);
      bool feasible = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (passive[j] && z(static_cast<Eigen::Index>(j)) <= 0.0) feasible = false;
      }
      if (feasible) {
        x = z;
        break;
      }
      // Step from x toward z as far as feasibility allows, then drop the
      // variables that hit zero.
      double alpha = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        if (passive[j] && z(jj) <= 0.0) {
          const double denom = x(jj) - z(jj);
          if (denom > 0.0) alpha = std::min(alpha, x(jj) / denom);
          else alpha = 0.0;
        }
      }
      x += alpha * (z - x);
      for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        if (passive[j] && (x(jj) <= 0.0 || (z(jj) <= 0.0 && std::abs(x(jj)) <= 1e-15 * scale))) {
          passive[j] = 0;
          x(jj) = 0.0;
        }
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!passive[j]) x(static_cast<Eigen::Index>(j)) = 0.0;
    }
    if (!passive[enter] && (x - x_before).cwiseAbs().maxCoeff() == 0.0) {
      // Numerically unable to use this column; do not select it again until x moves.
      blocked[enter] = 1;
    } else {
      std::fill(blocked.begin(), blocked.end(), 0);
    }
    grad = a.transpose() * (rhs - a * x);
  }

  result.x.assign(x.data(), x.data() + n);
  for (double& v : result.x) v = std::max(v, 0.0);
  result.residual_norm = (a * x - rhs).norm();
  return result;
}

}  // namespace lsi
