#include "qebt/nnls.hpp"

#include <limits>
#include <vector>

namespace qebt {

namespace {

Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a,
                              const Eigen::VectorXd& b,
                              const std::vector<int>& passive) {
  Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(passive.size()));
  for (size_t j = 0; j < passive.size(); ++j) ap.col(j) = a.col(passive[j]);
  return ap.colPivHouseholderQr().solve(b);
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                int max_iterations, double tol) {
  const int n = static_cast<int>(a.cols());
  if (max_iterations <= 0) max_iterations = 3 * n + 30;

  NnlsResult result;
  result.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> in_passive(n, false);
  std::vector<int> passive;

  // With activation tolerances near machine precision the active-set loop
  // can cycle on noise-level gradients; the best iterate seen wins.
  Eigen::VectorXd best_x = result.x;
  double best_residual = b.norm();
  int stagnant = 0;

  Eigen::VectorXd residual_vec = b;
  for (int outer = 0; outer < max_iterations; ++outer) {
    ++result.iterations;
    const Eigen::VectorXd w = a.transpose() * residual_vec;

    int best = -1;
    double best_w = tol;
    for (int j = 0; j < n; ++j) {
      if (!in_passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    in_passive[best] = true;
    passive.push_back(best);

    Eigen::VectorXd z = solve_passive(a, b, passive);
    // Inner loop: clip infeasible coordinates back onto the boundary.
    while (z.minCoeff() <= 0.0) {
      double alpha = std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < passive.size(); ++j) {
        if (z(j) <= 0.0) {
          const double xj = result.x(passive[j]);
          alpha = std::min(alpha, xj / (xj - z(j)));
        }
      }
      for (size_t j = 0; j < passive.size(); ++j) {
        const int col = passive[j];
        result.x(col) += alpha * (z(j) - result.x(col));
      }
      std::vector<int> kept;
      for (int col : passive) {
        if (result.x(col) > tol) {
          kept.push_back(col);
        } else {
          result.x(col) = 0.0;
          in_passive[col] = false;
        }
      }
      passive = kept;
      if (passive.empty()) break;
      z = solve_passive(a, b, passive);
    }
    result.x.setZero();
    for (size_t j = 0; j < passive.size(); ++j) {
      result.x(passive[j]) = std::max(z(j), 0.0);
    }
    residual_vec = b - a * result.x;

    const double residual = residual_vec.norm();
    if (residual < best_residual - 1e-15) {
      best_residual = residual;
      best_x = result.x;
      stagnant = 0;
    } else if (++stagnant >= 30) {
      break;
    }
  }

  result.x = best_x;
  result.residual = best_residual;
  return result;
}

}  // namespace qebt
