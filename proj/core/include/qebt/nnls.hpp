#ifndef QEBT_NNLS_HPP
#define QEBT_NNLS_HPP

#include <Eigen/Dense>

namespace qebt {

// min ||A x - b||_2 subject to x >= 0, by the Lawson-Hanson active-set
// method. Coefficients below `prune_tol` in the final solution are zeroed.
struct NnlsResult {
  Eigen::VectorXd x;
  double residual = 0.0;
  int iterations = 0;
};

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                int max_iterations = 0, double tol = 1e-12);

}  // namespace qebt

#endif
