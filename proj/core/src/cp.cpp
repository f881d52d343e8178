#include "qebt/cp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "qebt/canonical.hpp"

namespace qebt {

namespace {

Verdict classify_margin(double margin, double tol) {
  if (std::abs(margin) < tol) return Verdict::Boundary;
  return margin > 0 ? Verdict::Yes : Verdict::No;
}

}  // namespace

double min_choi_eig(const PauliTransferMatrix& channel) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
      choi_of(channel).entries, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double max_choi_eig(const PauliTransferMatrix& channel) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
      choi_of(channel).entries, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

PsdReport choi_psd(const PauliTransferMatrix& channel, double tol) {
  PsdReport report;
  report.min_eig = min_choi_eig(channel);
  report.verdict = classify_margin(report.min_eig, tol);
  report.is_psd = report.min_eig >= -tol;
  return report;
}

PsdReport choi_psd(const CanonicalForm& form, double tol) {
  return choi_psd(canonical_channel(form), tol);
}

ContractionData contraction_matrix(const CanonicalForm& form) {
  const double t3 = form.t(2);
  const double l3 = form.lambda(2);
  if (std::abs(t3) + std::abs(l3) >= 1.0) {
    throw DegenerateEdge("contraction_matrix: |t3| + |lambda3| >= 1");
  }

  ContractionData data;
  data.c_pp = 1 + l3 + t3;
  data.c_pm = 1 + l3 - t3;
  data.c_mp = 1 - l3 + t3;
  data.c_mm = 1 - l3 - t3;
  data.tau = {form.t(0), form.t(1)};
  data.lambda_plus = form.lambda(0) + form.lambda(1);
  data.lambda_minus = form.lambda(0) - form.lambda(1);

  data.r_phi(0, 0) = data.tau / std::sqrt(data.c_pp * data.c_mm);
  data.r_phi(0, 1) = data.lambda_plus / std::sqrt(data.c_pp * data.c_pm);
  data.r_phi(1, 0) = data.lambda_minus / std::sqrt(data.c_mm * data.c_mp);
  data.r_phi(1, 1) = data.tau / std::sqrt(data.c_pm * data.c_mp);

  data.m = Eigen::Matrix2cd::Identity() - data.r_phi.adjoint() * data.r_phi;

  const double abs_tau_sq = std::norm(data.tau);
  data.m11 = 1.0 - abs_tau_sq / (data.c_pp * data.c_mm) -
             data.lambda_minus * data.lambda_minus / (data.c_mm * data.c_mp);
  data.m22 = 1.0 - abs_tau_sq / (data.c_pm * data.c_mp) -
             data.lambda_plus * data.lambda_plus / (data.c_pp * data.c_pm);
  const double root = std::sqrt(data.c_mm * data.c_pm);
  data.m12 = std::conj(data.tau) * data.lambda_plus / (data.c_pp * root) +
             data.tau * data.lambda_minus / (data.c_mp * root);
  return data;
}

Verdict cp_via_contraction(const CanonicalForm& form, double tol) {
  const double edge = std::abs(form.t(2)) + std::abs(form.lambda(2));
  if (edge >= 1.0 - tol) {
    return choi_psd(form, tol).verdict;
  }
  const ContractionData data = contraction_matrix(form);
  const double margin = std::min({data.m11, data.m22, data.det_m()});
  return classify_margin(margin, tol);
}

NecessaryReport necessary_conditions(const CanonicalForm& form) {
  const ContractionData d = contraction_matrix(form);
  const double abs_tau_sq = std::norm(d.tau);

  NecessaryReport report;
  report.rect_minus = d.lambda_minus * d.lambda_minus <=
                      d.c_mm * d.c_mp - (d.c_mp / d.c_pp) * abs_tau_sq;
  report.rect_plus = d.lambda_plus * d.lambda_plus <=
                     d.c_pp * d.c_pm - (d.c_pp / d.c_mp) * abs_tau_sq;

  const double t3 = form.t(2);
  const Eigen::Vector3d& l = form.lambda;
  const double t_norm_sq = form.t.squaredNorm();
  report.trace_alt =
      (l(0) * l(0) + l(1) * l(1)) * (1 + t3) + l(2) * l(2) * (1 - t3) <=
      (1 + t3) * (1 - t_norm_sq) + 2 * l(0) * l(1) * l(2);
  return report;
}

Eigen::Matrix2cd psd_sqrt(const Eigen::Matrix2cd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m);
  Eigen::Vector2d vals = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * vals.cwiseSqrt().asDiagonal() *
         solver.eigenvectors().adjoint();
}

ChoiMatrix phi_from_contraction(const CanonicalForm& form,
                                const Eigen::Matrix2cd& contraction,
                                double tol) {
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(contraction);
  if (svd.singularValues()(0) > 1.0 + kMatrixTol) {
    throw NotContraction("phi_from_contraction: ||U|| > 1");
  }
  const PauliTransferMatrix channel = canonical_channel(form);
  if (!choi_psd(channel, tol).is_psd) {
    throw NotCP("phi_from_contraction: input channel is not CP");
  }

  const Eigen::Matrix4d adj = adjoint(channel);
  Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero();
  p0(0, 0) = 1.0;
  Eigen::Matrix2cd p1 = Eigen::Matrix2cd::Zero();
  p1(1, 1) = 1.0;

  // Trace-1 Choi blocks of the adjoint map.
  const Eigen::Matrix2cd a = 0.5 * apply_to_operator(adj, p0);
  const Eigen::Matrix2cd b = 0.5 * apply_to_operator(adj, p1);
  const Eigen::Matrix2cd sqrt_a = psd_sqrt(a);
  const Eigen::Matrix2cd sqrt_b = psd_sqrt(b);
  const Eigen::Matrix2cd off = sqrt_a * contraction * sqrt_b;

  ChoiMatrix result;
  result.entries.block<2, 2>(0, 0) = a;
  result.entries.block<2, 2>(0, 2) = off;
  result.entries.block<2, 2>(2, 0) = off.adjoint();
  result.entries.block<2, 2>(2, 2) = b;
  return result;
}

}  // namespace qebt
