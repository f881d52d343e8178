#ifndef QEBT_CP_HPP
#define QEBT_CP_HPP

#include <complex>

#include "qebt/channel.hpp"
#include "qebt/errors.hpp"
#include "qebt/types.hpp"

namespace qebt {

// Outcome of a PSD test on a 4x4 Hermitian matrix. `verdict` is Boundary
// when |min_eig| < tol; `is_psd` keeps the inclusive reading min_eig >= -tol
// so boundary cases still count as completely positive.
struct PsdReport {
  Verdict verdict = Verdict::No;
  double min_eig = 0.0;
  bool is_psd = false;
};

// Complete positivity by Choi eigenvalues. This is the oracle route: it
// works for every trace-preserving input, including the degenerate edge.
PsdReport choi_psd(const PauliTransferMatrix& channel,
                   double tol = kDefaultTol);
PsdReport choi_psd(const CanonicalForm& form, double tol = kDefaultTol);

double min_choi_eig(const PauliTransferMatrix& channel);
double max_choi_eig(const PauliTransferMatrix& channel);

// Contraction-matrix data for a canonical channel:
//
//   c_ss' = 1 + s*lambda3 + s'*t3       (first sign lambda3, second t3)
//   tau   = t1 + i t2,  lambda_pm = lambda1 +- lambda2
//
//   R = ( tau / sqrt(c_pp c_mm)          lambda_plus / sqrt(c_pp c_pm)
//         lambda_minus / sqrt(c_mm c_mp) tau / sqrt(c_pm c_mp) )
//
// m holds I - R^dag R; the scalar entries m11, m22, m12 are the closed forms
//   m11 = 1 - |tau|^2/(c_pp c_mm) - lambda_minus^2/(c_mm c_mp)
//   m22 = 1 - |tau|^2/(c_pm c_mp) - lambda_plus^2/(c_pp c_pm)
//   m12 = conj(tau) lambda_plus / (c_pp sqrt(c_mm c_pm))
//       + tau lambda_minus / (c_mp sqrt(c_mm c_pm))
// (m12 agrees with the matrix entry up to overall sign; only |m12| enters
// any decision).
struct ContractionData {
  double c_pp = 0, c_pm = 0, c_mp = 0, c_mm = 0;
  std::complex<double> tau;
  double lambda_plus = 0, lambda_minus = 0;
  Eigen::Matrix2cd r_phi = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  double m11 = 1, m22 = 1;
  std::complex<double> m12;
  double det_m() const { return m11 * m22 - std::norm(m12); }
};

// Requires |t3| + |lambda3| < 1; throws DegenerateEdge otherwise.
ContractionData contraction_matrix(const CanonicalForm& form);

// Complete positivity via I - R^dag R >= 0 when |t3| + |lambda3| < 1 - tol;
// delegates to choi_psd on the degenerate edge.
Verdict cp_via_contraction(const CanonicalForm& form, double tol = kDefaultTol);

// Closed-form necessary conditions. rect_minus / rect_plus are the diagonal
// rectangle bounds on |lambda_minus| and |lambda_plus|; trace_alt is the
// trace alternative c_mm*m11 + c_pm*m22 >= 0 evaluated in polynomial form:
//   (l1^2 + l2^2)(1 + t3) + l3^2 (1 - t3) <= (1 + t3)(1 - |t|^2) + 2 l1 l2 l3.
struct NecessaryReport {
  bool rect_plus = false;
  bool rect_minus = false;
  bool trace_alt = false;
};
NecessaryReport necessary_conditions(const CanonicalForm& form);

// Builds the Choi state of the adjoint of Phi_U from the blocks of the
// adjoint channel and an arbitrary contraction U:
//   M = ( A          sqrt(A) U sqrt(B) )
//       ( sqrt(B) U^dag sqrt(A)      B )   with A, B the adjoint's diagonal
// blocks, scaled to trace 1. The induced map Phi_U is trace preserving.
ChoiMatrix phi_from_contraction(const CanonicalForm& form,
                                const Eigen::Matrix2cd& contraction,
                                double tol = kDefaultTol);

// PSD square root via Hermitian eigendecomposition, eigenvalues clamped at 0.
Eigen::Matrix2cd psd_sqrt(const Eigen::Matrix2cd& m);

}  // namespace qebt

#endif
