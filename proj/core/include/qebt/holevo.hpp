#ifndef QEBT_HOLEVO_HPP
#define QEBT_HOLEVO_HPP

#include <vector>

#include "qebt/errors.hpp"
#include "qebt/types.hpp"

namespace qebt {

// One measure-and-prepare term: output state R = (I + w.sigma)/2 and POVM
// element F = u0 I + u.sigma. Validity: |w| <= 1 and |u| <= u0; POVM
// completeness over the ensemble: sum u0 = 1, sum u = 0.
struct HolevoItem {
  BlochVector w = BlochVector::Zero();
  double u0 = 0.0;
  Eigen::Vector3d u = Eigen::Vector3d::Zero();
};

struct HolevoEnsemble {
  std::vector<HolevoItem> items;
};

Eigen::Matrix2cd density_matrix(const HolevoItem& item);  // R_k
Eigen::Matrix2cd povm_matrix(const HolevoItem& item);     // F_k

// Throws InvalidEnsemble naming the violated invariant.
void validate_ensemble(const HolevoEnsemble& ensemble, double tol = 1e-9);

// W^T U with W rows (1, w^k) and U rows (u0^k, u^k). Row 0 comes out as
// (1,0,0,0) exactly when the POVM is complete.
PauliTransferMatrix ensemble_to_transfer(const HolevoEnsemble& ensemble);

// Two-projector CQ ensemble realizing the linear channel (t, (0,0,lambda3)):
// W rows (1, t1, t2, t3 +- lambda3), U = (1/2)(1 0 0 1; 1 0 0 -1).
// Requires t1^2 + t2^2 + (|t3| + |lambda3|)^2 <= 1.
HolevoEnsemble build_cq(const Eigen::Vector3d& t, double lambda3);

// Two-term QC ensemble with projector outputs R_k = |k><k|. The POVM vector
// is rotated onto the third axis internally; `rotation` maps the requested u
// to (0,0,|u|), so the built ensemble equals the requested channel up to
// that domain rotation. Requires |u| <= min(u0, 1-u0).
struct QcBuild {
  HolevoEnsemble ensemble;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
};
QcBuild build_qc(double u0, const Eigen::Vector3d& u);

// The two factorizations of a channel with only t3, lambda3 nonzero:
// a QC pair and a CQ pair multiplying to the identical transfer matrix.
// Requires |t3| + |lambda3| <= 1 and |t3| < 1.
struct QcCqFactorizations {
  HolevoEnsemble qc;
  HolevoEnsemble cq;
};
QcCqFactorizations qc_to_cq(double t3, double lambda3);

// True iff the ensemble is valid and reproduces `channel` within tol.
// A passing verification certifies entanglement breaking constructively.
bool verify_ensemble(const HolevoEnsemble& ensemble,
                     const PauliTransferMatrix& channel, double tol = 1e-10);

// Rotation taking v/|v| onto e3 (any fixed choice for v parallel to e3).
Eigen::Matrix3d rotation_to_z(const Eigen::Vector3d& v);

}  // namespace qebt

#endif
