#ifndef QEBT_TYPES_HPP
#define QEBT_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace qebt {

// Default tolerance for PSD / classification decisions. Matrix-equality
// checks use 1e-12 absolute; all entries are O(1) by construction.
inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kMatrixTol = 1e-12;

// Bloch coordinates of a qubit operator, rho = (I + v.sigma)/2.
// A valid state has |v| <= 1, pure iff |v| = 1.
using BlochVector = Eigen::Vector3d;

// 4x4 real matrix representing a qubit map in the {I, s1, s2, s3} basis.
// Block form (1 0; t T): t is the translation, T the 3x3 Bloch block.
// Trace preserving iff row 0 is exactly (1,0,0,0).
struct PauliTransferMatrix {
  Eigen::Matrix4d entries = Eigen::Matrix4d::Identity();

  Eigen::Vector3d translation() const { return entries.block<3, 1>(1, 0); }
  Eigen::Matrix3d block() const { return entries.block<3, 3>(1, 1); }
  bool trace_preserving(double tol = kMatrixTol) const {
    return std::abs(entries(0, 0) - 1.0) <= tol &&
           std::abs(entries(0, 1)) <= tol && std::abs(entries(0, 2)) <= tol &&
           std::abs(entries(0, 3)) <= tol;
  }
};

// Diagonal representation (t, lambda) of a trace-preserving qubit map
// together with the proper rotations that achieved it:
//   rot_out * T * rot_in^T = diag(lambda),   t = rot_out * t_original.
struct CanonicalForm {
  Eigen::Vector3d t = Eigen::Vector3d::Zero();
  Eigen::Vector3d lambda = Eigen::Vector3d::Zero();
  Eigen::Matrix3d rot_out = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d rot_in = Eigen::Matrix3d::Identity();
};

// Choi state of a map, (I (x) Phi)(|b><b|) with |b> = (|00>+|11>)/sqrt(2).
// Hermitian; trace 1 for trace-preserving input.
struct ChoiMatrix {
  Eigen::Matrix4cd entries = Eigen::Matrix4cd::Zero();
};

// 2x2 Hermitian PSD matrix with unit trace.
struct DensityOperator {
  Eigen::Matrix2cd entries = Eigen::Matrix2cd::Identity() * 0.5;
};

// Three-way classification outcome. Boundary means the decision quantity
// lies within tolerance of the dividing surface.
enum class Verdict { Yes, No, Boundary };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "boundary";
  }
}

}  // namespace qebt

#endif
