#include "qebt/holevo.hpp"

#include <cmath>
#include <string>

#include "qebt/channel.hpp"

namespace qebt {

Eigen::Matrix2cd density_matrix(const HolevoItem& item) {
  return density_from_bloch(item.w);
}

Eigen::Matrix2cd povm_matrix(const HolevoItem& item) {
  const auto& s = pauli_basis();
  return item.u0 * s[0] + item.u.x() * s[1] + item.u.y() * s[2] +
         item.u.z() * s[3];
}

void validate_ensemble(const HolevoEnsemble& ensemble, double tol) {
  if (ensemble.items.empty()) {
    throw InvalidEnsemble("ensemble is empty");
  }
  double u0_sum = 0.0;
  Eigen::Vector3d u_sum = Eigen::Vector3d::Zero();
  for (size_t k = 0; k < ensemble.items.size(); ++k) {
    const HolevoItem& item = ensemble.items[k];
    if (item.w.norm() > 1.0 + tol) {
      throw InvalidEnsemble("output state " + std::to_string(k) +
                            " has |w| > 1");
    }
    if (item.u0 < -tol || item.u.norm() > item.u0 + tol) {
      throw InvalidEnsemble("POVM element " + std::to_string(k) +
                            " is not positive semi-definite");
    }
    u0_sum += item.u0;
    u_sum += item.u;
  }
  if (std::abs(u0_sum - 1.0) > tol || u_sum.norm() > tol) {
    throw InvalidEnsemble("POVM is not complete: sum u0 = " +
                          std::to_string(u0_sum));
  }
}

PauliTransferMatrix ensemble_to_transfer(const HolevoEnsemble& ensemble) {
  validate_ensemble(ensemble);
  PauliTransferMatrix channel;
  channel.entries = Eigen::Matrix4d::Zero();
  for (const HolevoItem& item : ensemble.items) {
    Eigen::Vector4d w_row(1.0, item.w.x(), item.w.y(), item.w.z());
    Eigen::Vector4d u_row(item.u0, item.u.x(), item.u.y(), item.u.z());
    channel.entries += w_row * u_row.transpose();
  }
  return channel;
}

HolevoEnsemble build_cq(const Eigen::Vector3d& t, double lambda3) {
  const double reach = std::abs(t(2)) + std::abs(lambda3);
  if (t(0) * t(0) + t(1) * t(1) + reach * reach > 1.0 + 1e-12) {
    throw NotRealizable("build_cq: t1^2 + t2^2 + (|t3|+|lambda3|)^2 > 1");
  }
  HolevoEnsemble ensemble;
  HolevoItem plus;
  plus.w = {t(0), t(1), t(2) + lambda3};
  plus.u0 = 0.5;
  plus.u = {0, 0, 0.5};
  HolevoItem minus;
  minus.w = {t(0), t(1), t(2) - lambda3};
  minus.u0 = 0.5;
  minus.u = {0, 0, -0.5};
  ensemble.items = {plus, minus};
  return ensemble;
}

Eigen::Matrix3d rotation_to_z(const Eigen::Vector3d& v) {
  const double norm = v.norm();
  if (norm <= 1e-14) return Eigen::Matrix3d::Identity();
  const Eigen::Vector3d axis = v / norm;
  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
  if ((axis - z).norm() <= 1e-14) return Eigen::Matrix3d::Identity();
  if ((axis + z).norm() <= 1e-14) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(0, 0) = -1.0;
    flip(2, 2) = -1.0;
    return flip;
  }
  const Eigen::Vector3d cross = axis.cross(z);
  const double sin_angle = cross.norm();
  const double cos_angle = axis.dot(z);
  return Eigen::AngleAxisd(std::atan2(sin_angle, cos_angle),
                           cross / sin_angle)
      .toRotationMatrix();
}

QcBuild build_qc(double u0, const Eigen::Vector3d& u) {
  const double u_norm = u.norm();
  if (u0 < 0.0 || u0 > 1.0 || u_norm > std::min(u0, 1.0 - u0) + 1e-12) {
    throw InvalidPovm("build_qc: need |u| <= min(u0, 1-u0) with u0 in [0,1]");
  }
  QcBuild result;
  result.rotation = rotation_to_z(u);

  HolevoItem first;
  first.w = {0, 0, 1};
  first.u0 = u0;
  first.u = {0, 0, u_norm};
  HolevoItem second;
  second.w = {0, 0, -1};
  second.u0 = 1.0 - u0;
  second.u = {0, 0, -u_norm};
  result.ensemble.items = {first, second};
  return result;
}

QcCqFactorizations qc_to_cq(double t3, double lambda3) {
  if (std::abs(t3) + std::abs(lambda3) > 1.0 + 1e-12 || std::abs(t3) >= 1.0) {
    throw NotRealizable("qc_to_cq: need |t3| + |lambda3| <= 1 and |t3| < 1");
  }
  QcCqFactorizations result;

  HolevoItem qc_first;
  qc_first.w = {0, 0, 1};
  qc_first.u0 = 0.5 * (1 + t3);
  qc_first.u = {0, 0, 0.5 * lambda3};
  HolevoItem qc_second;
  qc_second.w = {0, 0, -1};
  qc_second.u0 = 0.5 * (1 - t3);
  qc_second.u = {0, 0, -0.5 * lambda3};
  result.qc.items = {qc_first, qc_second};

  result.cq = build_cq({0, 0, t3}, lambda3);
  return result;
}

bool verify_ensemble(const HolevoEnsemble& ensemble,
                     const PauliTransferMatrix& channel, double tol) {
  try {
    const PauliTransferMatrix product = ensemble_to_transfer(ensemble);
    return (product.entries - channel.entries).cwiseAbs().maxCoeff() <= tol;
  } catch (const InvalidEnsemble&) {
    return false;
  }
}

}  // namespace qebt
