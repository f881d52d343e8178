#include "qebt/channel.hpp"

#include <Eigen/Eigenvalues>
#include <complex>

namespace qebt {

using namespace std::complex_literals;

const std::array<Eigen::Matrix2cd, 4>& pauli_basis() {
  static const std::array<Eigen::Matrix2cd, 4> basis = [] {
    std::array<Eigen::Matrix2cd, 4> b;
    b[0] << 1, 0, 0, 1;
    b[1] << 0, 1, 1, 0;
    b[2] << 0, -1i, 1i, 0;
    b[3] << 1, 0, 0, -1;
    return b;
  }();
  return basis;
}

Eigen::Matrix2cd density_from_bloch(const BlochVector& v) {
  const auto& s = pauli_basis();
  return 0.5 * (s[0] + v.x() * s[1] + v.y() * s[2] + v.z() * s[3]);
}

Eigen::Vector4cd pauli_coefficients(const Eigen::Matrix2cd& op) {
  const auto& s = pauli_basis();
  Eigen::Vector4cd a;
  for (int k = 0; k < 4; ++k) a(k) = (s[k] * op).trace();
  return a;
}

Eigen::Matrix2cd operator_from_coefficients(const Eigen::Vector4cd& a) {
  const auto& s = pauli_basis();
  Eigen::Matrix2cd op = Eigen::Matrix2cd::Zero();
  for (int k = 0; k < 4; ++k) op += 0.5 * a(k) * s[k];
  return op;
}

PauliTransferMatrix channel_from_canonical(const Eigen::Vector3d& t,
                                           const Eigen::Vector3d& lambda) {
  PauliTransferMatrix channel;
  channel.entries = Eigen::Matrix4d::Zero();
  channel.entries(0, 0) = 1.0;
  for (int k = 0; k < 3; ++k) {
    channel.entries(k + 1, 0) = t(k);
    channel.entries(k + 1, k + 1) = lambda(k);
  }
  return channel;
}

BlochVector apply(const PauliTransferMatrix& channel, const BlochVector& v) {
  return channel.translation() + channel.block() * v;
}

Eigen::Matrix2cd apply_to_operator(const Eigen::Matrix4d& transfer,
                                   const Eigen::Matrix2cd& op) {
  return operator_from_coefficients(transfer.cast<std::complex<double>>() *
                                    pauli_coefficients(op));
}

ChoiMatrix choi_of_transfer(const Eigen::Matrix4d& transfer) {
  ChoiMatrix choi;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Eigen::Matrix2cd unit = Eigen::Matrix2cd::Zero();
      unit(a, b) = 1.0;
      choi.entries.block<2, 2>(2 * a, 2 * b) =
          0.5 * apply_to_operator(transfer, unit);
    }
  }
  return choi;
}

ChoiMatrix choi_of(const PauliTransferMatrix& channel) {
  return choi_of_transfer(channel.entries);
}

Eigen::Matrix4d adjoint(const PauliTransferMatrix& channel) {
  return channel.entries.transpose();
}

Eigen::Matrix4d transfer_matrix_from_choi(const ChoiMatrix& choi) {
  // Phi(E_ab) = 2 * block(a, b); assemble Phi(sigma_k) and project back.
  std::array<Eigen::Matrix2cd, 4> phi_unit;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      phi_unit[2 * a + b] = 2.0 * choi.entries.block<2, 2>(2 * a, 2 * b);

  const std::array<Eigen::Matrix2cd, 4> phi_sigma = {
      phi_unit[0] + phi_unit[3],
      phi_unit[1] + phi_unit[2],
      std::complex<double>(0, -1) * phi_unit[1] +
          std::complex<double>(0, 1) * phi_unit[2],
      phi_unit[0] - phi_unit[3]};

  Eigen::Matrix4d transfer;
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      transfer(j, k) = 0.5 * (pauli_basis()[j] * phi_sigma[k]).trace().real();
    }
  }
  return transfer;
}

PauliTransferMatrix transfer_from_choi(const ChoiMatrix& choi) {
  PauliTransferMatrix channel;
  channel.entries = transfer_matrix_from_choi(choi);
  return channel;
}

bool is_hermitian(const Eigen::Matrix4cd& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_density(const Eigen::Matrix2cd& op, double tol) {
  if ((op - op.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(op.trace().real() - 1.0) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(op);
  return solver.eigenvalues().minCoeff() >= -tol &&
         solver.eigenvalues().maxCoeff() <= 1.0 + tol;
}

}  // namespace qebt
