#ifndef QEBT_CHANNEL_HPP
#define QEBT_CHANNEL_HPP

#include <array>

#include "qebt/types.hpp"

namespace qebt {

// Pauli matrices indexed (I, s1, s2, s3); s2 = (0, -i; i, 0).
const std::array<Eigen::Matrix2cd, 4>& pauli_basis();

// rho = (I + v.sigma)/2.
Eigen::Matrix2cd density_from_bloch(const BlochVector& v);

// Pauli coefficient vector a with A = (1/2) sum_k a_k sigma_k.
Eigen::Vector4cd pauli_coefficients(const Eigen::Matrix2cd& op);
Eigen::Matrix2cd operator_from_coefficients(const Eigen::Vector4cd& a);

// Builds the diagonal transfer matrix with translation t and Bloch block
// diag(lambda).
PauliTransferMatrix channel_from_canonical(const Eigen::Vector3d& t,
                                           const Eigen::Vector3d& lambda);

// Bloch action v -> t + T v.
BlochVector apply(const PauliTransferMatrix& channel, const BlochVector& v);

// Applies the map described by a 4x4 transfer matrix to a 2x2 operator.
// Works for non-trace-preserving transfer matrices (e.g. adjoints).
Eigen::Matrix2cd apply_to_operator(const Eigen::Matrix4d& transfer,
                                   const Eigen::Matrix2cd& op);

// Choi state with trace-1 normalization: (1/2) sum_ab E_ab (x) Phi(E_ab).
ChoiMatrix choi_of(const PauliTransferMatrix& channel);
ChoiMatrix choi_of_transfer(const Eigen::Matrix4d& transfer);

// Hilbert-Schmidt adjoint in the Pauli basis: the transpose. Generally not
// trace preserving (it is unital instead).
Eigen::Matrix4d adjoint(const PauliTransferMatrix& channel);

// Inverts the linear map behind choi_of.
PauliTransferMatrix transfer_from_choi(const ChoiMatrix& choi);
Eigen::Matrix4d transfer_matrix_from_choi(const ChoiMatrix& choi);

bool is_hermitian(const Eigen::Matrix4cd& m, double tol = kMatrixTol);

// Hermitian, PSD, unit trace.
bool is_density(const Eigen::Matrix2cd& op, double tol = kMatrixTol);

}  // namespace qebt

#endif
