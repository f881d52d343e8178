#ifndef QEBT_CANONICAL_HPP
#define QEBT_CANONICAL_HPP

#include "qebt/errors.hpp"
#include "qebt/types.hpp"

namespace qebt {

// Standard singular values of a 3x3 real matrix, descending and nonnegative.
Eigen::Vector3d singular_values_3x3(const Eigen::Matrix3d& m);

// Reduces a trace-preserving transfer matrix to diagonal form via a signed
// singular value decomposition of the Bloch block: T = R1 D R2^T with both
// rotations proper (det +1). Any det = -1 factor is absorbed by negating the
// third column of the rotation and the matching diagonal entry, so
// |lambda1| >= |lambda2| >= |lambda3| and only lambda3 can carry a sign.
CanonicalForm to_canonical(const PauliTransferMatrix& channel);

// Undoes to_canonical: embeds the rotations in 4x4 block form and composes
// them with the diagonal channel.
PauliTransferMatrix reconstruct(const CanonicalForm& form);

// Diagonal channel carrying the canonical parameters only.
PauliTransferMatrix canonical_channel(const CanonicalForm& form);

CanonicalForm canonical_from_params(const Eigen::Vector3d& t,
                                    const Eigen::Vector3d& lambda);

}  // namespace qebt

#endif
