#ifndef QEBT_TESTS_HELPERS_HPP
#define QEBT_TESTS_HELPERS_HPP

#include <Eigen/Dense>
#include <cmath>

#include "qebt/channel.hpp"
#include "qebt/holevo.hpp"
#include "qebt/sampling.hpp"
#include "qebt/types.hpp"

namespace qebt::testing {

// Amplitude damping in canonical parameters: lambda = (a, a, a^2),
// t = (0, 0, 1 - a^2).
inline PauliTransferMatrix amplitude_damping(double a) {
  return channel_from_canonical({0, 0, 1 - a * a}, {a, a, a * a});
}

// Independent Kraus-form oracle for amplitude damping:
// K1 = diag(1, a), K2 = ((0, sqrt(1-a^2)), (0, 0)).
inline Eigen::Matrix2cd amplitude_damping_kraus(double a,
                                                const Eigen::Matrix2cd& rho) {
  Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
  k1(0, 0) = 1.0;
  k1(1, 1) = a;
  Eigen::Matrix2cd k2 = Eigen::Matrix2cd::Zero();
  k2(0, 1) = std::sqrt(1.0 - a * a);
  return k1 * rho * k1.adjoint() + k2 * rho * k2.adjoint();
}

// Trine POVM E_k = (1/3)[I + wbar_k . sigma] against outputs
// R_k = (I + e_k . sigma)/2.
inline HolevoEnsemble trine_ensemble() {
  const double root3_half = std::sqrt(3.0) / 2.0;
  const Eigen::Vector3d povm_axes[3] = {
      {1.0, 0.0, 0.0}, {-0.5, 0.0, root3_half}, {-0.5, 0.0, -root3_half}};
  HolevoEnsemble ensemble;
  for (int k = 0; k < 3; ++k) {
    HolevoItem item;
    item.w = Eigen::Vector3d::Unit(k);
    item.u0 = 1.0 / 3.0;
    item.u = povm_axes[k] / 3.0;
    ensemble.items.push_back(item);
  }
  return ensemble;
}

inline Eigen::Matrix2cd random_hermitian(Rng& rng) {
  Eigen::Matrix2cd m;
  m(0, 0) = rng.normal();
  m(1, 1) = rng.normal();
  const std::complex<double> off(rng.normal(), rng.normal());
  m(0, 1) = off;
  m(1, 0) = std::conj(off);
  return m;
}

// Random valid Holevo ensemble by rejection.
inline HolevoEnsemble random_ensemble(Rng& rng, int n_items) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    HolevoEnsemble ensemble;
    double u0_left = 1.0;
    Eigen::Vector3d u_sum = Eigen::Vector3d::Zero();
    bool ok = true;
    for (int k = 0; k < n_items; ++k) {
      HolevoItem item;
      item.w = rng.uniform(0.0, 1.0) * random_unit_vector(rng);
      if (k + 1 == n_items) {
        item.u0 = u0_left;
        item.u = -u_sum;
      } else {
        item.u0 = rng.uniform(0.0, u0_left);
        item.u = rng.uniform(0.0, item.u0) * random_unit_vector(rng);
      }
      if (item.u0 < 0 || item.u.norm() > item.u0) {
        ok = false;
        break;
      }
      u0_left -= item.u0;
      u_sum += item.u;
      ensemble.items.push_back(item);
    }
    if (ok) return ensemble;
  }
  throw Error("random_ensemble: rejection sampling exhausted");
}

}  // namespace qebt::testing

#endif
