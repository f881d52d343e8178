#include "qebt/canonical.hpp"

#include <Eigen/SVD>

#include "qebt/channel.hpp"

namespace qebt {

Eigen::Vector3d singular_values_3x3(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
  return svd.singularValues();
}

CanonicalForm to_canonical(const PauliTransferMatrix& channel) {
  if (!channel.trace_preserving()) {
    throw InvalidChannel("to_canonical: row 0 must be (1,0,0,0)");
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      channel.block(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r1 = svd.matrixU();
  Eigen::Matrix3d r2 = svd.matrixV();
  Eigen::Vector3d d = svd.singularValues();

  if (r1.determinant() < 0) {
    r1.col(2) *= -1.0;
    d(2) *= -1.0;
  }
  if (r2.determinant() < 0) {
    r2.col(2) *= -1.0;
    d(2) *= -1.0;
  }

  CanonicalForm form;
  form.rot_out = r1.transpose();
  form.rot_in = r2.transpose();
  form.lambda = d;
  form.t = form.rot_out * channel.translation();
  return form;
}

PauliTransferMatrix reconstruct(const CanonicalForm& form) {
  PauliTransferMatrix channel;
  channel.entries = Eigen::Matrix4d::Zero();
  channel.entries(0, 0) = 1.0;
  channel.entries.block<3, 1>(1, 0) = form.rot_out.transpose() * form.t;
  channel.entries.block<3, 3>(1, 1) = form.rot_out.transpose() *
                                      form.lambda.asDiagonal() * form.rot_in;
  return channel;
}

PauliTransferMatrix canonical_channel(const CanonicalForm& form) {
  return channel_from_canonical(form.t, form.lambda);
}

CanonicalForm canonical_from_params(const Eigen::Vector3d& t,
                                    const Eigen::Vector3d& lambda) {
  CanonicalForm form;
  form.t = t;
  form.lambda = lambda;
  return form;
}

}  // namespace qebt
