#include "qebt/ebt.hpp"

#include <cmath>

#include "qebt/canonical.hpp"
#include "qebt/errors.hpp"

namespace qebt {

namespace {

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::No || b == Verdict::No) return Verdict::No;
  if (a == Verdict::Boundary || b == Verdict::Boundary)
    return Verdict::Boundary;
  return Verdict::Yes;
}

}  // namespace

void require_cp(const PauliTransferMatrix& channel, double tol) {
  if (!choi_psd(channel, tol).is_psd) {
    throw NotCP("channel is not completely positive");
  }
}

void require_cp(const CanonicalForm& form, double tol) {
  require_cp(canonical_channel(form), tol);
}

Verdict ebt_sign_change(const CanonicalForm& form, double tol) {
  require_cp(form, tol);
  Verdict verdict = Verdict::Yes;
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d flipped = form.lambda;
    flipped(k) = -flipped(k);
    const Verdict flip =
        choi_psd(channel_from_canonical(form.t, flipped), tol).verdict;
    verdict = combine(verdict, flip);
  }
  return verdict;
}

Verdict ebt_ppt(const PauliTransferMatrix& channel, double tol) {
  require_cp(channel, tol);
  PauliTransferMatrix composed = channel;
  composed.entries.col(2) *= -1.0;
  return choi_psd(composed, tol).verdict;
}

Verdict ebt_choi_bound(const PauliTransferMatrix& channel, double tol) {
  require_cp(channel, tol);
  const double margin = 0.5 - max_choi_eig(channel);
  if (std::abs(margin) < tol) return Verdict::Boundary;
  return margin > 0 ? Verdict::Yes : Verdict::No;
}

SumLambdaReport ebt_sum_lambda(const CanonicalForm& form, double tol) {
  SumLambdaReport report;
  report.sum = form.lambda.cwiseAbs().sum();
  report.necessary_pass = report.sum <= 1.0 + tol;
  report.unital = form.t.norm() <= kMatrixTol;
  if (report.unital) {
    const double margin = 1.0 - report.sum;
    if (std::abs(margin) < tol) {
      report.unital_verdict = Verdict::Boundary;
    } else {
      report.unital_verdict = margin > 0 ? Verdict::Yes : Verdict::No;
    }
  }
  return report;
}

Verdict ebt_region_intersection(const CanonicalForm& form, double tol) {
  require_cp(form, tol);
  const Verdict original = choi_psd(form, tol).verdict;
  const Verdict inverted =
      choi_psd(channel_from_canonical(form.t, -form.lambda), tol).verdict;
  return combine(original, inverted);
}

const char* to_string(ImageGeometry g) {
  switch (g) {
    case ImageGeometry::Point: return "point";
    case ImageGeometry::Linear: return "linear";
    case ImageGeometry::Planar: return "planar";
    default: return "full";
  }
}

GeometryReport classify_geometry(const CanonicalForm& form, double zero_tol,
                                 double cp_tol) {
  require_cp(form, cp_tol);
  GeometryReport report;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(form.lambda(k)) <= zero_tol) ++report.zero_count;
  }
  switch (report.zero_count) {
    case 3: report.image = ImageGeometry::Point; break;
    case 2: report.image = ImageGeometry::Linear; break;
    case 1: report.image = ImageGeometry::Planar; break;
    default: report.image = ImageGeometry::Full; break;
  }

  if (report.image == ImageGeometry::Point) {
    report.is_cq = form.t.norm() <= 1.0 + cp_tol;
    return report;
  }
  if (report.image != ImageGeometry::Linear) return report;

  int axis = 0;
  form.lambda.cwiseAbs().maxCoeff(&axis);
  const double l_axis = form.lambda(axis);
  double perp_sq = 0.0;
  double t_perp_norm = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (k == axis) continue;
    perp_sq += form.t(k) * form.t(k);
    t_perp_norm = std::max(t_perp_norm, std::abs(form.t(k)));
  }
  const double reach = std::abs(form.t(axis)) + std::abs(l_axis);
  report.is_cq = perp_sq + reach * reach <= 1.0 + cp_tol;
  report.is_qc = t_perp_norm <= zero_tol && reach <= 1.0 + cp_tol;
  return report;
}

bool planar_touch_test(const CanonicalForm& form, double tol) {
  int zero_axis = -1;
  int zero_count = 0;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(form.lambda(k)) <= 1e-10) {
      zero_axis = k;
      ++zero_count;
    }
  }
  if (zero_count != 1) {
    throw Error("planar_touch_test: channel must have exactly one zero lambda");
  }
  double abs_sum = 0.0;
  double in_plane = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (k == zero_axis) continue;
    abs_sum += std::abs(form.lambda(k));
    in_plane = std::max(in_plane, std::abs(form.t(k)));
  }
  const double slack = 1.0 - abs_sum * abs_sum - form.t.squaredNorm();
  return std::abs(slack) <= tol && in_plane <= tol;
}

bool octahedron_membership(const Eigen::Vector3d& lambda) {
  return lambda.cwiseAbs().sum() <= 1.0 + kMatrixTol;
}

}  // namespace qebt
