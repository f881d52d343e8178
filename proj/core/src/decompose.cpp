#include "qebt/decompose.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qebt/canonical.hpp"
#include "qebt/ebt.hpp"
#include "qebt/errors.hpp"
#include "qebt/holevo.hpp"
#include "qebt/nnls.hpp"
#include "qebt/sampling.hpp"

namespace qebt {

namespace {

constexpr double kWeightPrune = 1e-12;

Eigen::Vector2i other_axes(int axis) {
  switch (axis) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

CqComponent axis_component(int axis, double lambda, const Eigen::Vector3d& t) {
  CqComponent component;
  component.t = t;
  component.lambda = lambda;
  component.axis_out = Eigen::Vector3d::Unit(axis);
  component.axis_in = Eigen::Vector3d::Unit(axis);
  return component;
}

void append(CqDecomposition& out, double weight, const CqComponent& component) {
  if (weight <= kWeightPrune) return;
  out.weights.push_back(weight);
  out.components.push_back(component);
}

void append_scaled(CqDecomposition& out, double scale,
                   const CqDecomposition& inner) {
  for (size_t i = 0; i < inner.components.size(); ++i) {
    append(out, scale * inner.weights[i], inner.components[i]);
  }
}

// Planar split: for lambda_p = 0 the channel mixes into two linear channels
// on the remaining axes q, r. Component A carries lambda_q together with
// t_r, component B carries lambda_r together with t_q, both keep t_p.
// Feasible iff sqrt(l_q^2 + t_r^2) + sqrt(l_r^2 + t_q^2) <= sqrt(1 - t_p^2).
std::optional<CqDecomposition> planar_split(const Eigen::Vector3d& t,
                                            const Eigen::Vector3d& lambda,
                                            int zero_axis, double slack) {
  const Eigen::Vector2i qr = other_axes(zero_axis);
  const int q = qr(0), r = qr(1);
  const double alpha = std::hypot(lambda(q), t(r));
  const double beta = std::hypot(lambda(r), t(q));
  const double cap =
      std::sqrt(std::max(0.0, 1.0 - t(zero_axis) * t(zero_axis)));
  if (alpha + beta > cap + slack) return std::nullopt;

  CqDecomposition out;
  if (alpha + beta <= kWeightPrune) {
    append(out, 1.0, axis_component(q, 0.0, t));  // point channel
    return out;
  }
  const double w = alpha / (alpha + beta);
  if (w > kWeightPrune) {
    Eigen::Vector3d ta = Eigen::Vector3d::Zero();
    ta(zero_axis) = t(zero_axis);
    ta(r) = t(r) / w;
    append(out, w, axis_component(q, lambda(q) / w, ta));
  }
  if (1.0 - w > kWeightPrune) {
    Eigen::Vector3d tb = Eigen::Vector3d::Zero();
    tb(zero_axis) = t(zero_axis);
    tb(q) = t(q) / (1.0 - w);
    append(out, 1.0 - w, axis_component(r, lambda(r) / (1.0 - w), tb));
  }
  return out;
}

// Point, linear, or planar channel straight to components.
std::optional<CqDecomposition> decompose_simple(const Eigen::Vector3d& t,
                                                const Eigen::Vector3d& lambda,
                                                double zero_tol,
                                                double slack) {
  int zeros = 0;
  int zero_axis = -1;
  int live_axis = 2;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(lambda(k)) <= zero_tol) {
      ++zeros;
      zero_axis = k;
    } else {
      live_axis = k;
    }
  }
  CqDecomposition out;
  if (zeros == 3) {
    append(out, 1.0, axis_component(2, 0.0, t));
    return out;
  }
  if (zeros == 2) {
    append(out, 1.0, axis_component(live_axis, lambda(live_axis), t));
    return out;
  }
  if (zeros == 1) return planar_split(t, lambda, zero_axis, slack);
  return std::nullopt;
}

// At most one nonzero t_k (axis s): mix the corners (+-A, 0), (0, +-A) of
// the admissible square of the two transverse lambdas,
// A = sqrt((1 - |lambda_s|)^2 - t_s^2), each corner being a planar channel,
// plus the purely axial remainder.
std::optional<CqDecomposition> single_translation_split(
    const Eigen::Vector3d& t, const Eigen::Vector3d& lambda, int s,
    double zero_tol, double slack) {
  const Eigen::Vector2i qr = other_axes(s);
  const int q = qr(0), r = qr(1);
  const double one_minus = 1.0 - std::abs(lambda(s));
  const double a_sq = one_minus * one_minus - t(s) * t(s);
  if (a_sq < -slack) return std::nullopt;
  const double a = std::sqrt(std::max(0.0, a_sq));
  if (std::abs(lambda(q)) + std::abs(lambda(r)) > a + slack)
    return std::nullopt;
  if (a <= zero_tol) {
    return decompose_simple(t, lambda, zero_tol, slack);
  }

  const double wq = std::min(1.0, std::abs(lambda(q)) / a);
  const double wr = std::min(1.0 - wq, std::abs(lambda(r)) / a);
  const double rest = std::max(0.0, 1.0 - wq - wr);

  CqDecomposition out;
  const auto corner_term = [&](int axis, double sign,
                               double weight) -> bool {
    if (weight <= kWeightPrune) return true;
    Eigen::Vector3d corner = Eigen::Vector3d::Zero();
    corner(axis) = sign * a;
    corner(s) = lambda(s);
    auto sub = decompose_simple(t, corner, zero_tol, slack);
    if (!sub) return false;
    append_scaled(out, weight, *sub);
    return true;
  };
  if (!corner_term(q, lambda(q) >= 0 ? 1.0 : -1.0, wq)) return std::nullopt;
  if (!corner_term(r, lambda(r) >= 0 ? 1.0 : -1.0, wr)) return std::nullopt;
  if (rest > kWeightPrune) {
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    center(s) = lambda(s);
    auto sub = decompose_simple(t, center, zero_tol, slack);
    if (!sub) return std::nullopt;
    append_scaled(out, rest, *sub);
  }
  return out;
}

CqComponent rotate_component(const CqComponent& component,
                             const Eigen::Matrix3d& out_rotation,
                             const Eigen::Matrix3d& in_rotation) {
  CqComponent mapped;
  mapped.t = out_rotation * component.t;
  mapped.lambda = component.lambda;
  mapped.axis_out = out_rotation * component.axis_out;
  mapped.axis_in = in_rotation * component.axis_in;
  return mapped;
}

// |lambda_1| = |lambda_2| = |lambda_3| = l > 0: fix the signs to a common
// one with an axis-flip rotation on the range, rotate t onto the third
// axis, solve there, and map the components back.
std::optional<CqDecomposition> equal_magnitude_split(
    const Eigen::Vector3d& t, const Eigen::Vector3d& lambda, double zero_tol,
    double slack) {
  const Eigen::Vector3d abs_lambda = lambda.cwiseAbs();
  const double mean = abs_lambda.mean();
  if (mean <= zero_tol) return std::nullopt;
  if ((abs_lambda.array() - mean).abs().maxCoeff() > 1e-12)
    return std::nullopt;

  const double product_sign =
      lambda(0) * lambda(1) * lambda(2) >= 0 ? 1.0 : -1.0;
  Eigen::Vector3d flips;
  for (int k = 0; k < 3; ++k) {
    const double sk = lambda(k) >= 0 ? 1.0 : -1.0;
    flips(k) = product_sign * sk;
  }
  const Eigen::Matrix3d o1 = flips.asDiagonal();
  const Eigen::Vector3d t1 = o1 * t;
  const Eigen::Matrix3d o2 = rotation_to_z(t1);
  const Eigen::Vector3d t2(0.0, 0.0, t1.norm());
  const Eigen::Vector3d lambda2 =
      product_sign * mean * Eigen::Vector3d::Ones();

  auto sub = single_translation_split(t2, lambda2, 2, zero_tol, slack);
  if (!sub) return std::nullopt;

  // T = B((o2 o1)^T) T'' B(o2), so components rotate back accordingly.
  const Eigen::Matrix3d out_rotation = (o2 * o1).transpose();
  const Eigen::Matrix3d in_rotation = o2.transpose();
  CqDecomposition mapped;
  for (size_t i = 0; i < sub->components.size(); ++i) {
    append(mapped, sub->weights[i],
           rotate_component(sub->components[i], out_rotation, in_rotation));
  }
  return mapped;
}

void normalize_weights(CqDecomposition& decomposition) {
  double total = 0.0;
  for (double w : decomposition.weights) total += w;
  if (total <= 0.0) return;
  for (double& w : decomposition.weights) w /= total;
}

}  // namespace

Eigen::Matrix4d CqComponent::transfer() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = 1.0;
  m.block<3, 1>(1, 0) = t;
  m.block<3, 3>(1, 1) = lambda * axis_out * axis_in.transpose();
  return m;
}

bool CqComponent::realizable(double tol) const {
  const double t_par = t.dot(axis_out);
  const double perp_sq = (t - t_par * axis_out).squaredNorm();
  const double reach = std::abs(t_par) + std::abs(lambda);
  return perp_sq + reach * reach <= 1.0 + tol;
}

Eigen::Matrix4d CqDecomposition::mixture() const {
  Eigen::Matrix4d sum = Eigen::Matrix4d::Zero();
  for (size_t i = 0; i < components.size(); ++i) {
    sum += weights[i] * components[i].transfer();
  }
  return sum;
}

ExtremeReport is_generalized_extreme(const CanonicalForm& form, double tol) {
  require_cp(form, tol);
  ExtremeReport report;
  if (std::abs(form.t(2)) + std::abs(form.lambda(2)) >= 1.0) {
    // Degenerate edge: R_phi is undefined; Choi rank <= 2 takes over.
    report.used_choi_rank = true;
    report.s1 = report.s2 = std::numeric_limits<double>::quiet_NaN();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
        choi_of(canonical_channel(form)).entries, Eigen::EigenvaluesOnly);
    int rank = 0;
    for (int k = 0; k < 4; ++k) {
      if (solver.eigenvalues()(k) > tol) ++rank;
    }
    report.extreme = rank <= 2;
    return report;
  }
  const ContractionData data = contraction_matrix(form);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(data.r_phi);
  report.s1 = svd.singularValues()(0);
  report.s2 = svd.singularValues()(1);
  report.extreme =
      std::abs(report.s1 - 1.0) <= tol && std::abs(report.s2 - 1.0) <= tol;
  return report;
}

namespace {

struct RPhiSvd {
  Eigen::Matrix2cd v, w;  // R = v * diag(s1, s2) * w^dag
  double s1 = 0, s2 = 0;
};

RPhiSvd r_phi_svd(const CanonicalForm& form) {
  const ContractionData data = contraction_matrix(form);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(
      data.r_phi, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RPhiSvd out;
  out.v = svd.matrixU();
  out.w = svd.matrixV();
  out.s1 = std::min(svd.singularValues()(0), 1.0);
  out.s2 = std::min(svd.singularValues()(1), 1.0);
  return out;
}

}  // namespace

std::pair<ChoiMatrix, ChoiMatrix> split_midpoint(const CanonicalForm& form) {
  const RPhiSvd svd = r_phi_svd(form);
  const Eigen::Vector2cd phases(
      std::complex<double>(svd.s1, std::sqrt(std::max(0.0, 1.0 - svd.s1 * svd.s1))),
      std::complex<double>(svd.s2, std::sqrt(std::max(0.0, 1.0 - svd.s2 * svd.s2))));
  const Eigen::Matrix2cd u_plus = svd.v * phases.asDiagonal() * svd.w.adjoint();
  const Eigen::Matrix2cd u_minus =
      svd.v * phases.conjugate().asDiagonal() * svd.w.adjoint();
  return {phi_from_contraction(form, u_plus),
          phi_from_contraction(form, u_minus)};
}

ThreeTermSplit split_three_term(const CanonicalForm& form, double tol) {
  const RPhiSvd svd = r_phi_svd(form);
  if (svd.s1 >= 1.0 - tol && svd.s2 >= 1.0 - tol) {
    throw IsExtreme("split_three_term: R_phi is unitary");
  }
  ThreeTermSplit out;
  out.weights = {0.5 * (svd.s1 + svd.s2), 0.5 * (svd.s1 - svd.s2),
                 1.0 - svd.s1};
  Eigen::Matrix2cd sz = Eigen::Matrix2cd::Zero();
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  out.choi = {phi_from_contraction(form, svd.v * svd.w.adjoint()),
              phi_from_contraction(form, svd.v * sz * svd.w.adjoint()),
              phi_from_contraction(form, Eigen::Matrix2cd::Zero())};
  return out;
}

std::optional<CqDecomposition> decompose_constructive(const CanonicalForm& form,
                                                      double tol) {
  if (ebt_sign_change(form, tol) == Verdict::No) {
    throw NotEBT("decompose_constructive: channel is not entanglement breaking");
  }
  const double zero_tol = 1e-10;
  const double slack = 1e-9;
  std::optional<CqDecomposition> result =
      decompose_simple(form.t, form.lambda, zero_tol, slack);

  if (!result) {
    int t_nonzero = 0;
    int s = 2;
    for (int k = 0; k < 3; ++k) {
      if (std::abs(form.t(k)) > kMatrixTol) {
        ++t_nonzero;
        s = k;
      }
    }
    if (t_nonzero <= 1) {
      result = single_translation_split(form.t, form.lambda, s, zero_tol, slack);
    }
  }
  if (!result) {
    result = equal_magnitude_split(form.t, form.lambda, zero_tol, slack);
  }
  if (!result) return std::nullopt;

  normalize_weights(*result);
  result->residual =
      (result->mixture() - canonical_channel(form).entries).norm();
  return result;
}

namespace {

// 12 free transfer entries (rows 1..3, all columns) plus the affine row.
Eigen::VectorXd embed(const Eigen::Matrix4d& m) {
  Eigen::VectorXd v(13);
  int idx = 0;
  for (int row = 1; row < 4; ++row)
    for (int col = 0; col < 4; ++col) v(idx++) = m(row, col);
  v(12) = 1.0;
  return v;
}

CqComponent random_cq_candidate(Rng& rng, int stratum) {
  CqComponent c;
  switch (stratum) {
    case 0: {  // unital
      c.axis_out = random_unit_vector(rng);
      c.axis_in = rng.coin(0.5) ? c.axis_out : random_unit_vector(rng);
      c.lambda = rng.coin(0.8) ? (rng.coin() ? 1.0 : -1.0)
                               : rng.uniform(-1.0, 1.0);
      c.t.setZero();
      break;
    }
    case 1: {  // realizability boundary, pure output states
      c.axis_out = random_unit_vector(rng);
      c.axis_in = random_unit_vector(rng);
      const double phi = rng.uniform(0.0, M_PI_2);
      Eigen::Vector3d perp = random_unit_vector(rng);
      perp -= perp.dot(c.axis_out) * c.axis_out;
      if (perp.norm() < 1e-8) perp = c.axis_out.unitOrthogonal();
      perp.normalize();
      c.t = std::sin(phi) * perp;
      c.lambda = (rng.coin() ? 1.0 : -1.0) * std::cos(phi);
      break;
    }
    default: {  // interior
      c.axis_out = random_unit_vector(rng);
      c.axis_in = random_unit_vector(rng);
      c.lambda = rng.uniform(-1.0, 1.0);
      c.t = Eigen::Vector3d(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                            rng.uniform(-1.0, 1.0));
      for (int guard = 0; guard < 64 && !c.realizable(0.0); ++guard) {
        c.t *= 0.8;
        c.lambda *= 0.8;
      }
      break;
    }
  }
  return c;
}

// Exact support point of the entanglement-breaking body in the direction
// (g_t, G): the extreme CQ maps have t orthogonal to the output axis with
// |t|^2 + lambda^2 = 1 (point channels are the lambda = 0 case), and the
// direction value hypot(|P_a g_t|, |G^T a|) is maximized by the top
// eigenvector of G G^T - g_t g_t^T.
CqComponent support_candidate(const Eigen::Vector3d& g_t,
                              const Eigen::Matrix3d& g_block, int which) {
  const Eigen::Matrix3d quad =
      g_block * g_block.transpose() - g_t * g_t.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(quad);
  const Eigen::Vector3d a = solver.eigenvectors().col(2 - which).normalized();

  CqComponent c;
  c.axis_out = a;
  const Eigen::Vector3d gta = g_block.transpose() * a;
  const double h = gta.norm();
  c.axis_in = h > 1e-14 ? Eigen::Vector3d(gta / h) : a;
  Eigen::Vector3d perp = g_t - g_t.dot(a) * a;
  const double np = perp.norm();
  const double denom = std::hypot(np, h);
  if (denom < 1e-15) {
    c.lambda = 1.0;
    c.t.setZero();
    return c;
  }
  c.lambda = h / denom;
  c.t = np > 1e-14 ? Eigen::Vector3d((np / denom) * (perp / np))
                   : Eigen::Vector3d::Zero();
  return c;
}

}  // namespace

CqDecomposition decompose_numeric(const CanonicalForm& form, int n_candidates,
                                  double tol, std::uint64_t seed) {
  const Eigen::Matrix4d target = canonical_channel(form).entries;
  const Eigen::VectorXd b = embed(target);

  std::vector<CqComponent> pool;
  pool.reserve(n_candidates + 300);

  // Octahedron vertices first; they alone cover unital targets.
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      pool.push_back(axis_component(axis, sign, Eigen::Vector3d::Zero()));
    }
  }
  // Constructive components, when the covered-class machinery applies.
  try {
    if (auto constructive = decompose_constructive(form)) {
      for (const CqComponent& c : constructive->components) pool.push_back(c);
    }
  } catch (const Error&) {
    // Not entanglement breaking or not CP: leave it to the fit to fail.
  }

  Rng rng(mix64(seed, 0x6c71));
  while (static_cast<int>(pool.size()) < n_candidates) {
    pool.push_back(random_cq_candidate(rng, static_cast<int>(pool.size()) % 3));
  }

  Eigen::MatrixXd a(13, pool.size());
  for (size_t j = 0; j < pool.size(); ++j) a.col(j) = embed(pool[j].transfer());
  NnlsResult fit = nnls(a, b);

  const auto extract = [&target](const Eigen::VectorXd& x,
                                 const std::vector<CqComponent>& components) {
    CqDecomposition out;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (x(j) > kWeightPrune) {
        out.weights.push_back(x(j));
        out.components.push_back(components[j]);
      }
    }
    normalize_weights(out);
    out.residual = (out.mixture() - target).norm();
    return out;
  };
  if (fit.residual <= tol * 0.5) return extract(fit.x, pool);

  // Support-point refinement. The fit continues on the active support plus
  // exact support points of the body along the residual direction; on the
  // compact matrix the solver can snap exactly onto targets that hug a
  // face, which the wide random pool prevents (the directional gap decays
  // like residual^2 and falls under the activation tolerance).
  std::vector<CqComponent> active;
  for (Eigen::Index j = 0; j < fit.x.size(); ++j) {
    if (fit.x(j) > 0.0) active.push_back(pool[j]);
  }
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      active.push_back(axis_component(axis, sign, Eigen::Vector3d::Zero()));
    }
  }
  // Near-machine activation gate: by the time refinement starts, the
  // directional gap can sit at residual^2 scale and must still pass.
  const double gate = 1e-16;
  Eigen::MatrixXd ar(13, active.size());
  for (size_t j = 0; j < active.size(); ++j)
    ar.col(j) = embed(active[j].transfer());
  fit = nnls(ar, b, 0, gate);

  const int max_rounds = 300;
  double previous = std::numeric_limits<double>::infinity();
  int stalls = 0;
  for (int round = 0; round < max_rounds && fit.residual > tol * 0.5; ++round) {
    const Eigen::VectorXd g = b - ar * fit.x;
    Eigen::Vector3d g_t(g(0), g(4), g(8));
    Eigen::Matrix3d g_block;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g_block(i, j) = g(i * 4 + j + 1);

    std::vector<CqComponent> extra;
    extra.push_back(support_candidate(g_t, g_block, 0));
    extra.push_back(support_candidate(g_t, g_block, 1));
    if (g_t.norm() > 1e-14) {
      extra.push_back(axis_component(2, 0.0, g_t.normalized()));  // point
    }

    const Eigen::Index old_cols = ar.cols();
    ar.conservativeResize(Eigen::NoChange, old_cols + extra.size());
    for (size_t j = 0; j < extra.size(); ++j) {
      active.push_back(extra[j]);
      ar.col(old_cols + static_cast<Eigen::Index>(j)) =
          embed(extra[j].transfer());
    }
    fit = nnls(ar, b, 0, gate);

    // A genuine plateau (target outside the hull, e.g. non-EBT input)
    // shows up as rounds with no meaningful relative progress.
    if (previous - fit.residual < std::max(1e-15, fit.residual * 1e-6)) {
      if (++stalls >= 10) break;
    } else {
      stalls = 0;
    }
    previous = fit.residual;
  }

  if (fit.residual > tol) {
    throw FitFailed("decompose_numeric: residual " +
                    std::to_string(fit.residual) + " above tolerance");
  }

  return extract(fit.x, active);
}

CqDecomposition decomposition_in_original_frame(
    const CqDecomposition& decomposition, const CanonicalForm& form) {
  CqDecomposition mapped;
  mapped.weights = decomposition.weights;
  mapped.residual = decomposition.residual;
  for (const CqComponent& c : decomposition.components) {
    mapped.components.push_back(rotate_component(c, form.rot_out.transpose(),
                                                 form.rot_in.transpose()));
  }
  return mapped;
}

bool validate_decomposition(const CqDecomposition& decomposition,
                            const Eigen::Matrix4d& target, double tol) {
  if (decomposition.weights.size() != decomposition.components.size() ||
      decomposition.weights.empty()) {
    return false;
  }
  double total = 0.0;
  for (double w : decomposition.weights) {
    if (w < 0.0) return false;
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) return false;
  for (const CqComponent& c : decomposition.components) {
    if (!c.realizable()) return false;
  }
  return (decomposition.mixture() - target).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qebt
