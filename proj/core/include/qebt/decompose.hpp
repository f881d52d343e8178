#ifndef QEBT_DECOMPOSE_HPP
#define QEBT_DECOMPOSE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qebt/cp.hpp"
#include "qebt/types.hpp"

namespace qebt {

// One CQ channel: translation t and a rank-one Bloch block
// lambda * axis_out axis_in^T. axis_out/axis_in are unit vectors; for a
// channel in canonical axes both equal a coordinate axis.
struct CqComponent {
  Eigen::Vector3d t = Eigen::Vector3d::Zero();
  double lambda = 0.0;
  Eigen::Vector3d axis_out = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d axis_in = Eigen::Vector3d::UnitZ();

  Eigen::Matrix4d transfer() const;
  // Realizability: |t_perp|^2 + (|t_par| + |lambda|)^2 <= 1 with t_par the
  // translation component along axis_out.
  bool realizable(double tol = 1e-9) const;
};

struct CqDecomposition {
  std::vector<double> weights;
  std::vector<CqComponent> components;
  double residual = 0.0;

  Eigen::Matrix4d mixture() const;
};

// Both singular values of R_phi within tol of 1. On the degenerate edge
// |t3| + |lambda3| >= 1 the test falls back to Choi rank <= 2.
struct ExtremeReport {
  bool extreme = false;
  double s1 = 0.0, s2 = 0.0;  // singular values, s1 >= s2 (NaN on the edge)
  bool used_choi_rank = false;
};
ExtremeReport is_generalized_extreme(const CanonicalForm& form,
                                     double tol = kDefaultTol);

// Phi = (1/2) Phi_{U+} + (1/2) Phi_{U-} with U+- = V diag(e^{+-i theta_k}) W^dag
// from the singular value decomposition of R_phi. Returns the Choi states of
// the two halves (adjoint representation, as produced by
// phi_from_contraction).
std::pair<ChoiMatrix, ChoiMatrix> split_midpoint(const CanonicalForm& form);

// Phi = (c1+c2)/2 Phi_{VW^dag} + (c1-c2)/2 Phi_{V sz W^dag} + (1-c1) Phi_0
// with c_k = cos theta_k the singular values of R_phi and Phi_0 the
// block-diagonal QC map (U = 0). Throws IsExtreme when both singular values
// are 1.
struct ThreeTermSplit {
  std::array<double, 3> weights{};
  std::array<ChoiMatrix, 3> choi{};
};
ThreeTermSplit split_three_term(const CanonicalForm& form,
                                double tol = kDefaultTol);

// Closed-form convex CQ decompositions for the covered classes:
// point, linear, planar (two-component split in the image plane),
// at most one nonzero t_k (corner mixture of the lambda square), and
// |lambda_1| = |lambda_2| = |lambda_3| (handled in a rotated frame).
// Returns nullopt for channels outside these classes; throws NotEBT.
std::optional<CqDecomposition> decompose_constructive(
    const CanonicalForm& form, double tol = kDefaultTol);

// Convex CQ certificate by nonnegative least squares over a pool of CQ
// candidates (stratified random sampling plus support-point refinement
// rounds that enlarge the pool along the residual direction). Throws
// FitFailed when the residual stays above tol.
CqDecomposition decompose_numeric(const CanonicalForm& form,
                                  int n_candidates = 2000, double tol = 1e-8,
                                  std::uint64_t seed = 42);

// Soundness check used by tests and the CLI: weights form a probability
// vector, every component is realizable CQ, and the mixture reproduces the
// target within tol.
bool validate_decomposition(const CqDecomposition& decomposition,
                            const Eigen::Matrix4d& target, double tol);

// Components of a decomposition computed in canonical axes, mapped back to
// the frame of the channel the canonical form was derived from.
CqDecomposition decomposition_in_original_frame(
    const CqDecomposition& decomposition, const CanonicalForm& form);

}  // namespace qebt

#endif
