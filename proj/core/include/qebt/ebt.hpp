#ifndef QEBT_EBT_HPP
#define QEBT_EBT_HPP

#include "qebt/cp.hpp"
#include "qebt/types.hpp"

namespace qebt {

// Entanglement breaking iff flipping the sign of any one lambda_k leaves the
// channel completely positive. A single flip decides; all three are checked
// and must agree. Boundary propagates: a flip landing within tol of the CP
// boundary yields Boundary.
Verdict ebt_sign_change(const CanonicalForm& form, double tol = kDefaultTol);

// Entanglement breaking iff the composition with the transpose is CP. In the
// Pauli basis the transpose negates column 2.
Verdict ebt_ppt(const PauliTransferMatrix& channel, double tol = kDefaultTol);

// Entanglement breaking iff max eigenvalue of the Choi state is <= 1/2.
Verdict ebt_choi_bound(const PauliTransferMatrix& channel,
                       double tol = kDefaultTol);

// sum_j |lambda_j| <= 1 is necessary always and decisive for unital
// channels.
struct SumLambdaReport {
  double sum = 0.0;
  bool necessary_pass = false;
  bool unital = false;
  Verdict unital_verdict = Verdict::Boundary;  // meaningful only if unital
};
SumLambdaReport ebt_sum_lambda(const CanonicalForm& form,
                               double tol = kDefaultTol);

// Entanglement breaking iff both (t, lambda) and (t, -lambda) are CP.
Verdict ebt_region_intersection(const CanonicalForm& form,
                                double tol = kDefaultTol);

enum class ImageGeometry { Point, Linear, Planar, Full };

const char* to_string(ImageGeometry g);

// Image classification by the number of vanishing lambda_k, plus CQ / QC
// realizability flags. is_cq covers linear channels satisfying the
// line-image bound and point channels (a point channel is a CQ channel with
// both output states equal). is_qc covers linear channels whose translation
// is parallel to the image axis.
struct GeometryReport {
  ImageGeometry image = ImageGeometry::Full;
  int zero_count = 0;
  bool is_cq = false;
  bool is_qc = false;
};
GeometryReport classify_geometry(const CanonicalForm& form,
                                 double zero_tol = 1e-10,
                                 double cp_tol = kDefaultTol);

// For a channel with exactly one vanishing lambda: true iff equality holds
// in (|l_q| + |l_r|)^2 + |t|^2 <= 1 and the in-plane translation components
// vanish. Property-test helper, not a classifier.
bool planar_touch_test(const CanonicalForm& form, double tol = kDefaultTol);

// Unital entanglement-breaking octahedron, sum_k |lambda_k| <= 1.
bool octahedron_membership(const Eigen::Vector3d& lambda);

// Fails unless the channel is CP within tol.
void require_cp(const CanonicalForm& form, double tol);
void require_cp(const PauliTransferMatrix& channel, double tol);

}  // namespace qebt

#endif
