#ifndef QEBT_REGION_HPP
#define QEBT_REGION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qebt/types.hpp"

namespace qebt {

// One grid node of the lambda_plus / lambda_minus plane.
struct RegionSample {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double m11 = 0.0, m22 = 0.0, det_m = 0.0;
  int m11_sign = 1, m22_sign = 1;
  bool det_ok = false;
  bool cp = false;
  bool ebt = false;

  // Sign-pair label of the nine-region taxonomy: "++", "+-", "-+", "--".
  std::string region() const {
    std::string label;
    label += m11_sign >= 0 ? '+' : '-';
    label += m22_sign >= 0 ? '+' : '-';
    return label;
  }
};

struct ScanResult {
  std::vector<RegionSample> samples;  // row-major, lambda_minus outer
  int resolution = 0;
  double range = 2.0;
  int cross_checked = 0;
  int cross_mismatches = 0;  // contraction route vs Choi oracle
  int cp_outside_pp = 0;     // cp nodes with m11 <= 0 or m22 <= 0
};

// Dense scan over [-range, range]^2. CP and EBT flags come from the
// contraction conditions; a deterministic 1% subsample is cross-checked
// against the Choi oracle. Requires |t3| + |lambda3| < 1.
ScanResult scan_plane(const Eigen::Vector3d& t, double lambda3, int resolution,
                      double range = 2.0, std::uint64_t seed = 42,
                      int jobs = 0);

// Radial bisection from the origin to the outermost completely positive
// point along n_rays directions, using the Choi oracle as predicate.
// Vertices come back in angular order; the polygon is convex.
std::vector<Eigen::Vector2d> trace_boundary(const Eigen::Vector3d& t,
                                            double lambda3, int n_rays,
                                            int jobs = 0);

// Boundary of {CP} intersected with {CP after swapping lambda_plus and
// lambda_minus}: the entanglement-breaking lens.
std::vector<Eigen::Vector2d> ebt_lens(const Eigen::Vector3d& t, double lambda3,
                                      int n_rays, int jobs = 0);

// Radius of the region boundary along one direction (angle in radians).
double boundary_radius(const Eigen::Vector3d& t, double lambda3, double angle,
                       bool ebt_predicate);

double polygon_area(const std::vector<Eigen::Vector2d>& polygon);
bool polygon_is_convex(const std::vector<Eigen::Vector2d>& polygon,
                       double slack = 1e-8);
bool point_in_polygon(const std::vector<Eigen::Vector2d>& polygon,
                      const Eigen::Vector2d& point);

// Exact integer polytope data for the unital lambda-space geometry.
enum class PolytopeKind { Tetrahedron, Inverted, Octahedron, CornerTetrahedra };

struct PolytopeFacet {
  Eigen::Vector3i normal;
  int rhs = 1;  // inequality normal . x <= rhs
};

struct Polytope {
  std::string name;
  std::vector<Eigen::Vector3i> vertices;
  std::vector<PolytopeFacet> facets;
};

// One polytope for the first three kinds; the four corner tetrahedra for
// PolytopeKind::CornerTetrahedra.
std::vector<Polytope> polytope_data(PolytopeKind kind);

}  // namespace qebt

#endif
