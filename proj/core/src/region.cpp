#include "qebt/region.hpp"

#include <cmath>
#include <thread>

#include "qebt/canonical.hpp"
#include "qebt/cp.hpp"
#include "qebt/errors.hpp"
#include "qebt/sampling.hpp"

namespace qebt {

namespace {

CanonicalForm plane_form(const Eigen::Vector3d& t, double lambda3,
                         double lambda_plus, double lambda_minus) {
  return canonical_from_params(
      t, {0.5 * (lambda_plus + lambda_minus), 0.5 * (lambda_plus - lambda_minus),
          lambda3});
}

// Exact PSD predicate for bisection; the inclusive tolerance band of
// choi_psd would inflate every traced radius by a few nano-units.
bool choi_cp(const Eigen::Vector3d& t, double lambda3, double lambda_plus,
             double lambda_minus) {
  return min_choi_eig(canonical_channel(
             plane_form(t, lambda3, lambda_plus, lambda_minus))) >= 0.0;
}

void require_edge(const Eigen::Vector3d& t, double lambda3) {
  if (std::abs(t(2)) + std::abs(lambda3) >= 1.0) {
    throw DegenerateEdge("region: |t3| + |lambda3| >= 1");
  }
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  return hw > 0 ? hw : 1;
}

template <typename Body>
void parallel_for(int n, int jobs, Body&& body) {
  jobs = std::min(resolve_jobs(jobs), n);
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::atomic<int> next{0};
  for (int j = 0; j < jobs; ++j) {
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace

ScanResult scan_plane(const Eigen::Vector3d& t, double lambda3, int resolution,
                      double range, std::uint64_t seed, int jobs) {
  require_edge(t, lambda3);
  ScanResult result;
  result.resolution = resolution;
  result.range = range;
  result.samples.resize(static_cast<size_t>(resolution) * resolution);

  std::atomic<int> cross_checked{0};
  std::atomic<int> mismatches{0};
  std::atomic<int> outside_pp{0};
  const double step =
      resolution > 1 ? 2.0 * range / (resolution - 1) : 0.0;

  parallel_for(resolution, jobs, [&](int row) {
    const double lm = -range + step * row;
    for (int col = 0; col < resolution; ++col) {
      const double lp = -range + step * col;
      const CanonicalForm form = plane_form(t, lambda3, lp, lm);
      const ContractionData data = contraction_matrix(form);

      RegionSample sample;
      sample.lambda_plus = lp;
      sample.lambda_minus = lm;
      sample.m11 = data.m11;
      sample.m22 = data.m22;
      sample.det_m = data.det_m();
      sample.m11_sign = data.m11 >= 0 ? 1 : -1;
      sample.m22_sign = data.m22 >= 0 ? 1 : -1;
      sample.det_ok = sample.det_m >= 0;
      sample.cp = cp_via_contraction(form) != Verdict::No;

      const CanonicalForm swapped = plane_form(t, lambda3, lm, lp);
      sample.ebt = sample.cp && cp_via_contraction(swapped) != Verdict::No;

      if (sample.cp && (sample.m11 <= 0 || sample.m22 <= 0)) ++outside_pp;

      const std::uint64_t node =
          static_cast<std::uint64_t>(row) * resolution + col;
      if (mix64(seed, node) % 100 == 0) {
        ++cross_checked;
        if (choi_cp(t, lambda3, lp, lm) != sample.cp) ++mismatches;
      }
      result.samples[node] = sample;
    }
  });

  result.cross_checked = cross_checked;
  result.cross_mismatches = mismatches;
  result.cp_outside_pp = outside_pp;
  return result;
}

double boundary_radius(const Eigen::Vector3d& t, double lambda3, double angle,
                       bool ebt_predicate) {
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  const auto inside = [&](double r) {
    if (!choi_cp(t, lambda3, r * dx, r * dy)) return false;
    if (!ebt_predicate) return true;
    return choi_cp(t, lambda3, r * dy, r * dx);
  };

  double lo = 0.0;
  double hi = 3.0;  // outside every CP region: some |lambda_k| >= 3/2 there
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// No degenerate-edge restriction here: the Choi-oracle predicate is valid
// for every trace-preserving channel, including |t3| + |lambda3| = 1.
std::vector<Eigen::Vector2d> trace(const Eigen::Vector3d& t, double lambda3,
                                   int n_rays, bool ebt_predicate, int jobs) {
  if (!choi_cp(t, lambda3, 0.0, 0.0)) {
    throw OriginNotCP("boundary tracing: origin channel is not CP");
  }
  std::vector<Eigen::Vector2d> polygon(n_rays);
  parallel_for(n_rays, jobs, [&](int i) {
    const double angle = 2.0 * M_PI * i / n_rays;
    const double radius = boundary_radius(t, lambda3, angle, ebt_predicate);
    polygon[i] = {radius * std::cos(angle), radius * std::sin(angle)};
  });
  return polygon;
}

}  // namespace

std::vector<Eigen::Vector2d> trace_boundary(const Eigen::Vector3d& t,
                                            double lambda3, int n_rays,
                                            int jobs) {
  return trace(t, lambda3, n_rays, false, jobs);
}

std::vector<Eigen::Vector2d> ebt_lens(const Eigen::Vector3d& t, double lambda3,
                                      int n_rays, int jobs) {
  return trace(t, lambda3, n_rays, true, jobs);
}

double polygon_area(const std::vector<Eigen::Vector2d>& polygon) {
  double twice_area = 0.0;
  const size_t n = polygon.size();
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = polygon[i];
    const Eigen::Vector2d& b = polygon[(i + 1) % n];
    twice_area += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(twice_area);
}

bool polygon_is_convex(const std::vector<Eigen::Vector2d>& polygon,
                       double slack) {
  const size_t n = polygon.size();
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = polygon[i];
    const Eigen::Vector2d& b = polygon[(i + 1) % n];
    const Eigen::Vector2d& c = polygon[(i + 2) % n];
    const double cross = (b.x() - a.x()) * (c.y() - a.y()) -
                         (b.y() - a.y()) * (c.x() - a.x());
    if (cross < -slack) return false;
  }
  return true;
}

bool point_in_polygon(const std::vector<Eigen::Vector2d>& polygon,
                      const Eigen::Vector2d& point) {
  bool inside = false;
  const size_t n = polygon.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Eigen::Vector2d& a = polygon[i];
    const Eigen::Vector2d& b = polygon[j];
    if ((a.y() > point.y()) != (b.y() > point.y()) &&
        point.x() <
            (b.x() - a.x()) * (point.y() - a.y()) / (b.y() - a.y()) + a.x()) {
      inside = !inside;
    }
  }
  return inside;
}

namespace {

Polytope make_tetrahedron() {
  Polytope p;
  p.name = "tetrahedron";
  p.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  p.facets = {{{1, 1, -1}, 1}, {{1, -1, 1}, 1}, {{-1, 1, 1}, 1},
              {{-1, -1, -1}, 1}};
  return p;
}

Polytope make_inverted() {
  Polytope p;
  p.name = "inverted";
  p.vertices = {{-1, -1, -1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
  p.facets = {{{1, 1, 1}, 1}, {{1, -1, -1}, 1}, {{-1, 1, -1}, 1},
              {{-1, -1, 1}, 1}};
  return p;
}

Polytope make_octahedron() {
  Polytope p;
  p.name = "octahedron";
  p.vertices = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (int sx : {1, -1}) {
    for (int sy : {1, -1}) {
      for (int sz : {1, -1}) {
        p.facets.push_back({{sx, sy, sz}, 1});
      }
    }
  }
  return p;
}

Polytope make_corner(const Eigen::Vector3i& corner) {
  Polytope p;
  p.name = "corner_tetrahedron";
  p.vertices = {corner,
                {corner.x(), 0, 0},
                {0, corner.y(), 0},
                {0, 0, corner.z()}};
  // The octahedron facet cut plus the three tetrahedron facets at `corner`.
  p.facets.push_back({-corner, -1});
  const Eigen::Vector3i all[4] = {
      {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, -1}};
  for (const Eigen::Vector3i& n : all) {
    if (n.dot(corner) == 1) p.facets.push_back({n, 1});
  }
  return p;
}

}  // namespace

std::vector<Polytope> polytope_data(PolytopeKind kind) {
  switch (kind) {
    case PolytopeKind::Tetrahedron: return {make_tetrahedron()};
    case PolytopeKind::Inverted: return {make_inverted()};
    case PolytopeKind::Octahedron: return {make_octahedron()};
    case PolytopeKind::CornerTetrahedra:
      return {make_corner({1, 1, 1}), make_corner({1, -1, -1}),
              make_corner({-1, 1, -1}), make_corner({-1, -1, 1})};
  }
  return {};
}

}  // namespace qebt
