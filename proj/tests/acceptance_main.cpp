// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Run time target is about a minute on two laptop cores.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "qebt/canonical.hpp"
#include "qebt/cp.hpp"
#include "qebt/decompose.hpp"
#include "qebt/ebt.hpp"
#include "qebt/holevo.hpp"
#include "qebt/region.hpp"
#include "qebt/sampling.hpp"

using namespace qebt;
using qebt::testing::amplitude_damping;
using qebt::testing::trine_ensemble;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

// 1. Four-way criterion agreement on 1e5 random channels, filtered to CP
// samples with |min Choi eigenvalue| > 1e-8 for the original and all
// single-flip variants; zero contradictions allowed, 60 s budget.
void criterion_agreement() {
  const AgreementStats stats = run_agreement_suite(100000, 42, 1e-9, 1e-8);
  const bool pass = stats.contradictions == 0 && stats.kept > 1000 &&
                    stats.elapsed_seconds < 60.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%d kept of %d drawn, %d agree, %d contradictions, %d "
                "boundary abstentions, %.1f s",
                stats.kept, stats.drawn, stats.agree, stats.contradictions,
                stats.boundaries, stats.elapsed_seconds);
  report(1, "criterion agreement (sign change / PPT / Choi bound / "
            "intersection)",
         pass, detail);
}

// 2. cp_via_contraction vs the Choi oracle on the same sampling with
// |t3| + |lambda3| < 0.98, away from the boundary band.
void criterion_cp_routes() {
  Rng rng(43);
  int compared = 0, mismatches = 0;
  Eigen::Vector3d t, lambda;
  for (int i = 0; i < 100000; ++i) {
    random_box_params(rng, t, lambda);
    if (std::abs(t(2)) + std::abs(lambda(2)) >= 0.98) continue;
    const CanonicalForm form = canonical_from_params(t, lambda);
    const PsdReport oracle = choi_psd(form);
    if (std::abs(oracle.min_eig) <= 1e-8) continue;
    ++compared;
    if (cp_via_contraction(form) != oracle.verdict) ++mismatches;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "%d compared, %d mismatches",
                compared, mismatches);
  report(2, "contraction-matrix CP test vs Choi oracle", mismatches == 0,
         detail);
}

// 3. Unital law: EBT iff sum |lambda| <= 1 outside a 1e-9 band, plus the
// octahedron vertices classifying EBT, CQ and generalized extreme.
void criterion_unital() {
  Rng rng(44);
  int checked = 0, violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const CanonicalForm form = random_unital_cp(rng);
    const double sum = form.lambda.cwiseAbs().sum();
    if (std::abs(sum - 1.0) <= 1e-9) continue;
    ++checked;
    const Verdict verdict = ebt_sign_change(form);
    if (verdict == Verdict::Boundary || (verdict == Verdict::Yes) != (sum < 1.0))
      ++violations;
  }
  bool vertices_ok = true;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Eigen::Vector3d lambda = sign * Eigen::Vector3d::Unit(axis);
      const CanonicalForm form =
          to_canonical(channel_from_canonical(Eigen::Vector3d::Zero(), lambda));
      vertices_ok &= ebt_sign_change(form) != Verdict::No;
      vertices_ok &= classify_geometry(form).is_cq;
      vertices_ok &= is_generalized_extreme(form).extreme;
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail),
                "%d decisive unital samples, %d violations, vertices %s",
                checked, violations, vertices_ok ? "ok" : "bad");
  report(3, "unital channels: EBT iff sum|lambda| <= 1; octahedron vertices",
         violations == 0 && vertices_ok && checked > 9000, detail);
}

// 4. Amplitude damping: CP with |min eig| <= 1e-12 and definitely not EBT
// for alpha in {0.1..0.9}; the alpha = 0 point channel is EBT (boundary
// verdict allowed, certified by its explicit ensemble).
void criterion_amplitude_damping() {
  bool pass = true;
  std::string note;
  for (int k = 1; k <= 9; ++k) {
    const double a = 0.1 * k;
    const PauliTransferMatrix channel = amplitude_damping(a);
    const PsdReport cp = choi_psd(channel);
    const Verdict ebt = ebt_sign_change(to_canonical(channel));
    if (!cp.is_psd || std::abs(cp.min_eig) > 1e-12 || ebt != Verdict::No) {
      pass = false;
      note = "failed at alpha = " + std::to_string(a);
    }
  }
  const PauliTransferMatrix limit = amplitude_damping(0.0);
  const Verdict limit_verdict = ebt_sign_change(to_canonical(limit));
  HolevoEnsemble point;
  HolevoItem first, second;
  first.w = second.w = {0, 0, 1};
  first.u0 = second.u0 = 0.5;
  first.u = {0, 0, 0.5};
  second.u = {0, 0, -0.5};
  point.items = {first, second};
  const bool limit_ok =
      limit_verdict != Verdict::No && verify_ensemble(point, limit);
  if (!limit_ok) {
    pass = false;
    note += " alpha=0 endpoint failed";
  }
  report(4, "amplitude damping boundary family", pass,
         pass ? "alpha 0.1..0.9 on the CP boundary and not EBT; alpha = 0 "
                "EBT with ensemble certificate"
              : note);
}

// 5. 1e3 random build_cq / build_qc constructions round-trip through
// ensemble_to_transfer and canonicalize to the expected parameters within
// 1e-10; qc_to_cq factorizations agree within 1e-12.
void criterion_product_representation() {
  Rng rng(45);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    // CQ leg.
    Eigen::Vector3d t(rng.uniform(-1, 1), rng.uniform(-1, 1),
                      rng.uniform(-1, 1));
    double lambda3 = rng.uniform(-1, 1);
    const double reach = std::abs(t(2)) + std::abs(lambda3);
    if (t(0) * t(0) + t(1) * t(1) + reach * reach > 1.0) {
      const double scale =
          0.95 / std::sqrt(t(0) * t(0) + t(1) * t(1) + reach * reach);
      t *= scale;
      lambda3 *= scale;
    }
    const CanonicalForm cq_form =
        to_canonical(ensemble_to_transfer(build_cq(t, lambda3)));
    bool ok = std::abs(cq_form.lambda(0) - std::abs(lambda3)) <= 1e-10 &&
              std::abs(cq_form.lambda(1)) <= 1e-10 &&
              std::abs(cq_form.lambda(2)) <= 1e-10 &&
              std::abs(std::abs(cq_form.t(0)) - std::abs(t(2))) <= 1e-10 &&
              std::abs(cq_form.t.norm() - t.norm()) <= 1e-10;

    // QC leg.
    const double u0 = rng.uniform(0.0, 1.0);
    const Eigen::Vector3d u =
        rng.uniform(0.0, std::min(u0, 1 - u0)) * random_unit_vector(rng);
    const QcBuild qc = build_qc(u0, u);
    const CanonicalForm qc_form =
        to_canonical(ensemble_to_transfer(qc.ensemble));
    ok &= std::abs(qc_form.lambda(0) - 2 * u.norm()) <= 1e-10 &&
          std::abs(qc_form.lambda(1)) <= 1e-10 &&
          std::abs(std::abs(qc_form.t(0)) - std::abs(2 * u0 - 1)) <= 1e-10;

    // Factorization pair.
    const double t3 = rng.uniform(-0.9, 0.9);
    const double l3_max = 1.0 - std::abs(t3);
    const double l3 = rng.uniform(-l3_max, l3_max);
    const QcCqFactorizations pair = qc_to_cq(t3, l3);
    ok &= (ensemble_to_transfer(pair.qc).entries -
           ensemble_to_transfer(pair.cq).entries)
              .cwiseAbs()
              .maxCoeff() <= 1e-12;
    if (!ok) ++bad;
  }
  char detail[80];
  std::snprintf(detail, sizeof(detail), "1000 triples, %d failures", bad);
  report(5, "CQ/QC product representation round trips", bad == 0, detail);
}

// 6. Trine example: one canonical lambda vanishes, the channel is EBT and
// planar, and the numeric decomposition reaches 1e-8.
void criterion_trine() {
  const PauliTransferMatrix channel = ensemble_to_transfer(trine_ensemble());
  const CanonicalForm form = to_canonical(channel);
  const bool lambda_zero = std::abs(form.lambda(2)) <= 1e-12;
  const bool planar = classify_geometry(form).image == ImageGeometry::Planar;
  const bool ebt = ebt_sign_change(form) != Verdict::No;
  bool fit_ok = false;
  double residual = -1.0;
  try {
    const CqDecomposition d = decompose_numeric(form, 2000, 1e-8, 42);
    residual = d.residual;
    fit_ok = d.residual <= 1e-8 &&
             validate_decomposition(d, canonical_channel(form).entries, 1e-6);
  } catch (const Error&) {
    fit_ok = false;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail),
                "lambda3 = %.2e, planar = %d, ebt = %d, residual = %.2e",
                form.lambda(2), planar, ebt, residual);
  report(6, "trine POVM example", lambda_zero && planar && ebt && fit_ok,
         detail);
}

// 7a. Reference scan t = (0.2, 0.3, 0), lambda3 = 0.35: CP nodes strictly
// inside the ++ rectangle on a 400x400 grid, no Choi cross-check
// mismatches.
// 7b. Planar-translation family t = (0.4, 0.3, 0), lambda3 = 0.15: lens
// symmetric under the diagonal swap within 1% area; the hull of the
// diagonal intersection points stays inside the lens.
// 7c. Equal-|lambda| family: with t3 = sqrt((1-l3)^2 - 4 l3^2 - t1^2 -
// t2^2) = sqrt(0.23) the maps with all |lambda_k| = 0.2 sit exactly on the
// lens boundary, so the axis crossings land at +-0.4 (tolerance 0.02); the
// nearby value t3 = 0.3742 is kept as a regression point (crossing
// 0.482360).
void criterion_region_datasets() {
  // (a)
  const ScanResult scan = scan_plane({0.2, 0.3, 0.0}, 0.35, 400, 2.0, 42);
  const bool scan_ok =
      scan.cp_outside_pp == 0 && scan.cross_mismatches == 0;
  char detail_a[120];
  std::snprintf(detail_a, sizeof(detail_a),
                "400x400 scan: %d CP nodes outside ++, %d oracle mismatches",
                scan.cp_outside_pp, scan.cross_mismatches);
  report(7, "nine-region scan inside the ++ rectangle", scan_ok, detail_a);

  // (b)
  const Eigen::Vector3d t_lens(0.4, 0.3, 0.0);
  const double l3_lens = 0.15;
  const int n_rays = 720;
  const std::vector<Eigen::Vector2d> lens = ebt_lens(t_lens, l3_lens, n_rays);
  double area = 0.0, sym_diff = 0.0;
  for (int i = 0; i < n_rays; ++i) {
    const double r = lens[i].norm();
    const int j = ((n_rays / 4 - i) % n_rays + n_rays) % n_rays;
    const double rm = lens[j].norm();
    area += 0.5 * r * r;
    sym_diff += 0.5 * std::abs(r * r - rm * rm);
  }
  bool parallelogram_inside = true;
  std::vector<Eigen::Vector2d> parallelogram;
  for (double angle : {M_PI / 4, 3 * M_PI / 4, 5 * M_PI / 4, 7 * M_PI / 4}) {
    const double r_vertex = boundary_radius(t_lens, l3_lens, angle, false);
    parallelogram.push_back(
        {r_vertex * std::cos(angle), r_vertex * std::sin(angle)});
    const double r_lens = boundary_radius(t_lens, l3_lens, angle, true);
    parallelogram_inside &= r_vertex <= r_lens + 1e-8;
  }
  // Convexity of the lens plus vertices on it contains the full hull; spot
  // check the parallelogram edges against the lens polygon anyway.
  bool edges_inside = true;
  for (int e = 0; e < 4; ++e) {
    for (double s = 0.1; s < 1.0; s += 0.2) {
      const Eigen::Vector2d p = (1 - s) * parallelogram[e] +
                                s * parallelogram[(e + 1) % 4];
      edges_inside &= point_in_polygon(lens, p * (1.0 - 1e-9));
    }
  }
  const bool lens_ok = sym_diff <= 0.01 * area && parallelogram_inside &&
                    edges_inside && polygon_is_convex(lens, 1e-7);
  char detail_b[140];
  std::snprintf(detail_b, sizeof(detail_b),
                "swap asymmetry %.2e of lens area; parallelogram inside: %s",
                sym_diff / area, parallelogram_inside && edges_inside ? "yes" : "no");
  report(7, "lens symmetry and parallelogram containment", lens_ok, detail_b);

  // (c)
  const double t3_closed = std::sqrt(0.23);
  double worst = 0.0;
  for (double angle : {0.0, M_PI_2, M_PI, 3 * M_PI_2}) {
    const double r = boundary_radius({0.4, 0.3, t3_closed}, 0.20, angle, true);
    worst = std::max(worst, std::abs(r - 0.4));
  }
  const double literal =
      boundary_radius({0.4, 0.3, 0.3742}, 0.20, 0.0, true);
  const bool crossings_ok =
      worst <= 0.02 && std::abs(literal - 0.482360) <= 5e-4;
  char detail_c[160];
  std::snprintf(detail_c, sizeof(detail_c),
                "crossings off +-0.4 by %.2e at t3 = sqrt(0.23); literal "
                "t3 = 0.3742 crossing %.6f (regression 0.482360)",
                worst, literal);
  report(7, "equal-|lambda| lens axis crossings", crossings_ok, detail_c);
}

// 8. 1e3 random EBT channels: numeric certificate with residual <= 1e-6,
// weights summing to 1 within 1e-12, every component CQ, success rate >=
// 99%; the identity channel must fail the fit.
void criterion_decomposition() {
  Rng rng(46);
  int successes = 0, sound = 0;
  const int total = 1000;
  for (int i = 0; i < total; ++i) {
    const CanonicalForm form = random_ebt_channel(rng);
    try {
      const CqDecomposition d = decompose_numeric(form, 2000, 1e-6, 42);
      if (d.residual <= 1e-6) {
        ++successes;
        if (validate_decomposition(d, canonical_channel(form).entries, 1e-5))
          ++sound;
      }
    } catch (const Error&) {
    }
  }
  bool identity_fails = false;
  try {
    decompose_numeric(canonical_from_params({0, 0, 0}, {1, 1, 1}), 2000, 1e-6,
                      42);
  } catch (const FitFailed&) {
    identity_fails = true;
  }
  const bool pass =
      successes >= 990 && sound == successes && identity_fails;
  char detail[140];
  std::snprintf(detail, sizeof(detail),
                "%d/%d fits below 1e-6 (%d validated); identity FitFailed: %s",
                successes, total, sound, identity_fails ? "yes" : "no");
  report(8, "convex CQ decomposition soundness", pass, detail);
}

// 9. Unitary splits on 1e3 random CP channels with |t3| + |lambda3| < 0.9.
void criterion_splits() {
  Rng rng(47);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const CanonicalForm form = random_cp_channel_edge_bounded(rng, 0.9);
    const ChoiMatrix target =
        choi_of_transfer(adjoint(canonical_channel(form)));

    const auto [plus, minus] = split_midpoint(form);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> ep(plus.entries,
                                                       Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> em(minus.entries,
                                                       Eigen::EigenvaluesOnly);
    bool ok = ep.eigenvalues().minCoeff() > -1e-10 &&
              em.eigenvalues().minCoeff() > -1e-10 &&
              (0.5 * (plus.entries + minus.entries) - target.entries)
                      .cwiseAbs()
                      .maxCoeff() <= 1e-10;

    const ExtremeReport extreme = is_generalized_extreme(form);
    if (!extreme.extreme) {
      const ThreeTermSplit split = split_three_term(form);
      double sum = 0.0;
      Eigen::Matrix4cd mix = Eigen::Matrix4cd::Zero();
      for (int k = 0; k < 3; ++k) {
        ok &= split.weights[k] >= -1e-12;
        sum += split.weights[k];
        mix += split.weights[k] * split.choi[k].entries;
      }
      ok &= std::abs(sum - 1.0) <= 1e-12;
      ok &= (mix - target.entries).cwiseAbs().maxCoeff() <= 1e-10;
    }
    if (!ok) ++bad;
  }
  char detail[80];
  std::snprintf(detail, sizeof(detail), "1000 channels, %d failures", bad);
  report(9, "midpoint and three-term unitary splits", bad == 0, detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_agreement();
  criterion_cp_routes();
  criterion_unital();
  criterion_amplitude_damping();
  criterion_product_representation();
  criterion_trine();
  criterion_region_datasets();
  criterion_decomposition();
  criterion_splits();
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("%s (%d failing) in %.1f s\n",
              failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", failures,
              elapsed);
  return failures == 0 ? 0 : 1;
}
