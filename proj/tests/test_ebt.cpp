#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qebt/canonical.hpp"
#include "qebt/ebt.hpp"

using namespace qebt;
using qebt::testing::amplitude_damping;

TEST_CASE("ebt_sign_change") {
  CHECK(ebt_sign_change(canonical_from_params({0, 0, 0}, {0.5, 0.5, 0})) !=
        Verdict::No);  // boundary of the octahedron
  CHECK(ebt_sign_change(to_canonical(amplitude_damping(0.6))) == Verdict::No);
  CHECK(ebt_sign_change(canonical_from_params({0, 0, 1}, {0, 0, 0})) !=
        Verdict::No);  // point channel
  CHECK_THROWS_AS(ebt_sign_change(canonical_from_params({0, 0, 0}, {1, -1, 1})),
                  NotCP);
}

TEST_CASE("ebt_ppt") {
  const PauliTransferMatrix id = channel_from_canonical({0, 0, 0}, {1, 1, 1});
  CHECK(ebt_ppt(id) == Verdict::No);
  const PauliTransferMatrix depol =
      channel_from_canonical({0, 0, 0}, {0, 0, 0});
  CHECK(ebt_ppt(depol) == Verdict::Yes);

  Rng rng(307);
  int compared = 0;
  for (int i = 0; i < 200 && compared < 32; ++i) {
    const CanonicalForm form = random_cp_channel(rng);
    const Verdict ppt = ebt_ppt(canonical_channel(form));
    const Verdict sign = ebt_sign_change(form);
    if (ppt == Verdict::Boundary || sign == Verdict::Boundary) continue;
    ++compared;
    CHECK(ppt == sign);
  }
  CHECK(compared >= 32);
}

TEST_CASE("ebt_choi_bound") {
  CHECK(ebt_choi_bound(channel_from_canonical({0, 0, 0}, {1, 1, 1})) ==
        Verdict::No);
  CHECK(ebt_choi_bound(channel_from_canonical({0, 0, 0}, {0, 0, 0})) ==
        Verdict::Yes);
  const double third = 1.0 / 3.0;
  CHECK(ebt_choi_bound(channel_from_canonical(
            {0, 0, 0}, {third, third, third})) == Verdict::Boundary);
}

TEST_CASE("ebt_sum_lambda") {
  SUBCASE("unital decisiveness") {
    const SumLambdaReport over =
        ebt_sum_lambda(canonical_from_params({0, 0, 0}, {0.4, 0.4, 0.4}));
    CHECK(over.unital);
    CHECK(!over.necessary_pass);
    CHECK(over.unital_verdict == Verdict::No);

    const SumLambdaReport under =
        ebt_sum_lambda(canonical_from_params({0, 0, 0}, {0.3, 0.3, 0.3}));
    CHECK(under.necessary_pass);
    CHECK(under.unital_verdict == Verdict::Yes);
  }
  SUBCASE("necessity only for amplitude damping") {
    const double a = 0.05;
    const SumLambdaReport report =
        ebt_sum_lambda(to_canonical(amplitude_damping(a)));
    CHECK(report.sum == doctest::Approx(2 * a + a * a).epsilon(1e-12));
    CHECK(report.necessary_pass);
    CHECK(!report.unital);
    CHECK(ebt_sign_change(to_canonical(amplitude_damping(a))) == Verdict::No);
  }
}

TEST_CASE("classify_geometry") {
  SUBCASE("linear CQ channel") {
    const GeometryReport report = classify_geometry(
        to_canonical(channel_from_canonical({0.1, 0.1, 0.2}, {0, 0, 0.5})));
    CHECK(report.image == ImageGeometry::Linear);
    CHECK(report.is_cq);
  }
  SUBCASE("planar channel is EBT by sign change") {
    const CanonicalForm form =
        to_canonical(channel_from_canonical({0, 0, 0}, {0, 0.3, 0.4}));
    CHECK(classify_geometry(form).image == ImageGeometry::Planar);
    CHECK(ebt_sign_change(form) != Verdict::No);
  }
  SUBCASE("point channel") {
    const GeometryReport report = classify_geometry(
        to_canonical(channel_from_canonical({0, 0, 0.9}, {0, 0, 0})));
    CHECK(report.image == ImageGeometry::Point);
    CHECK(report.is_cq);
  }
  SUBCASE("QC flag needs t parallel to the image axis") {
    const GeometryReport parallel = classify_geometry(
        to_canonical(channel_from_canonical({0, 0, 0.4}, {0, 0, 0.5})));
    CHECK(parallel.is_qc);
    const GeometryReport skew = classify_geometry(
        to_canonical(channel_from_canonical({0.3, 0, 0.2}, {0, 0, 0.5})));
    CHECK(!skew.is_qc);
    CHECK(skew.is_cq);
  }
  SUBCASE("planar channels classify EBT on random samples") {
    Rng rng(311);
    int checked = 0;
    for (int i = 0; i < 400 && checked < 24; ++i) {
      Eigen::Vector3d t, lambda;
      random_box_params(rng, t, lambda);
      lambda(2) = 0.0;
      const CanonicalForm form = canonical_from_params(t, lambda);
      if (choi_psd(form).verdict != Verdict::Yes) continue;
      ++checked;
      CHECK(ebt_sign_change(form) != Verdict::No);
    }
    CHECK(checked >= 24);
  }
}

TEST_CASE("planar_touch_test") {
  SUBCASE("equality with vanishing in-plane translation") {
    const CanonicalForm form =
        canonical_from_params({0, 0, 0}, {0.6, 0.4, 0});
    CHECK(planar_touch_test(form));
    // The equality case sits on the CP boundary.
    CHECK(std::abs(choi_psd(form).min_eig) < 1e-13);
  }
  SUBCASE("in-plane translation breaks the equality case") {
    const CanonicalForm form =
        canonical_from_params({0.1, 0, 0}, {0.6, 0.4, 0});
    CHECK(!planar_touch_test(form));
    CHECK(choi_psd(form).verdict == Verdict::No);
  }
  SUBCASE("precondition rejects linear channels") {
    CHECK_THROWS_AS(
        planar_touch_test(canonical_from_params({0, 0, 0}, {0.5, 0, 0})),
        Error);
  }
}

TEST_CASE("octahedron_membership") {
  CHECK(octahedron_membership({1, 0, 0}));
  CHECK(!octahedron_membership({0.5, 0.5, 0.1}));
  const double third = 1.0 / 3.0;
  CHECK(octahedron_membership({third, third, third}));
}

TEST_CASE("ebt_region_intersection") {
  CHECK(ebt_region_intersection(canonical_from_params(
            {0, 0, 0}, {0.2, 0.2, 0.2})) == Verdict::Yes);
  CHECK(ebt_region_intersection(canonical_from_params({0, 0, 0}, {1, 1, 1})) ==
        Verdict::No);
  // A point inside the lens of a planar-translation family.
  CHECK(ebt_region_intersection(canonical_from_params(
            {0.4, 0.3, 0}, {0.1, 0.05, 0.15})) == Verdict::Yes);
}

TEST_CASE("four criteria agree on random CP samples") {
  Rng rng(313);
  int compared = 0;
  for (int i = 0; i < 300 && compared < 48; ++i) {
    const CanonicalForm form = random_cp_channel(rng);
    const PauliTransferMatrix channel = canonical_channel(form);
    const Verdict verdicts[4] = {
        ebt_sign_change(form), ebt_ppt(channel), ebt_choi_bound(channel),
        ebt_region_intersection(form)};
    bool boundary = false;
    for (Verdict v : verdicts) boundary |= v == Verdict::Boundary;
    if (boundary) continue;
    ++compared;
    CHECK(verdicts[0] == verdicts[1]);
    CHECK(verdicts[0] == verdicts[2]);
    CHECK(verdicts[0] == verdicts[3]);
    // Necessity of the lambda-sum bound.
    if (verdicts[0] == Verdict::Yes) {
      CHECK(ebt_sum_lambda(form).necessary_pass);
    }
  }
  CHECK(compared >= 48);
}

TEST_CASE("unital law on random samples") {
  Rng rng(317);
  for (int i = 0; i < 64; ++i) {
    const CanonicalForm form = random_unital_cp(rng);
    const double sum = form.lambda.cwiseAbs().sum();
    if (std::abs(sum - 1.0) < 1e-9) continue;
    const Verdict verdict = ebt_sign_change(form);
    CHECK(verdict != Verdict::Boundary);
    CHECK((verdict == Verdict::Yes) == (sum < 1.0));
  }
}
