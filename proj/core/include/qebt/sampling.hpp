#ifndef QEBT_SAMPLING_HPP
#define QEBT_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "qebt/types.hpp"

namespace qebt {

// Deterministic stream splitting: mix(seed, index) seeds an independent
// engine per task, so parallel scans are reproducible for any worker count.
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine); }
  bool coin(double p = 0.5) {
    return std::bernoulli_distribution(p)(engine);
  }
  int index(int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(engine);
  }
};

Eigen::Vector3d random_unit_vector(Rng& rng);
Eigen::Matrix3d random_rotation(Rng& rng);

// (t, lambda) uniform over [-1,1]^6.
void random_box_params(Rng& rng, Eigen::Vector3d& t, Eigen::Vector3d& lambda);

// Rejection samplers. Each returns canonical parameters of an accepted
// channel; throws Error if max_tries is exhausted.
CanonicalForm random_cp_channel(Rng& rng, double tol = kDefaultTol,
                                int max_tries = 100000);
CanonicalForm random_cp_channel_edge_bounded(Rng& rng, double edge_bound,
                                             double tol = kDefaultTol,
                                             int max_tries = 100000);
CanonicalForm random_unital_cp(Rng& rng, double tol = kDefaultTol,
                               int max_tries = 100000);
CanonicalForm random_ebt_channel(Rng& rng, double tol = kDefaultTol,
                                 int max_tries = 1000000);

// Four-criterion agreement run shared by the CLI selftest and the
// acceptance suite: draws n channels from [-1,1]^6, keeps those that are CP
// with |min Choi eigenvalue| > margin for the original and every single
// sign-flip variant, and compares ebt_sign_change, ebt_ppt, ebt_choi_bound
// and ebt_region_intersection on the survivors.
struct AgreementStats {
  int drawn = 0;
  int kept = 0;
  int agree = 0;
  int contradictions = 0;  // one criterion says yes while another says no
  int boundaries = 0;      // some criterion abstained on a kept sample
  double elapsed_seconds = 0.0;
};
AgreementStats run_agreement_suite(int n_draws, std::uint64_t seed,
                                   double tol = kDefaultTol,
                                   double margin = 1e-8, int jobs = 0);

}  // namespace qebt

#endif
