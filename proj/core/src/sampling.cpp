#include "qebt/sampling.hpp"

#include <chrono>
#include <thread>
#include <vector>

#include "qebt/canonical.hpp"
#include "qebt/cp.hpp"
#include "qebt/ebt.hpp"
#include "qebt/errors.hpp"

namespace qebt {

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Eigen::Vector3d random_unit_vector(Rng& rng) {
  Eigen::Vector3d v;
  do {
    v = {rng.normal(), rng.normal(), rng.normal()};
  } while (v.norm() < 1e-8);
  return v.normalized();
}

Eigen::Matrix3d random_rotation(Rng& rng) {
  Eigen::Quaterniond q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  while (q.norm() < 1e-8) {
    q = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  }
  q.normalize();
  return q.toRotationMatrix();
}

void random_box_params(Rng& rng, Eigen::Vector3d& t, Eigen::Vector3d& lambda) {
  for (int k = 0; k < 3; ++k) t(k) = rng.uniform(-1.0, 1.0);
  for (int k = 0; k < 3; ++k) lambda(k) = rng.uniform(-1.0, 1.0);
}

CanonicalForm random_cp_channel(Rng& rng, double tol, int max_tries) {
  Eigen::Vector3d t, lambda;
  for (int i = 0; i < max_tries; ++i) {
    random_box_params(rng, t, lambda);
    CanonicalForm form = canonical_from_params(t, lambda);
    if (choi_psd(form, tol).verdict == Verdict::Yes) return form;
  }
  throw Error("random_cp_channel: rejection sampling exhausted");
}

CanonicalForm random_cp_channel_edge_bounded(Rng& rng, double edge_bound,
                                             double tol, int max_tries) {
  for (int i = 0; i < max_tries; ++i) {
    CanonicalForm form = random_cp_channel(rng, tol, max_tries);
    if (std::abs(form.t(2)) + std::abs(form.lambda(2)) < edge_bound)
      return form;
  }
  throw Error("random_cp_channel_edge_bounded: rejection sampling exhausted");
}

CanonicalForm random_unital_cp(Rng& rng, double tol, int max_tries) {
  for (int i = 0; i < max_tries; ++i) {
    Eigen::Vector3d lambda;
    for (int k = 0; k < 3; ++k) lambda(k) = rng.uniform(-1.0, 1.0);
    CanonicalForm form = canonical_from_params(Eigen::Vector3d::Zero(), lambda);
    if (choi_psd(form, tol).verdict == Verdict::Yes) return form;
  }
  throw Error("random_unital_cp: rejection sampling exhausted");
}

CanonicalForm random_ebt_channel(Rng& rng, double tol, int max_tries) {
  Eigen::Vector3d t, lambda;
  for (int i = 0; i < max_tries; ++i) {
    random_box_params(rng, t, lambda);
    CanonicalForm form = canonical_from_params(t, lambda);
    if (choi_psd(form, tol).verdict != Verdict::Yes) continue;
    if (ebt_sign_change(form, tol) == Verdict::Yes) return form;
  }
  throw Error("random_ebt_channel: rejection sampling exhausted");
}

namespace {

struct AgreementShard {
  int drawn = 0, kept = 0, agree = 0, contradictions = 0, boundaries = 0;
};

// Each draw gets its own stream keyed by (seed, index), so the statistics
// do not depend on how the index range is sharded over workers.
AgreementShard run_agreement_shard(int begin, int end, std::uint64_t seed,
                                   double tol, double margin) {
  AgreementShard shard;
  Eigen::Vector3d t, lambda;
  for (int i = begin; i < end; ++i) {
    ++shard.drawn;
    Rng rng(mix64(seed, static_cast<std::uint64_t>(i)));
    random_box_params(rng, t, lambda);
    const CanonicalForm form = canonical_from_params(t, lambda);
    const PauliTransferMatrix channel = canonical_channel(form);

    if (min_choi_eig(channel) <= margin) continue;
    bool definite = true;
    for (int k = 0; k < 3 && definite; ++k) {
      Eigen::Vector3d flipped = lambda;
      flipped(k) = -flipped(k);
      definite = std::abs(min_choi_eig(channel_from_canonical(t, flipped))) >
                 margin;
    }
    if (!definite) continue;
    ++shard.kept;

    const Verdict verdicts[4] = {
        ebt_sign_change(form, tol), ebt_ppt(channel, tol),
        ebt_choi_bound(channel, tol), ebt_region_intersection(form, tol)};
    bool any_yes = false, any_no = false, any_boundary = false;
    for (Verdict v : verdicts) {
      any_yes |= v == Verdict::Yes;
      any_no |= v == Verdict::No;
      any_boundary |= v == Verdict::Boundary;
    }
    if (any_yes && any_no) {
      ++shard.contradictions;
    } else if (any_boundary) {
      ++shard.boundaries;
    } else {
      ++shard.agree;
    }
  }
  return shard;
}

}  // namespace

AgreementStats run_agreement_suite(int n_draws, std::uint64_t seed, double tol,
                                   double margin, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
  }
  jobs = std::min(jobs, std::max(1, n_draws / 1000));

  std::vector<AgreementShard> shards(jobs);
  std::vector<std::thread> workers;
  const int base = n_draws / jobs;
  const int extra = n_draws % jobs;
  int begin = 0;
  for (int j = 0; j < jobs; ++j) {
    const int end = begin + base + (j < extra ? 1 : 0);
    workers.emplace_back([&, j, begin, end] {
      shards[j] = run_agreement_shard(begin, end, seed, tol, margin);
    });
    begin = end;
  }
  for (auto& w : workers) w.join();

  AgreementStats stats;
  for (const AgreementShard& s : shards) {
    stats.drawn += s.drawn;
    stats.kept += s.kept;
    stats.agree += s.agree;
    stats.contradictions += s.contradictions;
    stats.boundaries += s.boundaries;
  }
  stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return stats;
}

}  // namespace qebt
