#include <benchmark/benchmark.h>

#include "qebt/canonical.hpp"
#include "qebt/cp.hpp"
#include "qebt/decompose.hpp"
#include "qebt/ebt.hpp"
#include "qebt/region.hpp"
#include "qebt/sampling.hpp"

namespace {

std::vector<qebt::CanonicalForm> sample_forms(int n, double edge_bound) {
  qebt::Rng rng(42);
  std::vector<qebt::CanonicalForm> forms;
  forms.reserve(n);
  for (int i = 0; i < n; ++i) {
    forms.push_back(qebt::random_cp_channel_edge_bounded(rng, edge_bound));
  }
  return forms;
}

void BM_ChoiPsd(benchmark::State& state) {
  const auto forms = sample_forms(256, 0.98);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qebt::choi_psd(forms[i++ % forms.size()]));
  }
}
BENCHMARK(BM_ChoiPsd);

void BM_CpViaContraction(benchmark::State& state) {
  const auto forms = sample_forms(256, 0.98);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qebt::cp_via_contraction(forms[i++ % forms.size()]));
  }
}
BENCHMARK(BM_CpViaContraction);

void BM_EbtSignChange(benchmark::State& state) {
  const auto forms = sample_forms(256, 0.98);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qebt::ebt_sign_change(forms[i++ % forms.size()]));
  }
}
BENCHMARK(BM_EbtSignChange);

void BM_ScanPlane(benchmark::State& state) {
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qebt::scan_plane({0.2, 0.3, 0.0}, 0.35, resolution, 2.0, 42, 1));
  }
  state.SetItemsProcessed(state.iterations() * resolution * resolution);
}
BENCHMARK(BM_ScanPlane)->Arg(64)->Arg(128);

void BM_TraceBoundary(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qebt::trace_boundary({0.2, 0.3, 0.0}, 0.35, 64, 1));
  }
}
BENCHMARK(BM_TraceBoundary);

void BM_DecomposeNumeric(benchmark::State& state) {
  const qebt::CanonicalForm form =
      qebt::canonical_from_params({0, 0, 0}, {0.2, 0.2, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qebt::decompose_numeric(form, static_cast<int>(state.range(0)), 1e-8));
  }
}
BENCHMARK(BM_DecomposeNumeric)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
