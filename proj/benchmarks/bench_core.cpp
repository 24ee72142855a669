#include <benchmark/benchmark.h>

#include <numbers>

#include "fsgeo/analytic_families.hpp"
#include "fsgeo/chart_geometry.hpp"
#include "fsgeo/entanglement.hpp"
#include "fsgeo/microcanonical.hpp"
#include "fsgeo/state_space.hpp"

namespace {

using namespace fsgeo;

void BM_HaarSample(benchmark::State& state) {
  const SeededSampler sampler{1, 0};
  const auto dim = static_cast<Eigen::Index>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_sample_at(dim, sampler, i++));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HaarSample)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_Entanglement(benchmark::State& state) {
  const int block = static_cast<int>(state.range(0));
  const Bipartition bip(1 << block, 1 << block);
  SeededSampler sampler{2, 0};
  const PureState psi = haar_sample(bip.dim(), sampler);
  for (auto _ : state) {
    benchmark::DoNotOptimize(entanglement(psi, bip));
  }
}
BENCHMARK(BM_Entanglement)->DenseRange(1, 5);

void BM_FsMetricSchmidt(benchmark::State& state) {
  const Chart chart = two_qubit::schmidt_chart();
  Eigen::VectorXd x(2);
  x << std::numbers::pi / 8.0, 0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fs_metric(chart, x));
  }
}
BENCHMARK(BM_FsMetricSchmidt);

void BM_DivergenceXi(benchmark::State& state) {
  const Chart chart = two_qubit::schmidt_chart();
  const ScalarField field = two_qubit::entanglement_field();
  Eigen::VectorXd x(2);
  x << 0.5, 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(divergence_xi(chart, x, field));
  }
}
BENCHMARK(BM_DivergenceXi);

void BM_OmegaQuadrature(benchmark::State& state) {
  const ReducedFamily family = two_qubit::reduced_family();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        omega_quadrature_reduced(family, 0.4165, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_OmegaQuadrature)->Arg(64)->Arg(256);

void BM_SampleEntanglement2x2(benchmark::State& state) {
  const Bipartition bip(2, 2);
  const SeededSampler sampler{3, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_entanglement(bip, state.range(0), sampler));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleEntanglement2x2)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
