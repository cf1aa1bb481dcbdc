#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "vadb/families.hpp"
#include "vadb/flat_estimator.hpp"
#include "vadb/geometry.hpp"

using namespace vadb;

namespace {

MetricField flat_cylinder(int res) {
  FamilyParams p;
  const ParamDomain dom = family_domain(p);
  auto mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, {res, res}, 3));
  return sample_metric(family_spec(p, dom), mesh);
}

void BM_DistanceMatrix(benchmark::State& state) {
  const MetricField g = flat_cylinder(static_cast<int>(state.range(0)));
  const SampleSet s = stratified_samples(g.mesh(), 128, 0);
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix(g, s, 1));
}
BENCHMARK(BM_DistanceMatrix)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Volume(benchmark::State& state) {
  const MetricField g = flat_cylinder(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(volume(g));
}
BENCHMARK(BM_Volume)->Arg(64)->Arg(128);

void BM_SampleMetric(benchmark::State& state) {
  FamilyParams p;
  p.family = ProfileId::spline_torus;
  p.j = 8;
  const ParamDomain dom = family_domain(p);
  auto mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, {48, 48}, 3));
  const MetricSpec spec = family_spec(p, dom);
  for (auto _ : state) benchmark::DoNotOptimize(sample_metric(spec, mesh));
}
BENCHMARK(BM_SampleMetric)->Unit(benchmark::kMillisecond);

void BM_GoodSet(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DistanceMatrix d0, dj;
  d0.d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = i + 1; k < n; ++k) d0.d(i, k) = d0.d(k, i) = u(rng);
  dj.d = d0.d;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = i + 1; k < n; ++k) dj.d(i, k) = dj.d(k, i) = d0.d(i, k) + 0.1 * u(rng);
  d0.weights.assign(static_cast<std::size_t>(n), 1.0);
  dj.weights = d0.weights;
  for (Eigen::Index i = 0; i < n; ++i) d0.samples.push_back(static_cast<std::size_t>(i));
  dj.samples = d0.samples;
  for (auto _ : state) benchmark::DoNotOptimize(good_set(d0, dj, 0.05, 8.0));
}
BENCHMARK(BM_GoodSet)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
