#include <benchmark/benchmark.h>

#include "curvsym/curvature.hpp"
#include "curvsym/metric.hpp"
#include "curvsym/symmetry.hpp"
#include "curvsym/transport.hpp"

using namespace curvsym;

static void BM_JetEvaluation(benchmark::State& state) {
  MetricField sol = catalog_metric("sol");
  ChartPoint p(3);
  p << 0.2, -0.3, 0.5;
  for (auto _ : state) {
    MetricJets j = sol.jets(p);
    benchmark::DoNotOptimize(j.g.data());
  }
}
BENCHMARK(BM_JetEvaluation);

static void BM_CurvatureBundle(benchmark::State& state) {
  MetricField f = catalog_metric("space_form", {{"n", double(state.range(0))}, {"c", -1.0}});
  ChartPoint p = ChartPoint::Constant(state.range(0), 0.1);
  DiffConfig cfg;
  for (auto _ : state) {
    CurvatureBundle b = curvature_bundle(f, p, cfg);
    benchmark::DoNotOptimize(b.rr.data().data());
  }
}
BENCHMARK(BM_CurvatureBundle)->Arg(2)->Arg(3)->Arg(4);

static void BM_DeszczFit(benchmark::State& state) {
  MetricField sol = catalog_metric("sol");
  CurvatureBundle b = curvature_bundle(sol, ChartPoint::Zero(3), DiffConfig{});
  ToleranceProfile tol = ToleranceProfile::strict();
  for (auto _ : state) {
    PseudoFit fit = fit_pseudo_coefficient(b.rr, b.tach_r, tol);
    benchmark::DoNotOptimize(fit.coefficient);
  }
}
BENCHMARK(BM_DeszczFit);

static void BM_GeodesicStep(benchmark::State& state) {
  MetricField sol = catalog_metric("sol");
  CurveState s{ChartPoint::Zero(3), Eigen::Vector3d(0.5, 0.5, 0.70710678), {}};
  for (auto _ : state) {
    CurveState next = geodesic_step(sol, s, 1e-3);
    benchmark::DoNotOptimize(next.point.data());
  }
}
BENCHMARK(BM_GeodesicStep);

static void BM_HolonomyLoop(benchmark::State& state) {
  MetricField sol = catalog_metric("sol");
  ChartPoint p = ChartPoint::Zero(3);
  Eigen::Vector3d z(1.0, 0.0, 0.0);
  for (auto _ : state) {
    Eigen::VectorXd zs = holonomy_parallelogram(sol, p, 0, 2, 1e-2, 1e-2, z);
    benchmark::DoNotOptimize(zs.data());
  }
}
BENCHMARK(BM_HolonomyLoop);

BENCHMARK_MAIN();
