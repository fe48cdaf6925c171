#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>
#include <vector>

#include "heatlab/asymptotics.hpp"
#include "heatlab/geometry.hpp"
#include "heatlab/green.hpp"
#include "heatlab/sausage.hpp"
#include "heatlab/solver1d.hpp"
#include "heatlab/solver2d.hpp"
#include "heatlab/specfun.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void BM_Erfcx(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(heatlab::erfcx(x));
    x += 1e-3;
    if (x > 8.0) x = -2.0;
  }
}
BENCHMARK(BM_Erfcx);

void BM_KernelPerfect(benchmark::State& state) {
  const heatlab::TransmissionMedium m{0.4, 1.0};
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(heatlab::gamma_pp(m, s, 0.05, 1e-3));
    s += 1e-4;
    if (s > 0.5) s = 0.0;
  }
}
BENCHMARK(BM_KernelPerfect);

void BM_KernelFinite(benchmark::State& state) {
  const heatlab::TransmissionMedium m{0.01, 1.0};
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(heatlab::g_pp(m, 17.0, s, 0.05, 1e-3));
    s += 1e-4;
    if (s > 0.5) s = 0.0;
  }
}
BENCHMARK(BM_KernelFinite);

void BM_ExactProfile(benchmark::State& state) {
  const heatlab::TransmissionMedium m{0.01, 1.0};
  double s = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(heatlab::u_plus_exact(m, 17.0, s, 1e-2));
    s += 1e-4;
    if (s > 0.5) s = 1e-4;
  }
}
BENCHMARK(BM_ExactProfile);

void BM_LayerVolumeGrid(benchmark::State& state) {
  const heatlab::DomainGeometry g =
      heatlab::make_minkowski_prefractal(static_cast<int>(state.range(0)));
  heatlab::MuGridOptions opt;
  opt.resolution = 256;
  opt.subsample = 8;
  opt.richardson = false;
  const std::vector<double> widths{0.01, 0.03, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(heatlab::mu_grid(g, widths, opt));
  }
}
BENCHMARK(BM_LayerVolumeGrid)->Arg(1)->Arg(3);

void BM_CollarFormula(benchmark::State& state) {
  heatlab::AsymptoticModel model;
  model.medium = {0.01, 1.0};
  model.mu = heatlab::make_mu_function(heatlab::make_square(1.0),
                                       heatlab::MuMode::analytic);
  model.boundary_measure = 4.0;
  model.segments = {{4.0, 17.0, 0.0}};
  model.assume_smooth = true;
  double t = 1e-5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        heatlab::n_finite_lambda(model, t, heatlab::FormKind::full));
    t *= 1.01;
    if (t > 1e-2) t = 1e-5;
  }
}
BENCHMARK(BM_CollarFormula);

void BM_LineSolve(benchmark::State& state) {
  heatlab::Solve1dConfig cfg;
  cfg.medium = {0.01, 1.0};
  cfg.lambda = 17.0;
  cfg.h = 1e-3;
  cfg.dt = 1e-5;
  cfg.t_end = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(heatlab::solve_1d(cfg));
  }
}
BENCHMARK(BM_LineSolve);

void BM_PlaneSolveStep(benchmark::State& state) {
  heatlab::Solve2dConfig cfg;
  cfg.geometry = heatlab::make_square(1.0);
  cfg.medium = {1.0, 1.0};
  cfg.lambda = kInf;
  cfg.h = 1.0 / static_cast<double>(state.range(0));
  cfg.dt = 1e-6;
  cfg.ramp = 0.0;
  cfg.t_end = 2e-5;  // 20 fixed steps
  for (auto _ : state) {
    benchmark::DoNotOptimize(heatlab::solve_2d(cfg));
  }
  state.SetItemsProcessed(state.iterations() * 20);
}
BENCHMARK(BM_PlaneSolveStep)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
