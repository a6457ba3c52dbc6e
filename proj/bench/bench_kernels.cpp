// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <map>

#include "courant/fractals.hpp"
#include "courant/geometry.hpp"
#include "courant/kernels.hpp"

using namespace courant;

namespace {

const RasterDomain& disk_raster(int cells) {
  static std::map<int, RasterDomain> cache;
  auto it = cache.find(cells);
  if (it == cache.end()) it = cache.emplace(cells, rasterize(Disk{{0, 0}, 1.0}, 2.0 / cells)).first;
  return it->second;
}

void BM_DistanceFast(benchmark::State& state) {
  const RasterDomain& r = disk_raster(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::boundary_distance_sq(r));
}

void BM_DistanceReference(benchmark::State& state) {
  const RasterDomain& r = disk_raster(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::boundary_distance_sq(r));
}

void BM_LaplacianFast(benchmark::State& state) {
  const RasterDomain& r = disk_raster(static_cast<int>(state.range(0)));
  const LaplacianStencil op = make_laplacian_stencil(r);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Ones(op.size(), 8);
  Eigen::MatrixXd y;
  for (auto _ : state) {
    kernels::apply_laplacian(op, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_LaplacianReference(benchmark::State& state) {
  const RasterDomain& r = disk_raster(static_cast<int>(state.range(0)));
  const auto a = reference::assemble_laplacian(r);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Ones(a.rows(), 8);
  Eigen::MatrixXd y;
  for (auto _ : state) {
    reference::apply_laplacian(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_LatticeFast(benchmark::State& state) {
  const double r2 = static_cast<double>(state.range(0)) * state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::count_lattice_points(3, r2));
}

void BM_LatticeReference(benchmark::State& state) {
  const double r2 = static_cast<double>(state.range(0)) * state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(reference::count_lattice_points(3, r2));
}

void BM_PaintFast(benchmark::State& state) {
  const SnowflakeSpec s = build_snowflake(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(s));
}

}  // namespace

BENCHMARK(BM_DistanceFast)->Arg(128)->Arg(512);
BENCHMARK(BM_DistanceReference)->Arg(128);
BENCHMARK(BM_LaplacianFast)->Arg(128)->Arg(512);
BENCHMARK(BM_LaplacianReference)->Arg(128)->Arg(512);
BENCHMARK(BM_LatticeFast)->Arg(50)->Arg(200);
BENCHMARK(BM_LatticeReference)->Arg(50)->Arg(200);
BENCHMARK(BM_PaintFast)->Arg(5)->Arg(6);

BENCHMARK_MAIN();
