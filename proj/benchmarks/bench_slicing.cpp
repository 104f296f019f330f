#include <benchmark/benchmark.h>

#include <map>
#include <utility>

#include "slicyl/active_facets.hpp"
#include "slicyl/contour.hpp"
#include "slicyl/oracle/generators.hpp"
#include "slicyl/oracle/reference.hpp"
#include "slicyl/pipeline.hpp"

namespace {

using namespace slicyl;

// tube with 4 * segments * 2 * divisions facets
const TriangleMesh& tube(std::size_t segments, std::size_t divisions) {
  static std::map<std::pair<std::size_t, std::size_t>, TriangleMesh> cache;
  auto [it, fresh] = cache.try_emplace({segments, divisions});
  if (fresh) {
    it->second = oracle::gen_tube(20, 2, 12.5, segments,
                                  {.axial_divisions = divisions, .radial_divisions = divisions,
                                   .jitter = 0.5, .seed = 1})
                     .mesh;
  }
  return it->second;
}

SlicylSet radii_of(const TriangleMesh& mesh, double delta) {
  return build_slicyl_set(mesh, 2.0, delta, bounding_cylinder(mesh));
}

void BM_ActiveTable(benchmark::State& state) {
  const TriangleMesh& mesh = tube(state.range(0), state.range(1));
  const SlicylSet set = radii_of(mesh, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(build_active_table(mesh, set).total_entries());
  state.counters["facets"] = static_cast<double>(mesh.facet_count());
}

void BM_SliceLayerActive(benchmark::State& state) {
  const TriangleMesh& mesh = tube(state.range(0), state.range(1));
  const SlicylSet set = radii_of(mesh, 0.05);
  const ActiveTable table = build_active_table(mesh, set);
  const std::size_t mid = set.count() / 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(slice_layer(mesh, table.facets(mid), set.radii[mid]).segments.size());
  }
  state.counters["active"] = static_cast<double>(table.facets(mid).size());
}

void BM_SliceLayerNaive(benchmark::State& state) {
  const TriangleMesh& mesh = tube(state.range(0), state.range(1));
  const SlicylSet set = radii_of(mesh, 0.05);
  const double r = set.radii[set.count() / 2];
  for (auto _ : state) benchmark::DoNotOptimize(oracle::naive_slice_layer(mesh, r).segments.size());
}

void BM_LayerContours(benchmark::State& state) {
  const TriangleMesh& mesh = tube(state.range(0), state.range(1));
  const SlicylSet set = radii_of(mesh, 0.05);
  const ActiveTable table = build_active_table(mesh, set);
  const std::size_t mid = set.count() / 2;
  const LayerSlice layer = slice_layer(mesh, table.facets(mid), set.radii[mid]);
  for (auto _ : state) benchmark::DoNotOptimize(build_layer_contours(layer, mid + 1).contours.size());
  state.counters["points"] = static_cast<double>(layer.points.size());
}

void BM_Pipeline(benchmark::State& state) {
  const TriangleMesh& mesh = tube(125, 50);
  SliceSettings settings;
  settings.mandrel_radius = 2.0;
  settings.layer_thickness = 0.05;
  settings.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(slice_mesh(mesh, settings).layers.size());
}

}  // namespace

BENCHMARK(BM_ActiveTable)->Args({50, 25})->Args({125, 50})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SliceLayerActive)->Args({50, 25})->Args({125, 50})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SliceLayerNaive)->Args({50, 25})->Args({125, 50})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LayerContours)->Args({50, 25})->Args({125, 50})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Pipeline)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
