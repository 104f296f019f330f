#include "slicyl/oracle/bench.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "slicyl/active_facets.hpp"
#include "slicyl/oracle/reference.hpp"
#include "slicyl/slicing.hpp"

namespace slicyl::oracle {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::optional<std::string> compare_paths(const TriangleMesh& mesh, std::span<const double> radii) {
  const ActiveTable table = build_active_table(mesh, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const LayerSlice active = slice_layer(mesh, table.facets(i), radii[i]);
    const LayerSlice naive = naive_slice_layer(mesh, radii[i]);
    if (segment_multiset(active) != segment_multiset(naive)) {
      return "layer " + std::to_string(i + 1) + " (r=" + std::to_string(radii[i]) + "): " +
             std::to_string(active.segments.size()) + " active-path segments vs " +
             std::to_string(naive.segments.size()) + " all-facet segments";
    }
  }
  return std::nullopt;
}

BenchTiming time_paths(const TriangleMesh& mesh, std::span<const double> radii,
                       std::size_t repeats) {
  BenchTiming timing;
  timing.facets = mesh.facet_count();
  timing.layers = radii.size();
  timing.naive_seconds = std::numeric_limits<double>::infinity();
  timing.active_seconds = std::numeric_limits<double>::infinity();
  timing.table_seconds = std::numeric_limits<double>::infinity();
  std::size_t sink = 0;

  for (std::size_t run = 0; run < std::max<std::size_t>(repeats, 1); ++run) {
    auto start = Clock::now();
    for (const double r : radii) sink += naive_slice_layer(mesh, r).segments.size();
    timing.naive_seconds = std::min(timing.naive_seconds, seconds_since(start));

    start = Clock::now();
    const ActiveTable table = build_active_table(mesh, radii);
    const double table_seconds = seconds_since(start);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      sink += slice_layer(mesh, table.facets(i), radii[i]).segments.size();
    }
    timing.active_seconds = std::min(timing.active_seconds, seconds_since(start));
    timing.table_seconds = std::min(timing.table_seconds, table_seconds);
  }
  // keep the work observable
  if (sink == std::numeric_limits<std::size_t>::max()) timing.layers = 0;
  return timing;
}

}  // namespace slicyl::oracle
