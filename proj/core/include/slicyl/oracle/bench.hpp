#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "slicyl/mesh.hpp"

namespace slicyl::oracle {

struct BenchTiming {
  std::size_t facets = 0;
  std::size_t layers = 0;
  double naive_seconds = 0.0;
  double active_seconds = 0.0;  // table build plus slicing
  double table_seconds = 0.0;

  double speedup() const { return active_seconds > 0.0 ? naive_seconds / active_seconds : 0.0; }
};

/// First layer on which the active-table and all-facet paths disagree, as a
/// message; nullopt when every layer has the same segments.
std::optional<std::string> compare_paths(const TriangleMesh& mesh, std::span<const double> radii);

/// Best of `repeats` runs for each path, single-threaded.
BenchTiming time_paths(const TriangleMesh& mesh, std::span<const double> radii,
                       std::size_t repeats = 3);

}  // namespace slicyl::oracle
