#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slicyl/active_facets.hpp"
#include "slicyl/contour.hpp"
#include "slicyl/mesh.hpp"
#include "slicyl/slicing.hpp"

namespace slicyl {

struct SliceSettings {
  double mandrel_radius = 0.0;
  double layer_thickness = 0.0;
  std::optional<double> epsilon;  // default: 1e-6 * layer_thickness
  double max_arc_sweep = 0.0;     // radians; <= 0 disables arc subdivision
  unsigned threads = 1;
  bool strict = false;  // interior passes become E_INTERIOR_PASS
};

struct LayerResult {
  std::size_t index = 0;  // 1-based slicyl index i
  double radius = 0.0;
  std::size_t active_facets = 0;
  LayerSlice slice;
  LayerContours contours;

  std::size_t count(ContourKind kind) const;
};

struct SliceResult {
  BoundingCylinder bounding;
  SlicylSet slicyls;
  std::size_t active_entries = 0;
  std::vector<LayerResult> layers;
  std::vector<std::string> warnings;
};

/// Facets over the axis that a slicyl would pass through without touching
/// an edge, as "facet F at r=R" lines.
std::vector<std::string> interior_pass_report(const TriangleMesh& mesh,
                                              std::span<const FacetId> facets,
                                              std::span<const double> radii);

/// Slices an already oriented mesh (skewer on +x): bounding cylinder, slicyl
/// radii, active facet table, then per layer segments and classified
/// contours. Layers run on up to `threads` workers and are gathered in
/// layer order; the result does not depend on the thread count.
SliceResult slice_mesh(const TriangleMesh& mesh, const SliceSettings& settings);

}  // namespace slicyl
