#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "slicyl/geometry.hpp"
#include "slicyl/mesh.hpp"
#include "slicyl/slicing.hpp"

namespace slicyl {

struct EdgeClosestApproach {
  double t = 0.0;  // parameter of `point` along P0 -> P1
  Vec3 point;
  double distance = 0.0;
};

/// Point of the segment P0-P1 closest to the x-axis. The unconstrained
/// minimum of r(t) sits at t = -(v y0 + w z0) / (v^2 + w^2); outside (0, 1) the
/// nearer endpoint is returned. Edges with v = w = 0 keep a constant distance
/// and report P0.
EdgeClosestApproach edge_min_distance(const Vec3& p0, const Vec3& p1);

/// Radial extent of a facet: the slicyl can only meet it for
/// d_pmin < r < d_vmax.
struct FacetRadialRange {
  FacetId facet = 0;
  double d_pmin = 0.0;
  double d_vmax = 0.0;
};

/// Throws E_AXIS_CROSSING_FACET when the facet's yz-projection contains the
/// origin: the per-edge minimum is only the facet minimum for facets that
/// leave the axis clear.
FacetRadialRange facet_radial_range(const TriangleMesh& mesh, FacetId facet);

/// Slicyl-major table of active facets: `facets(i)` lists, in ascending id
/// order, every facet whose open radial range contains radii[i].
class ActiveTable {
 public:
  ActiveTable() = default;
  explicit ActiveTable(std::vector<std::vector<FacetId>> lists) : lists_(std::move(lists)) {}

  std::size_t layer_count() const noexcept { return lists_.size(); }
  std::span<const FacetId> facets(std::size_t layer) const { return lists_[layer]; }
  std::size_t total_entries() const;

 private:
  std::vector<std::vector<FacetId>> lists_;
};

/// O(n log k + entries): each facet binary-searches the sorted radii for its
/// open interval (d_pmin, d_vmax).
ActiveTable build_active_table(const TriangleMesh& mesh, std::span<const double> radii);
ActiveTable build_active_table(const TriangleMesh& mesh, const SlicylSet& slicyls);

}  // namespace slicyl
