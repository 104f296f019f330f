#include "slicyl/active_facets.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "slicyl/error.hpp"

namespace slicyl {

EdgeClosestApproach edge_min_distance(const Vec3& p0, const Vec3& p1) {
  const double v = p1.y - p0.y;
  const double w = p1.z - p0.z;
  const double a = v * v + w * w;
  if (a == 0.0) return {0.0, p0, axis_distance(p0)};

  const double t = -(v * p0.y + w * p0.z) / a;
  if (t > 0.0 && t < 1.0) {
    const Vec3 p = lerp(p0, p1, t);
    return {t, p, axis_distance(p)};
  }
  const double d0 = axis_distance(p0);
  const double d1 = axis_distance(p1);
  return d0 <= d1 ? EdgeClosestApproach{0.0, p0, d0} : EdgeClosestApproach{1.0, p1, d1};
}

FacetRadialRange facet_radial_range(const TriangleMesh& mesh, FacetId facet) {
  if (facet_crosses_axis(mesh, facet)) {
    throw Error(ErrorCode::AxisCrossingFacet, "facet " + std::to_string(facet) +
                                                  " crosses the x-axis",
                {"facet " + std::to_string(facet)});
  }
  const Facet& f = mesh.facet(facet);
  FacetRadialRange range{facet, std::numeric_limits<double>::infinity(), 0.0};
  for (int k = 0; k < 3; ++k) {
    const Vec3& a = mesh.vertex(f.vertices[k]);
    const Vec3& b = mesh.vertex(f.vertices[(k + 1) % 3]);
    range.d_pmin = std::min(range.d_pmin, edge_min_distance(a, b).distance);
    range.d_vmax = std::max(range.d_vmax, axis_distance(a));
  }
  return range;
}

std::size_t ActiveTable::total_entries() const {
  return std::accumulate(lists_.begin(), lists_.end(), std::size_t{0},
                         [](std::size_t acc, const auto& l) { return acc + l.size(); });
}

ActiveTable build_active_table(const TriangleMesh& mesh, std::span<const double> radii) {
  std::vector<std::vector<FacetId>> lists(radii.size());
  for (FacetId f = 0; f < mesh.facet_count(); ++f) {
    const FacetRadialRange range = facet_radial_range(mesh, f);
    // first radius strictly above d_pmin, first radius not below d_vmax
    const auto lo = std::upper_bound(radii.begin(), radii.end(), range.d_pmin);
    const auto hi = std::lower_bound(lo, radii.end(), range.d_vmax);
    for (auto it = lo; it < hi; ++it) {
      lists[static_cast<std::size_t>(it - radii.begin())].push_back(f);
    }
  }
  return ActiveTable(std::move(lists));
}

ActiveTable build_active_table(const TriangleMesh& mesh, const SlicylSet& slicyls) {
  return build_active_table(mesh, slicyls.radii);
}

}  // namespace slicyl
