#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "slicyl/geometry.hpp"
#include "slicyl/mesh.hpp"

namespace slicyl {

// ---------------------------------------------------------------------------
// Bounding cylinder and slicyl radii
// ---------------------------------------------------------------------------

/// Smallest x-axis-centred finite cylinder enclosing every vertex.
struct BoundingCylinder {
  double radius = 0.0;  // r_BC = max d(V)
  double length = 0.0;  // l_BC = x_max - x_min
  double x_min = 0.0;
  double x_max = 0.0;
};

BoundingCylinder bounding_cylinder(const TriangleMesh& mesh);

/// Concentric slicing cylinders r_s[i] = r_m + i * delta, i = 1..k, with
/// k = floor((r_BC - r_m) / delta), after decollision against the vertices.
struct SlicylSet {
  double mandrel_radius = 0.0;
  double layer_thickness = 0.0;
  double epsilon = 0.0;
  std::vector<double> nominal;  // before decollision
  std::vector<double> radii;    // strictly increasing

  std::size_t count() const noexcept { return radii.size(); }
};

/// Default decollision band: 1e-6 of the layer thickness.
constexpr double default_epsilon(double layer_thickness) { return 1e-6 * layer_thickness; }

/// Throws E_PARAM for delta <= 0 or r_m < 0, E_NO_LAYERS when
/// r_BC <= r_m + delta, E_DECOLLIDE_FAIL from decollision.
SlicylSet build_slicyl_set(const TriangleMesh& mesh, double mandrel_radius, double layer_thickness,
                           const BoundingCylinder& bounding,
                           std::optional<double> epsilon = std::nullopt);

// ---------------------------------------------------------------------------
// Line / cylinder intersection
// ---------------------------------------------------------------------------

/// Identity of a point on a slicyl. Edge crossings are (edge id, root index);
/// points inserted when subdividing long arcs are synthetic and sort after
/// every edge crossing.
class PointId {
 public:
  constexpr PointId() = default;

  static constexpr PointId on_edge(EdgeId edge, unsigned root) {
    return PointId((static_cast<std::uint64_t>(edge) << 1) | (root & 1u));
  }
  static constexpr PointId synthetic(std::uint64_t serial) { return PointId(kSyntheticBit | serial); }

  constexpr bool is_synthetic() const { return (value_ & kSyntheticBit) != 0; }
  constexpr EdgeId edge() const { return static_cast<EdgeId>(value_ >> 1); }
  constexpr unsigned root() const { return static_cast<unsigned>(value_ & 1u); }
  constexpr std::uint64_t value() const { return value_; }

  friend constexpr auto operator<=>(const PointId&, const PointId&) = default;

 private:
  static constexpr std::uint64_t kSyntheticBit = std::uint64_t{1} << 63;
  constexpr explicit PointId(std::uint64_t v) : value_(v) {}
  std::uint64_t value_ = 0;
};

struct EdgeCrossing {
  double t = 0.0;  // parameter along P0 -> P1, strictly inside (0, 1)
  Vec3 position;
  unsigned root = 0;  // 0 for the smaller quadratic root, 1 for the larger
};

struct EdgeCrossings {
  std::array<EdgeCrossing, 2> items{};
  std::uint8_t count = 0;

  std::span<const EdgeCrossing> view() const { return {items.data(), count}; }
};

/// Transversal crossings of the segment P0-P1 with the cylinder y^2 + z^2 = r^2,
/// ordered by t. Solves A t^2 + B t + C = 0 with A = v^2 + w^2,
/// B = 2(y0 v + z0 w), C = y0^2 + z0^2 - r^2 (v = y1 - y0, w = z1 - z0) and keeps
/// roots with 0 < t < 1. Tangency (disc < 1e-12 B^2) and A == 0 give nothing.
EdgeCrossings edge_cylinder_intersections(const Vec3& p0, const Vec3& p1, double radius);

/// One crossing of the layer: `t` is along the canonical edge direction, or
/// the arc fraction for synthetic points.
struct IntersectionPoint {
  PointId id;
  Vec3 position;
  double t = 0.0;
};

// ---------------------------------------------------------------------------
// Per-facet connection of crossings
// ---------------------------------------------------------------------------

/// A crossing as seen by a facet: index of the layer point plus its canonical
/// edge parameter and position.
struct CrossingRef {
  std::uint32_t point = 0;
  double t = 0.0;
  Vec3 position;
};

/// Crossings on one canonical edge, ordered by canonical t.
struct EdgeHits {
  std::array<CrossingRef, 2> items{};
  std::uint8_t count = 0;
};

struct PerimeterEntry {
  enum class Kind : std::uint8_t { Vertex, Crossing };
  Kind kind = Kind::Vertex;
  std::uint32_t ref = 0;  // vertex id or layer point index
  Vec3 position;

  bool is_crossing() const { return kind == Kind::Crossing; }
};

/// At most 3 vertices and 6 crossings.
struct PerimeterList {
  std::array<PerimeterEntry, 9> entries{};
  std::size_t size = 0;

  const PerimeterEntry& operator[](std::size_t i) const { return entries[i]; }
  const PerimeterEntry* begin() const { return entries.data(); }
  const PerimeterEntry* end() const { return entries.data() + size; }
  std::size_t crossing_count() const;
};

/// V0, crossings of V0->V1 by increasing local parameter, V1, crossings of
/// V1->V2, V2, crossings of V2->V0. `hits[k]` belongs to facet edge k and holds
/// canonical parameters, re-expressed here in the facet's traversal direction.
PerimeterList facet_perimeter_list(const TriangleMesh& mesh, FacetId facet,
                                   const std::array<EdgeHits, 3>& hits);

/// A pair of crossings joined across one facet. `sweep` is the signed angle
/// about the x-axis travelled from ends[0] to ends[1] along the facet-plane /
/// cylinder curve inside the facet.
struct Segment {
  FacetId facet = 0;
  std::array<std::uint32_t, 2> ends{};
  double sweep = 0.0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Walks the cyclic perimeter. A stretch between neighbouring entries lies
/// outside the slicyl when its midpoint has d >= r; each maximal outside run
/// is bounded by two crossings, and those two are joined by a segment. Every
/// segment is checked against the facet: the curve point halfway along the
/// chosen arc must have barycentric coordinates >= -1e-9 (E_ARC_ORACLE
/// otherwise). Returns at most three segments.
std::vector<Segment> facet_relevant_segments(const TriangleMesh& mesh, FacetId facet,
                                             const PerimeterList& perimeter, double radius);

/// Point on the facet-plane / cylinder curve at `fraction` of the angular
/// sweep from `from`. For planes parallel to the axis (|n_x| < 1e-9) the
/// curve is a straight line and the chord is interpolated instead.
Vec3 arc_point_by_angle(const Vec3& plane_normal, const Vec3& from, const Vec3& to, double radius,
                        double sweep, double fraction);

/// Smallest barycentric coordinate of p (projected onto the facet plane).
double min_barycentric(const TriangleMesh& mesh, FacetId facet, const Vec3& p);

// ---------------------------------------------------------------------------
// Layers
// ---------------------------------------------------------------------------

/// Segments of one slicyl (the layer list A[i]). `points` is sorted by id and
/// segments index into it.
struct LayerSlice {
  double radius = 0.0;
  std::vector<IntersectionPoint> points;
  std::vector<Segment> segments;
};

/// True when the yz-projection of the facet contains the origin, i.e. the
/// facet crosses (or touches) the x-axis.
bool facet_crosses_axis(const TriangleMesh& mesh, FacetId facet);

/// Every facet whose projection contains the origin.
std::vector<FacetId> axis_crossing_facets(const TriangleMesh& mesh);

/// Throws E_AXIS_CROSSING_FACET listing the offending facets.
void require_axial_void(const TriangleMesh& mesh);

/// A slicyl passing through the interior of the facet without touching any
/// edge: the whole plane/cylinder ellipse lies inside the facet.
bool interior_pass(const TriangleMesh& mesh, FacetId facet, double radius);

/// Slices the given facets. Each canonical edge is intersected once per
/// layer; both adjacent facets reference the same point. Throws
/// E_AXIS_CROSSING_FACET for facets over the axis and E_ARC_ORACLE.
LayerSlice slice_layer(const TriangleMesh& mesh, std::span<const FacetId> facets, double radius);

/// Splits every segment whose |sweep| exceeds `max_sweep` (radians) into equal
/// angular pieces, inserting synthetic points on the facet-plane / cylinder
/// curve. `max_sweep <= 0` leaves the slice untouched.
LayerSlice subdivide_long_arcs(const TriangleMesh& mesh, LayerSlice slice, double max_sweep);

}  // namespace slicyl
