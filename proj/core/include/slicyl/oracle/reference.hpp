#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "slicyl/contour.hpp"
#include "slicyl/geometry.hpp"
#include "slicyl/mesh.hpp"
#include "slicyl/slicing.hpp"

namespace slicyl::oracle {

/// Layer list built by visiting every facet of the mesh, with the same
/// per-edge intersection and per-facet connection code as slice_layer.
LayerSlice naive_slice_layer(const TriangleMesh& mesh, double radius);

/// n . p = offset
struct Plane {
  Vec3 normal;
  double offset = 0.0;
};

Plane facet_plane(const TriangleMesh& mesh, FacetId facet);

enum class ArcBranch { Shorter, Positive, Negative };

/// Point at `fraction` of the arc length between p and q along the
/// plane/cylinder curve. For planes parallel to the axis the curve is a pair
/// of lines and the chord is interpolated. `branch` picks the direction of
/// travel about the x-axis; Shorter takes the smaller angular span.
/// Throws E_DEGENERATE_PLANE when the plane contains the x-axis.
Vec3 arc_point(const Plane& plane, double radius, const Vec3& p, const Vec3& q, double fraction,
               ArcBranch branch = ArcBranch::Shorter);

/// Contour as a cyclic id sequence normalized for rotation and reflection:
/// starts at the smallest id and continues towards its smaller neighbour.
std::vector<std::uint64_t> canonical_cycle(const Contour& contour);

/// Sorted canonical cycles of a layer; equal sets compare equal.
std::vector<std::vector<std::uint64_t>> canonical_contour_set(std::span<const Contour> contours);

/// Segments as sorted (facet, smaller id, larger id) triples.
std::vector<std::array<std::uint64_t, 3>> segment_multiset(const LayerSlice& layer);

}  // namespace slicyl::oracle
