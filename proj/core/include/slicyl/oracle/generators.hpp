#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "slicyl/geometry.hpp"
#include "slicyl/mesh.hpp"

namespace slicyl::oracle {

/// A procedurally built mesh plus the call that produced it.
struct GeneratedMesh {
  TriangleMesh mesh;
  std::string descriptor;
};

/// Cube spanning x in [0, side] with a side x side square section centred on
/// the x-axis and a prismatic bore of `bore_segments` wall quads along x. Bore
/// vertices lie on the circle of `bore_radius`.
/// Throws E_PARAM unless 2 * bore_radius < side and bore_segments >= 8.
GeneratedMesh gen_cube_with_bore(double side, double bore_radius, std::size_t bore_segments);

struct TubeOptions {
  std::size_t axial_divisions = 1;   // wall rings along x
  std::size_t radial_divisions = 1;  // annulus rings on each end face
  double jitter = 0.0;               // in [0, 1); 0 keeps the grid regular
  std::uint64_t seed = 0;
  double x_start = 0.0;
};

/// Annular tube along x from x_start to x_start + length with
/// 4 * segments * (radial + axial) facets. Jitter moves interior grid
/// vertices by up to a quarter cell; wall radii stay exact.
/// Throws E_PARAM for inner_r <= 0, inner_r >= outer_r, length <= 0,
/// segments < 8, zero divisions or jitter outside [0, 1).
GeneratedMesh gen_tube(double length, double inner_r, double outer_r, std::size_t segments,
                       const TubeOptions& options = {});

/// Closed tetrahedron with its right-angle corner at `origin` and legs of
/// `size` along +x, +y and +z.
GeneratedMesh gen_tetrahedron(const Vec3& origin, double size);

/// Disjoint union; vertices are not merged.
GeneratedMesh merge_meshes(std::span<const GeneratedMesh> parts);

}  // namespace slicyl::oracle
