#include "slicyl/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slicyl/error.hpp"

namespace slicyl {

namespace {
constexpr int kMaxNudges = 4;
}

Mat3 rotation_x(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {{{{1, 0, 0}, {0, c, -s}, {0, s, c}}}};
}

Mat3 rotation_y(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {{{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}}};
}

Mat3 rotation_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}}};
}

RigidTransform compute_skewer_transform(const SkewerAxis& axis) {
  const Vec3 v = axis.b - axis.a;
  if (v == Vec3{}) throw Error(ErrorCode::ZeroAxis, "skewer axis has zero length (A == B)");

  RigidTransform t;
  t.translation = -axis.a;
  // std::atan2(0, 0) is 0, which is the convention wanted for v parallel to z.
  t.phi = -std::atan2(v.y, v.x);
  // Equals pi/2 - acos(v_z / |v|) but keeps full precision near the poles.
  t.theta = std::atan2(v.z, std::hypot(v.x, v.y));
  t.rotation = rotation_y(t.theta) * rotation_z(t.phi);
  return t;
}

TriangleMesh apply_transform(const TriangleMesh& mesh, const RigidTransform& transform) {
  std::vector<Vec3> vertices;
  vertices.reserve(mesh.vertex_count());
  for (const Vec3& p : mesh.vertices()) vertices.push_back(transform.apply(p));

  std::vector<Vec3> normals;
  normals.reserve(mesh.facet_count());
  for (const Facet& f : mesh.facets()) normals.push_back(transform.rotate(f.normal));

  return mesh.with_geometry(std::move(vertices), std::move(normals));
}

std::vector<double> decollide_radii(const TriangleMesh& mesh, std::span<const double> radii,
                                    double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::Param, "decollision epsilon must be positive");

  std::vector<double> distances;
  distances.reserve(mesh.vertex_count());
  for (const Vec3& p : mesh.vertices()) distances.push_back(axis_distance(p));
  std::sort(distances.begin(), distances.end());

  const auto collides = [&](double r) {
    const auto it = std::upper_bound(distances.begin(), distances.end(), r - epsilon);
    return it != distances.end() && *it < r + epsilon;
  };

  std::vector<double> out;
  out.reserve(radii.size());
  for (const double nominal : radii) {
    double r = nominal;
    int nudges = 0;
    while (collides(r)) {
      if (nudges == kMaxNudges) {
        throw Error(ErrorCode::DecollideFail,
                    "no collision-free radius within " + std::to_string(kMaxNudges) +
                        " nudges of " + std::to_string(nominal));
      }
      ++nudges;
      r = nominal + 2.0 * epsilon * nudges;
    }
    if (!out.empty() && !(r > out.back())) {
      throw Error(ErrorCode::DecollideFail, "decollision broke radius ordering");
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace slicyl
