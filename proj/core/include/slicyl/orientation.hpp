#pragma once

#include <array>
#include <span>
#include <vector>

#include "slicyl/geometry.hpp"
#include "slicyl/mesh.hpp"

namespace slicyl {

/// The skewer vector AB: A at one opening of the axial void, B at the other.
struct SkewerAxis {
  Vec3 a;
  Vec3 b;
};

struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static constexpr Mat3 identity() { return {{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}}; }

  constexpr Vec3 operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }

  constexpr Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
    return r;
  }

  constexpr Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  constexpr double determinant() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
};

Mat3 rotation_x(double angle);
Mat3 rotation_y(double angle);
Mat3 rotation_z(double angle);

/// Points map as p -> rotation * (p + translation) + (x_offset, 0, 0).
struct RigidTransform {
  Mat3 rotation = Mat3::identity();
  Vec3 translation;
  double x_offset = 0.0;
  double phi = 0.0;    // about z, diagnostics only
  double theta = 0.0;  // about y, diagnostics only

  Vec3 apply(const Vec3& p) const {
    Vec3 q = rotation * (p + translation);
    q.x += x_offset;
    return q;
  }
  Vec3 rotate(const Vec3& v) const { return rotation * v; }
};

/// Translation sending A to the origin followed by R = R_y(theta) R_z(phi),
/// which carries B onto the positive x-axis. phi = -atan2(v_y, v_x) with
/// atan2(0, 0) = 0; theta is the elevation of v above the xy-plane.
/// Throws E_ZERO_AXIS when A == B.
RigidTransform compute_skewer_transform(const SkewerAxis& axis);

/// Transforms every vertex and rotates every normal; topology is untouched.
TriangleMesh apply_transform(const TriangleMesh& mesh, const RigidTransform& transform);

/// Nudges each radius outward by 2*epsilon until no vertex lies within
/// epsilon of it (|d(V) - r| >= epsilon). At most four nudges per radius, so no
/// radius moves by more than 8*epsilon; throws E_DECOLLIDE_FAIL otherwise.
std::vector<double> decollide_radii(const TriangleMesh& mesh, std::span<const double> radii,
                                    double epsilon);

}  // namespace slicyl
