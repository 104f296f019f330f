#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "slicyl/error.hpp"
#include "slicyl/oracle/generators.hpp"
#include "slicyl/orientation.hpp"
#include "slicyl/stl.hpp"

namespace slicyl {
namespace {

constexpr double kPi = std::numbers::pi;

void expect_vec_near(const Vec3& a, const Vec3& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

void expect_rotation(const Mat3& r) {
  const Mat3 rrt = r * r.transposed();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(rrt.m[i][j], i == j ? 1.0 : 0.0, 1e-9);
  EXPECT_NEAR(r.determinant(), 1.0, 1e-9);
}

TEST(SkewerTransform, PureZAxis) {
  const RigidTransform t = compute_skewer_transform({{0, 0, 0}, {0, 0, 2}});
  EXPECT_DOUBLE_EQ(t.phi, 0.0);
  EXPECT_NEAR(t.theta, kPi / 2, 1e-15);
  expect_vec_near(t.apply({0, 0, 2}), {2, 0, 0}, 1e-12);
  expect_rotation(t.rotation);
}

TEST(SkewerTransform, AlreadyAligned) {
  const RigidTransform t = compute_skewer_transform({{1, 1, 1}, {4, 1, 1}});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(t.rotation.m[i][j], i == j ? 1.0 : 0.0);
  expect_vec_near(t.translation, {-1, -1, -1}, 0.0);
  expect_vec_near(t.apply({4, 1, 1}), {3, 0, 0}, 0.0);
}

TEST(SkewerTransform, DiagonalInXyPlane) {
  const RigidTransform t = compute_skewer_transform({{0, 0, 0}, {1, 1, 0}});
  EXPECT_NEAR(t.phi, -kPi / 4, 1e-15);
  EXPECT_DOUBLE_EQ(t.theta, 0.0);
  // R_z(-pi/4) applied by hand
  const double c = std::cos(-kPi / 4);
  const double s = std::sin(-kPi / 4);
  expect_vec_near(t.apply({1, 1, 0}), {c - s, s + c, 0}, 1e-15);
  expect_vec_near(t.apply({1, 1, 0}), {std::sqrt(2.0), 0, 0}, 1e-12);
}

TEST(SkewerTransform, ZeroAxis) {
  try {
    compute_skewer_transform({{1, 2, 3}, {1, 2, 3}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroAxis);
  }
}

TEST(SkewerTransform, RandomAxesLandOnPositiveX) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a{u(rng), u(rng), u(rng)};
    const Vec3 b{u(rng), u(rng), u(rng)};
    const RigidTransform t = compute_skewer_transform({a, b});
    expect_rotation(t.rotation);
    const Vec3 tb = t.apply(b);
    const double len = norm(b - a);
    EXPECT_LE(std::abs(tb.y), 1e-9 * len);
    EXPECT_LE(std::abs(tb.z), 1e-9 * len);
    EXPECT_NEAR(tb.x, len, 1e-9 * len);
    expect_vec_near(t.apply(a), {0, 0, 0}, 1e-12);
  }
}

TEST(SkewerTransform, XOffsetShiftsAlongAxis) {
  RigidTransform t = compute_skewer_transform({{0, 0, 0}, {0, 3, 0}});
  t.x_offset = 5.0;
  expect_vec_near(t.apply({0, 3, 0}), {8, 0, 0}, 1e-12);
}

TEST(ApplyTransform, IdentityLeavesMesh) {
  const TriangleMesh mesh = weld_and_index(testing::tetrahedron_facets()).mesh;
  const TriangleMesh out = apply_transform(mesh, RigidTransform{});
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    EXPECT_EQ(out.vertices()[v].x, mesh.vertices()[v].x);
    EXPECT_EQ(out.vertices()[v].y, mesh.vertices()[v].y);
    EXPECT_EQ(out.vertices()[v].z, mesh.vertices()[v].z);
  }
}

TEST(ApplyTransform, NormalsRotateWithMesh) {
  const TriangleMesh mesh = weld_and_index(testing::tetrahedron_facets()).mesh;
  const RigidTransform t = compute_skewer_transform({{0, 0, 0}, {0, 0, 2}});
  const TriangleMesh out = apply_transform(mesh, t);
  for (std::size_t f = 0; f < mesh.facet_count(); ++f) {
    const Facet& facet = out.facets()[f];
    const Vec3 rotated = t.rotate(mesh.facets()[f].normal);
    const Vec3 rederived = triangle_normal(out.vertex(facet.vertices[0]),
                                           out.vertex(facet.vertices[1]),
                                           out.vertex(facet.vertices[2]));
    expect_vec_near(facet.normal, rotated, 1e-9);
    expect_vec_near(facet.normal, rederived, 1e-9);
  }
  EXPECT_TRUE(validate_manifold(out).ok());
}

TEST(ApplyTransform, TiltedBoreLandsOnAxis) {
  const auto cube = oracle::gen_cube_with_bore(20, 2, 32);
  // tilt the cube so its bore runs along an arbitrary direction
  RigidTransform tilt;
  tilt.rotation = rotation_x(0.4) * rotation_z(1.1) * rotation_y(-0.7);
  tilt.translation = {3, -4, 5};
  const TriangleMesh tilted = apply_transform(cube.mesh, tilt);
  const Vec3 a = tilt.apply({0, 0, 0});
  const Vec3 b = tilt.apply({20, 0, 0});
  const TriangleMesh back = apply_transform(tilted, compute_skewer_transform({a, b}));
  std::size_t bore = 0;
  for (std::size_t v = 0; v < cube.mesh.vertex_count(); ++v) {
    if (std::abs(axis_distance(cube.mesh.vertices()[v]) - 2.0) > 1e-12) continue;
    ++bore;
    EXPECT_NEAR(axis_distance(back.vertices()[v]), 2.0, 1e-9);
  }
  EXPECT_EQ(bore, 64u);
}

TEST(ApplyTransform, PreservesPairwiseDistances) {
  const auto tube = oracle::gen_tube(10, 2, 5, 16);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const RigidTransform t = compute_skewer_transform({{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}});
  const TriangleMesh out = apply_transform(tube.mesh, t);
  const auto& p = tube.mesh.vertices();
  const auto& q = out.vertices();
  for (std::size_t i = 0; i < p.size(); i += 7) {
    for (std::size_t j = i + 1; j < p.size(); j += 5) {
      const double d0 = norm(p[i] - p[j]);
      EXPECT_NEAR(norm(q[i] - q[j]), d0, 1e-9 * d0);
    }
  }
}

TriangleMesh mesh_with_distances(std::initializer_list<double> distances) {
  // one far tetrahedron supplies the topology; extra vertices carry the distances
  std::vector<Vec3> v{{0, 10, 0}, {1, 10, 0}, {0, 11, 0}, {0, 10, 1}};
  for (double d : distances) v.push_back({0, d, 0});
  return testing::mesh_of(v, {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}});
}

TEST(Decollide, NoCollisionUnchanged) {
  const TriangleMesh mesh = mesh_with_distances({3.5});
  const std::vector<double> radii{1.0, 2.0, 3.0};
  EXPECT_EQ(decollide_radii(mesh, radii, 1e-6), radii);
}

TEST(Decollide, SingleVertexNudgedOnce) {
  const TriangleMesh mesh = mesh_with_distances({3.0});
  const auto out = decollide_radii(mesh, std::vector<double>{3.0}, 1e-6);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_DOUBLE_EQ(out[0], 3.0 + 2e-6);
}

TEST(Decollide, RepeatedNudges) {
  // r=3: d=3.0 collides; 3.000002: d=3.000002 collides; 3.000004 clears both
  const TriangleMesh mesh = mesh_with_distances({3.0, 3.000002});
  const auto out = decollide_radii(mesh, std::vector<double>{3.0}, 1e-6);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out[0], 3.000004, 1e-12);
  for (double d : {3.0, 3.000002}) EXPECT_GE(std::abs(d - out[0]), 1e-6);
}

TEST(Decollide, GivesUpAfterFourNudges) {
  const TriangleMesh mesh =
      mesh_with_distances({3.0, 3.000002, 3.000004, 3.000006, 3.000008, 3.000010});
  try {
    decollide_radii(mesh, std::vector<double>{3.0}, 1e-6);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DecollideFail);
  }
}

TEST(Decollide, SeparationHoldsOnGeneratedMesh) {
  oracle::TubeOptions opt;
  opt.axial_divisions = 6;
  opt.radial_divisions = 30;
  opt.jitter = 0.9;
  opt.seed = 3;
  const auto tube = oracle::gen_tube(4, 1, 4, 24, opt);
  std::vector<double> radii;
  for (const Vec3& v : tube.mesh.vertices()) radii.push_back(axis_distance(v));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end(), [](double a, double b) { return b - a < 1e-4; }),
              radii.end());
  const double eps = 1e-7;
  const auto out = decollide_radii(tube.mesh, radii, eps);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_LE(out[i] - radii[i], 8 * eps + 1e-15);
    if (i > 0) EXPECT_LT(out[i - 1], out[i]);
    for (const Vec3& v : tube.mesh.vertices()) EXPECT_GE(std::abs(axis_distance(v) - out[i]), eps);
  }
}

}  // namespace
}  // namespace slicyl
