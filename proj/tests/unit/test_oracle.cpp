#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "slicyl/error.hpp"
#include "slicyl/mesh.hpp"
#include "slicyl/oracle/bench.hpp"
#include "slicyl/oracle/generators.hpp"
#include "slicyl/oracle/reference.hpp"
#include "slicyl/slicing.hpp"

namespace slicyl {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no slicyl::Error thrown";
  return ErrorCode::Param;
}

TEST(Generators, CubeWithBore) {
  const auto cube = oracle::gen_cube_with_bore(20, 2, 32);
  EXPECT_EQ(cube.mesh.facet_count(), 4u * 32u + 16u);
  EXPECT_TRUE(validate_manifold(cube.mesh).ok());
  const BoundingCylinder bc = bounding_cylinder(cube.mesh);
  EXPECT_NEAR(bc.radius, std::sqrt(200.0), 1e-12);
  EXPECT_NEAR(bc.length, 20.0, 1e-12);
  EXPECT_EQ(code_of([] { oracle::gen_cube_with_bore(4, 2, 32); }), ErrorCode::Param);
  EXPECT_EQ(code_of([] { oracle::gen_cube_with_bore(20, 2, 7); }), ErrorCode::Param);
}

TEST(Generators, TubeFacetCount) {
  for (auto [m, s] : {std::pair{1, 1}, std::pair{3, 2}, std::pair{7, 5}}) {
    const auto tube = oracle::gen_tube(10, 2, 5, 24, {.axial_divisions = std::size_t(m), .radial_divisions = std::size_t(s)});
    EXPECT_EQ(tube.mesh.facet_count(), 4u * 24u * std::size_t(m + s));
    EXPECT_TRUE(validate_manifold(tube.mesh).ok());
  }
}

TEST(Generators, JitteredTubeKeepsWalls) {
  const auto tube = oracle::gen_tube(10, 2, 5, 24, {.axial_divisions = 5, .radial_divisions = 5, .jitter = 0.9, .seed = 17});
  EXPECT_TRUE(validate_manifold(tube.mesh).ok());
  double lo = 1e9;
  double hi = 0.0;
  for (const Vec3& v : tube.mesh.vertices()) {
    lo = std::min(lo, axis_distance(v));
    hi = std::max(hi, axis_distance(v));
  }
  EXPECT_NEAR(lo, 2.0, 1e-12);
  EXPECT_NEAR(hi, 5.0, 1e-12);
  const auto again = oracle::gen_tube(10, 2, 5, 24, {.axial_divisions = 5, .radial_divisions = 5, .jitter = 0.9, .seed = 17});
  ASSERT_EQ(again.mesh.vertex_count(), tube.mesh.vertex_count());
  for (std::size_t v = 0; v < tube.mesh.vertex_count(); ++v) {
    EXPECT_EQ(again.mesh.vertices()[v].x, tube.mesh.vertices()[v].x);
  }
}

TEST(Generators, MergedTubesStayManifold) {
  const std::vector<oracle::GeneratedMesh> parts{oracle::gen_tube(2, 2, 5, 16, {.x_start = 1}),
                                                 oracle::gen_tube(3, 2, 5, 16, {.x_start = 6})};
  const auto merged = oracle::merge_meshes(parts);
  EXPECT_EQ(merged.mesh.facet_count(), parts[0].mesh.facet_count() + parts[1].mesh.facet_count());
  EXPECT_TRUE(validate_manifold(merged.mesh).ok());
}

TEST(Generators, Tetrahedron) {
  const auto tet = oracle::gen_tetrahedron({1, 2, 3}, 2);
  EXPECT_EQ(tet.mesh.facet_count(), 4u);
  EXPECT_TRUE(validate_manifold(tet.mesh).ok());
}

TEST(ArcPoint, PlaneExample) {
  const TriangleMesh mesh = testing::mesh_of({{0, 0.5, 0}, {2, 0.5, 0}, {1, 0.5, 2}}, {{0, 1, 2}});
  const oracle::Plane plane = oracle::facet_plane(mesh, 0);
  const Vec3 p{0.5, 0.5, std::sqrt(0.75)};
  const Vec3 q{1.5, 0.5, std::sqrt(0.75)};
  // the plane y = 0.5 meets the cylinder in two lines; the arc is the chord
  const Vec3 mid = oracle::arc_point(plane, 1.0, p, q, 0.5);
  EXPECT_NEAR(mid.x, 1.0, 1e-12);
  EXPECT_NEAR(mid.y, 0.5, 1e-12);
  EXPECT_NEAR(mid.z, std::sqrt(0.75), 1e-12);
}

TEST(ArcPoint, EndpointsExact) {
  const oracle::Plane plane{normalized(Vec3{1, 1, 0}), 0.0};
  const double r = 2.0;
  const Vec3 p{-r * std::cos(0.3), r * std::cos(0.3), r * std::sin(0.3)};
  const Vec3 q{-r * std::cos(1.0), r * std::cos(1.0), r * std::sin(1.0)};
  const Vec3 a = oracle::arc_point(plane, r, p, q, 0.0);
  const Vec3 b = oracle::arc_point(plane, r, p, q, 1.0);
  EXPECT_EQ(a.x, p.x);
  EXPECT_EQ(a.z, p.z);
  EXPECT_EQ(b.y, q.y);
}

TEST(ArcPoint, RandomPlanesStayOnBothSurfaces) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    Vec3 n{u(rng), u(rng), u(rng)};
    if (std::abs(n.x) < 0.2) n.x = 0.5;
    n = normalized(n);
    const double c = u(rng);
    const double r = 1.0 + 3.0 * std::abs(u(rng));
    const oracle::Plane plane{n, c};
    // points on the ellipse: x = (c - r(n_y cos a + n_z sin a)) / n_x
    const auto on = [&](double a) {
      const double y = r * std::cos(a);
      const double z = r * std::sin(a);
      return Vec3{(c - n.y * y - n.z * z) / n.x, y, z};
    };
    const double a0 = ang(rng);
    const double a1 = a0 + 0.1 + 2.5 * std::abs(u(rng));
    for (double frac : {0.1, 0.5, 0.9}) {
      const Vec3 m = oracle::arc_point(plane, r, on(a0), on(a1), frac, oracle::ArcBranch::Positive);
      EXPECT_NEAR(axis_distance(m), r, 1e-9 * r);
      EXPECT_NEAR(dot(n, m), c, 1e-9 * (1.0 + std::abs(c)));
      double am = axis_angle(m);
      while (am < a0) am += 2 * std::numbers::pi;
      EXPECT_LE(am, a1 + 1e-9);
    }
  }
}

TEST(ArcPoint, DegeneratePlane) {
  const oracle::Plane plane{{0, 1, 0}, 0.0};
  EXPECT_EQ(code_of([&] { oracle::arc_point(plane, 1.0, {0, 0, 1}, {1, 0, 1}, 0.5); }),
            ErrorCode::DegeneratePlane);
}

TEST(NaiveSlice, EmptyMesh) {
  const LayerSlice layer = oracle::naive_slice_layer(TriangleMesh{}, 1.0);
  EXPECT_TRUE(layer.points.empty());
  EXPECT_TRUE(layer.segments.empty());
}

TEST(NaiveSlice, MatchesActivePath) {
  const auto tube = oracle::gen_tube(6, 1.5, 4, 20, {.axial_divisions = 4, .radial_divisions = 6, .jitter = 0.8, .seed = 9});
  std::vector<double> radii;
  for (int i = 1; i <= 20; ++i) radii.push_back(1.5 + 0.125 * i + 1e-7);
  EXPECT_FALSE(oracle::compare_paths(tube.mesh, radii).has_value());
}

TEST(CanonicalCycle, RotationAndReflection) {
  Contour c;
  for (EdgeId e : {5u, 2u, 9u, 4u}) c.ids.push_back(PointId::on_edge(e, 0));
  const auto base = oracle::canonical_cycle(c);
  ASSERT_EQ(base.size(), 4u);
  EXPECT_EQ(base.front(), PointId::on_edge(2, 0).value());
  Contour rotated = c;
  std::rotate(rotated.ids.begin(), rotated.ids.begin() + 3, rotated.ids.end());
  EXPECT_EQ(oracle::canonical_cycle(rotated), base);
  Contour reversed = c;
  std::reverse(reversed.ids.begin(), reversed.ids.end());
  EXPECT_EQ(oracle::canonical_cycle(reversed), base);
}

}  // namespace
}  // namespace slicyl
