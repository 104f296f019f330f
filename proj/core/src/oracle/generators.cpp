#include "slicyl/oracle/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "slicyl/error.hpp"

namespace slicyl::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Triangle = std::array<VertexId, 3>;

class Builder {
 public:
  VertexId add(const Vec3& p) {
    vertices_.push_back(p);
    return static_cast<VertexId>(vertices_.size() - 1);
  }

  // Adds (a, b, c), flipped if its normal points away from `outward`.
  void triangle(VertexId a, VertexId b, VertexId c, const Vec3& outward) {
    const Vec3 n = cross(vertices_[b] - vertices_[a], vertices_[c] - vertices_[a]);
    if (dot(n, outward) < 0.0) std::swap(b, c);
    triangles_.push_back({a, b, c});
  }

  void quad(VertexId a, VertexId b, VertexId c, VertexId d, const Vec3& outward) {
    triangle(a, b, c, outward);
    triangle(a, c, d, outward);
  }

  const Vec3& at(VertexId v) const { return vertices_[v]; }

  TriangleMesh build() { return TriangleMesh::from_indexed(std::move(vertices_), triangles_); }

 private:
  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
};

Vec3 radial(double angle) { return {0.0, std::cos(angle), std::sin(angle)}; }

std::string format_descriptor(std::string_view name, std::initializer_list<double> args) {
  std::ostringstream out;
  out.precision(17);
  out << name << '(';
  bool first = true;
  for (double a : args) {
    out << (first ? "" : ", ") << a;
    first = false;
  }
  out << ')';
  return out.str();
}

}  // namespace

GeneratedMesh gen_cube_with_bore(double side, double bore_radius, std::size_t bore_segments) {
  if (!(side > 0.0) || !(bore_radius > 0.0) || !(2.0 * bore_radius < side) || bore_segments < 8) {
    throw Error(ErrorCode::Param, "cube with bore needs 0 < 2*bore_radius < side and >= 8 segments");
  }
  const std::size_t n = bore_segments;
  const double h = 0.5 * side;
  Builder b;

  // ring[f][j], corner[f][q] for the front (x = 0) and back (x = side) faces
  std::array<std::vector<VertexId>, 2> ring;
  std::array<std::array<VertexId, 4>, 2> corner{};
  std::vector<double> ring_angle(n);
  std::array<double, 4> corner_angle{};
  for (std::size_t j = 0; j < n; ++j) ring_angle[j] = kTwoPi * (j + 0.5) / n;
  for (int q = 0; q < 4; ++q) corner_angle[q] = std::numbers::pi / 4 + q * std::numbers::pi / 2;

  for (int f = 0; f < 2; ++f) {
    const double x = f == 0 ? 0.0 : side;
    for (std::size_t j = 0; j < n; ++j) {
      ring[f].push_back(b.add(Vec3{x, 0, 0} + bore_radius * radial(ring_angle[j])));
    }
    for (int q = 0; q < 4; ++q) {
      const Vec3 dir = radial(corner_angle[q]);
      corner[f][q] = b.add({x, dir.y > 0 ? h : -h, dir.z > 0 ? h : -h});
    }
  }

  // end faces: angular zipper between the bore ring and the square corners
  for (int f = 0; f < 2; ++f) {
    const Vec3 outward{f == 0 ? -1.0 : 1.0, 0, 0};
    std::size_t j = 0;  // next ring vertex to consume
    int q = 0;          // next corner to consume
    // start: last corner before ring_angle[0] is corner 3 (angle 7pi/4 - 2pi)
    VertexId ring_cur = ring[f][n - 1];
    VertexId corner_cur = corner[f][3];
    double ring_next = ring_angle[0];
    double corner_next = corner_angle[0];
    while (j < n || q < 4) {
      const bool take_ring = q >= 4 || (j < n && ring_next < corner_next);
      if (take_ring) {
        const VertexId nv = ring[f][j];
        b.triangle(ring_cur, nv, corner_cur, outward);
        ring_cur = nv;
        ++j;
        ring_next = j < n ? ring_angle[j] : 0.0;
      } else {
        const VertexId nv = corner[f][q];
        b.triangle(corner_cur, nv, ring_cur, outward);
        corner_cur = nv;
        ++q;
        corner_next = q < 4 ? corner_angle[q] : 0.0;
      }
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (j + 1) % n;
    const double mid = 0.5 * (ring_angle[j] + ring_angle[j] + kTwoPi / n);
    b.quad(ring[0][j], ring[0][k], ring[1][k], ring[1][j], -radial(mid));
  }
  for (int q = 0; q < 4; ++q) {
    const int p = (q + 1) % 4;
    const Vec3 out = b.at(corner[0][q]) + b.at(corner[0][p]);
    b.quad(corner[0][q], corner[0][p], corner[1][p], corner[1][q], {0.0, out.y, out.z});
  }

  return {b.build(), format_descriptor("gen_cube_with_bore",
                                       {side, bore_radius, static_cast<double>(bore_segments)})};
}

GeneratedMesh gen_tube(double length, double inner_r, double outer_r, std::size_t segments,
                       const TubeOptions& options) {
  const std::size_t n = segments;
  const std::size_t m = options.radial_divisions;
  const std::size_t s = options.axial_divisions;
  if (!(length > 0.0) || !(inner_r > 0.0) || !(inner_r < outer_r) || n < 8 || m == 0 || s == 0 ||
      !(options.jitter >= 0.0 && options.jitter < 1.0)) {
    throw Error(ErrorCode::Param,
                "tube needs 0 < inner_r < outer_r, length > 0, >= 8 segments, divisions >= 1 "
                "and jitter in [0, 1)");
  }
  const double x0 = options.x_start;
  const double dx = length / static_cast<double>(s);
  const double dr = (outer_r - inner_r) / static_cast<double>(m);
  const double da = kTwoPi / static_cast<double>(n);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-0.25 * options.jitter, 0.25 * options.jitter);
  const auto jitter = [&](double scale) { return options.jitter > 0.0 ? unit(rng) * scale : 0.0; };

  Builder b;
  // face[f][j][i]: ring j (0 = inner wall, m = outer wall) of end face f
  std::array<std::vector<std::vector<VertexId>>, 2> face;
  for (int f = 0; f < 2; ++f) {
    const double x = f == 0 ? x0 : x0 + length;
    face[f].resize(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        double r = inner_r + dr * static_cast<double>(j);
        double a = da * static_cast<double>(i);
        double px = x;
        if (j > 0 && j < m) {
          r += jitter(dr);
          a += jitter(da);
          px += jitter(dx);
        }
        face[f][j].push_back(b.add(Vec3{px, 0, 0} + r * radial(a)));
      }
    }
  }
  // wall[w][s][i]: w = 0 inner, 1 outer; rings 0 and s are the end-face rings
  std::array<std::vector<std::vector<VertexId>>, 2> wall;
  for (int w = 0; w < 2; ++w) {
    const double r = w == 0 ? inner_r : outer_r;
    const std::size_t j = w == 0 ? 0 : m;
    wall[w].resize(s + 1);
    wall[w][0] = face[0][j];
    wall[w][s] = face[1][j];
    for (std::size_t k = 1; k < s; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        const double a = da * static_cast<double>(i);
        const double px = x0 + dx * static_cast<double>(k) + jitter(dx);
        wall[w][k].push_back(b.add(Vec3{px, 0, 0} + r * radial(a)));
      }
    }
  }

  for (int f = 0; f < 2; ++f) {
    const Vec3 outward{f == 0 ? -1.0 : 1.0, 0, 0};
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (i + 1) % n;
        b.quad(face[f][j][i], face[f][j][k], face[f][j + 1][k], face[f][j + 1][i], outward);
      }
    }
  }
  for (int w = 0; w < 2; ++w) {
    for (std::size_t k = 0; k < s; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = (i + 1) % n;
        const Vec3 out = radial(da * (static_cast<double>(i) + 0.5));
        b.quad(wall[w][k][i], wall[w][k][l], wall[w][k + 1][l], wall[w][k + 1][i],
               w == 0 ? -out : out);
      }
    }
  }

  return {b.build(),
          format_descriptor("gen_tube", {length, inner_r, outer_r, static_cast<double>(n),
                                         static_cast<double>(s), static_cast<double>(m),
                                         options.jitter, static_cast<double>(options.seed), x0})};
}

GeneratedMesh gen_tetrahedron(const Vec3& origin, double size) {
  std::vector<Vec3> v{origin, origin + Vec3{size, 0, 0}, origin + Vec3{0, size, 0},
                      origin + Vec3{0, 0, size}};
  const std::array<Triangle, 4> t{{{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}};
  return {TriangleMesh::from_indexed(std::move(v), t),
          format_descriptor("gen_tetrahedron", {origin.x, origin.y, origin.z, size})};
}

GeneratedMesh merge_meshes(std::span<const GeneratedMesh> parts) {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::string descriptor = "merge(";
  for (const GeneratedMesh& part : parts) {
    const auto base = static_cast<VertexId>(vertices.size());
    vertices.insert(vertices.end(), part.mesh.vertices().begin(), part.mesh.vertices().end());
    for (const Facet& f : part.mesh.facets()) {
      triangles.push_back({f.vertices[0] + base, f.vertices[1] + base, f.vertices[2] + base});
    }
    descriptor += (descriptor.back() == '(' ? "" : ", ") + part.descriptor;
  }
  return {TriangleMesh::from_indexed(std::move(vertices), triangles), descriptor + ")"};
}

}  // namespace slicyl::oracle
