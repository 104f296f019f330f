#include "slicyl/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "slicyl/error.hpp"
#include "slicyl/orientation.hpp"

namespace slicyl {

namespace {

constexpr double kTangencyTolerance = 1e-12;
constexpr double kBarycentricTolerance = 1e-9;
constexpr double kParallelPlane = 1e-9;

double cross2(double ay, double az, double by, double bz) { return ay * bz - az * by; }

}  // namespace

BoundingCylinder bounding_cylinder(const TriangleMesh& mesh) {
  BoundingCylinder bc;
  if (mesh.vertex_count() == 0) return bc;
  bc.x_min = std::numeric_limits<double>::infinity();
  bc.x_max = -std::numeric_limits<double>::infinity();
  for (const Vec3& p : mesh.vertices()) {
    bc.radius = std::max(bc.radius, axis_distance(p));
    bc.x_min = std::min(bc.x_min, p.x);
    bc.x_max = std::max(bc.x_max, p.x);
  }
  bc.length = bc.x_max - bc.x_min;
  return bc;
}

SlicylSet build_slicyl_set(const TriangleMesh& mesh, double mandrel_radius, double layer_thickness,
                           const BoundingCylinder& bounding, std::optional<double> epsilon) {
  if (!(layer_thickness > 0.0)) throw Error(ErrorCode::Param, "layer thickness must be positive");
  if (!(mandrel_radius >= 0.0)) throw Error(ErrorCode::Param, "mandrel radius must be >= 0");
  if (bounding.radius <= mandrel_radius + layer_thickness) {
    throw Error(ErrorCode::NoLayers,
                "bounding radius " + std::to_string(bounding.radius) +
                    " does not exceed the first layer radius " +
                    std::to_string(mandrel_radius + layer_thickness));
  }

  SlicylSet set;
  set.mandrel_radius = mandrel_radius;
  set.layer_thickness = layer_thickness;
  set.epsilon = epsilon.value_or(default_epsilon(layer_thickness));

  const auto k = static_cast<std::size_t>(
      std::floor((bounding.radius - mandrel_radius) / layer_thickness));
  set.nominal.reserve(k);
  for (std::size_t i = 1; i <= k; ++i) {
    set.nominal.push_back(mandrel_radius + static_cast<double>(i) * layer_thickness);
  }
  set.radii = decollide_radii(mesh, set.nominal, set.epsilon);
  return set;
}

EdgeCrossings edge_cylinder_intersections(const Vec3& p0, const Vec3& p1, double radius) {
  EdgeCrossings out;
  const double v = p1.y - p0.y;
  const double w = p1.z - p0.z;
  const double a = v * v + w * w;
  if (a == 0.0) return out;
  const double b = 2.0 * (p0.y * v + p0.z * w);
  const double c = p0.y * p0.y + p0.z * p0.z - radius * radius;
  const double disc = b * b - 4.0 * a * c;
  if (disc <= kTangencyTolerance * b * b) return out;

  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double t0 = q / a;
  double t1 = c / q;
  if (t0 > t1) std::swap(t0, t1);

  const std::array<double, 2> roots{t0, t1};
  for (unsigned r = 0; r < 2; ++r) {
    const double t = roots[r];
    if (t > 0.0 && t < 1.0) out.items[out.count++] = {t, lerp(p0, p1, t), r};
  }
  return out;
}

std::size_t PerimeterList::crossing_count() const {
  return static_cast<std::size_t>(
      std::count_if(begin(), end(), [](const PerimeterEntry& e) { return e.is_crossing(); }));
}

PerimeterList facet_perimeter_list(const TriangleMesh& mesh, FacetId facet,
                                   const std::array<EdgeHits, 3>& hits) {
  const Facet& f = mesh.facet(facet);
  const auto& edges = mesh.facet_edges(facet);
  PerimeterList list;
  for (int k = 0; k < 3; ++k) {
    const VertexId from = f.vertices[k];
    list.entries[list.size++] = {PerimeterEntry::Kind::Vertex, from, mesh.vertex(from)};

    const EdgeHits& h = hits[k];
    const bool forward = mesh.edge(edges[k]).endpoints[0] == from;
    // canonical hits are sorted by t, so the facet sees them reversed when it
    // walks the edge against the canonical direction
    for (std::uint8_t j = 0; j < h.count; ++j) {
      const CrossingRef& c = h.items[forward ? j : h.count - 1 - j];
      list.entries[list.size++] = {PerimeterEntry::Kind::Crossing, c.point, c.position};
    }
  }
  return list;
}

Vec3 arc_point_by_angle(const Vec3& plane_normal, const Vec3& from, const Vec3& to, double radius,
                        double sweep, double fraction) {
  if (std::abs(plane_normal.x) < kParallelPlane) {
    Vec3 q = lerp(from, to, fraction);
    const double d = axis_distance(q);
    if (d > 0.0) {
      q.y *= radius / d;
      q.z *= radius / d;
    }
    return q;
  }
  // anchor on the nearer endpoint to keep the plane solve well conditioned
  const bool from_start = fraction <= 0.5;
  const Vec3& anchor = from_start ? from : to;
  const double alpha =
      from_start ? axis_angle(from) + fraction * sweep : axis_angle(to) - (1.0 - fraction) * sweep;
  const double y = radius * std::cos(alpha);
  const double z = radius * std::sin(alpha);
  const double x =
      anchor.x - (plane_normal.y * (y - anchor.y) + plane_normal.z * (z - anchor.z)) / plane_normal.x;
  return {x, y, z};
}

double min_barycentric(const TriangleMesh& mesh, FacetId facet, const Vec3& p) {
  const Facet& f = mesh.facet(facet);
  const Vec3& a = mesh.vertex(f.vertices[0]);
  const Vec3 v0 = mesh.vertex(f.vertices[1]) - a;
  const Vec3 v1 = mesh.vertex(f.vertices[2]) - a;
  const Vec3 v2 = p - a;
  const double d00 = dot(v0, v0), d01 = dot(v0, v1), d11 = dot(v1, v1);
  const double d20 = dot(v2, v0), d21 = dot(v2, v1);
  const double denom = d00 * d11 - d01 * d01;
  const double bv = (d11 * d20 - d01 * d21) / denom;
  const double bw = (d00 * d21 - d01 * d20) / denom;
  return std::min({1.0 - bv - bw, bv, bw});
}

std::vector<Segment> facet_relevant_segments(const TriangleMesh& mesh, FacetId facet,
                                             const PerimeterList& perimeter, double radius) {
  std::vector<Segment> out;
  const std::size_t n = perimeter.size;
  if (perimeter.crossing_count() == 0) return out;

  // outside[k]: the stretch from entry k to entry k+1 lies outside the slicyl
  std::array<bool, 9> outside{};
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 mid = lerp(perimeter[k].position, perimeter[(k + 1) % n].position, 0.5);
    outside[k] = axis_distance(mid) >= radius;
  }

  std::size_t start = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (perimeter[k].is_crossing() && outside[k]) {
      start = k;
      break;
    }
  }
  if (start == n) return out;

  const Vec3& normal = mesh.facet(facet).normal;
  const auto arc_inside = [&](const Vec3& p, const Vec3& q, double sweep) {
    for (const double frac : {0.25, 0.5, 0.75}) {
      if (min_barycentric(mesh, facet, arc_point_by_angle(normal, p, q, radius, sweep, frac)) <
          -kBarycentricTolerance) {
        return false;
      }
    }
    return true;
  };

  std::optional<std::size_t> last;
  for (std::size_t j = start; j <= start + n; ++j) {
    const std::size_t idx = j % n;
    const PerimeterEntry& current = perimeter[idx];
    if (!current.is_crossing()) continue;

    const bool walked_outside = outside[(idx + n - 1) % n];
    if (last && walked_outside && j > start) {
      const PerimeterEntry& first = perimeter[*last];
      const double short_sweep =
          wrap_angle(axis_angle(current.position) - axis_angle(first.position));
      double sweep = short_sweep;
      if (std::abs(normal.x) < kParallelPlane) {
        if (std::abs(short_sweep) > 1e-6) {
          throw Error(ErrorCode::ArcOracle,
                      "facet " + std::to_string(facet) +
                          ": segment joins two different axis-parallel lines");
        }
      } else if (!arc_inside(first.position, current.position, short_sweep)) {
        sweep = short_sweep - std::copysign(2.0 * std::numbers::pi, short_sweep);
        if (!arc_inside(first.position, current.position, sweep)) {
          throw Error(ErrorCode::ArcOracle, "facet " + std::to_string(facet) +
                                                ": no arc between the paired crossings lies "
                                                "inside the facet");
        }
      }
      out.push_back({facet, {first.ref, current.ref}, sweep});
      last.reset();
    }
    if (j < start + n && outside[idx]) last = idx;
  }
  return out;
}

bool facet_crosses_axis(const TriangleMesh& mesh, FacetId facet) {
  const Facet& f = mesh.facet(facet);
  const Vec3& a = mesh.vertex(f.vertices[0]);
  const Vec3& b = mesh.vertex(f.vertices[1]);
  const Vec3& c = mesh.vertex(f.vertices[2]);
  // orientation of the origin against each projected edge
  const double o0 = cross2(b.y - a.y, b.z - a.z, -a.y, -a.z);
  const double o1 = cross2(c.y - b.y, c.z - b.z, -b.y, -b.z);
  const double o2 = cross2(a.y - c.y, a.z - c.z, -c.y, -c.z);
  if (o0 == 0.0 && o1 == 0.0 && o2 == 0.0) {
    const auto [ylo, yhi] = std::minmax({a.y, b.y, c.y});
    const auto [zlo, zhi] = std::minmax({a.z, b.z, c.z});
    return ylo <= 0.0 && 0.0 <= yhi && zlo <= 0.0 && 0.0 <= zhi;
  }
  return (o0 >= 0.0 && o1 >= 0.0 && o2 >= 0.0) || (o0 <= 0.0 && o1 <= 0.0 && o2 <= 0.0);
}

std::vector<FacetId> axis_crossing_facets(const TriangleMesh& mesh) {
  std::vector<FacetId> out;
  for (FacetId f = 0; f < mesh.facet_count(); ++f) {
    if (facet_crosses_axis(mesh, f)) out.push_back(f);
  }
  return out;
}

void require_axial_void(const TriangleMesh& mesh) {
  const auto crossing = axis_crossing_facets(mesh);
  if (crossing.empty()) return;
  std::vector<std::string> details;
  for (FacetId f : crossing) details.push_back("facet " + std::to_string(f));
  throw Error(ErrorCode::AxisCrossingFacet,
              std::to_string(crossing.size()) +
                  " facet(s) cross the x-axis; the model needs an axial void along the skewer",
              std::move(details));
}

bool interior_pass(const TriangleMesh& mesh, FacetId facet, double radius) {
  const Facet& f = mesh.facet(facet);
  for (EdgeId e : mesh.facet_edges(facet)) {
    const Edge& edge = mesh.edge(e);
    if (edge_cylinder_intersections(mesh.vertex(edge.endpoints[0]), mesh.vertex(edge.endpoints[1]),
                                    radius)
            .count > 0) {
      return false;
    }
  }
  const Vec3* v[3] = {&mesh.vertex(f.vertices[0]), &mesh.vertex(f.vertices[1]),
                      &mesh.vertex(f.vertices[2])};
  const double area =
      cross2(v[1]->y - v[0]->y, v[1]->z - v[0]->z, v[2]->y - v[0]->y, v[2]->z - v[0]->z);
  if (area == 0.0) return false;
  for (int k = 0; k < 3; ++k) {
    const Vec3& a = *v[k];
    const Vec3& b = *v[(k + 1) % 3];
    const double side = cross2(b.y - a.y, b.z - a.z, -a.y, -a.z);
    if (side * area <= 0.0) return false;  // origin not strictly inside
    if (std::abs(side) / std::hypot(b.y - a.y, b.z - a.z) < radius) return false;
  }
  return true;
}

LayerSlice slice_layer(const TriangleMesh& mesh, std::span<const FacetId> facets, double radius) {
  LayerSlice layer;
  layer.radius = radius;
  std::unordered_map<EdgeId, EdgeHits> memo;
  memo.reserve(facets.size() * 2);

  for (const FacetId f : facets) {
    if (facet_crosses_axis(mesh, f)) {
      throw Error(ErrorCode::AxisCrossingFacet,
                  "facet " + std::to_string(f) + " crosses the x-axis",
                  {"facet " + std::to_string(f)});
    }
    const auto& edges = mesh.facet_edges(f);
    std::array<EdgeHits, 3> hits;
    bool any = false;
    for (int k = 0; k < 3; ++k) {
      auto it = memo.find(edges[k]);
      if (it == memo.end()) {
        const Edge& e = mesh.edge(edges[k]);
        const EdgeCrossings xs = edge_cylinder_intersections(
            mesh.vertex(e.endpoints[0]), mesh.vertex(e.endpoints[1]), radius);
        EdgeHits h;
        for (std::uint8_t j = 0; j < xs.count; ++j) {
          const auto index = static_cast<std::uint32_t>(layer.points.size());
          layer.points.push_back({PointId::on_edge(edges[k], xs.items[j].root), xs.items[j].position, xs.items[j].t});
          h.items[h.count++] = {index, xs.items[j].t, xs.items[j].position};
        }
        it = memo.emplace(edges[k], h).first;
      }
      hits[k] = it->second;
      any = any || hits[k].count > 0;
    }
    if (!any) continue;
    const PerimeterList perimeter = facet_perimeter_list(mesh, f, hits);
    for (const Segment& s : facet_relevant_segments(mesh, f, perimeter, radius)) {
      layer.segments.push_back(s);
    }
  }

  // canonical point order by id, independent of facet visiting order
  std::vector<std::uint32_t> order(layer.points.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return layer.points[a].id < layer.points[b].id;
  });
  std::vector<std::uint32_t> rank(order.size());
  std::vector<IntersectionPoint> sorted;
  sorted.reserve(order.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = i;
    sorted.push_back(layer.points[order[i]]);
  }
  layer.points = std::move(sorted);
  for (Segment& s : layer.segments) {
    s.ends = {rank[s.ends[0]], rank[s.ends[1]]};
  }
  std::sort(layer.segments.begin(), layer.segments.end(), [](const Segment& a, const Segment& b) {
    return std::tie(a.facet, a.ends) < std::tie(b.facet, b.ends);
  });
  return layer;
}

LayerSlice subdivide_long_arcs(const TriangleMesh& mesh, LayerSlice slice, double max_sweep) {
  if (!(max_sweep > 0.0)) return slice;
  std::vector<Segment> segments;
  segments.reserve(slice.segments.size());
  std::uint64_t serial = 0;
  for (const Segment& s : slice.segments) {
    const double span = std::abs(s.sweep);
    if (span <= max_sweep) {
      segments.push_back(s);
      continue;
    }
    const auto pieces = static_cast<std::uint32_t>(std::ceil(span / max_sweep));
    const Vec3 from = slice.points[s.ends[0]].position;
    const Vec3 to = slice.points[s.ends[1]].position;
    const Vec3& normal = mesh.facet(s.facet).normal;
    std::uint32_t prev = s.ends[0];
    for (std::uint32_t k = 1; k < pieces; ++k) {
      const double frac = static_cast<double>(k) / pieces;
      const auto index = static_cast<std::uint32_t>(slice.points.size());
      slice.points.push_back({PointId::synthetic(serial++),
                              arc_point_by_angle(normal, from, to, slice.radius, s.sweep, frac),
                              frac});
      segments.push_back({s.facet, {prev, index}, s.sweep / pieces});
      prev = index;
    }
    segments.push_back({s.facet, {prev, s.ends[1]}, s.sweep / pieces});
  }
  slice.segments = std::move(segments);
  return slice;
}

}  // namespace slicyl
