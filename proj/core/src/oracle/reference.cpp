#include "slicyl/oracle/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>

#include "slicyl/error.hpp"

namespace slicyl::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

LayerSlice naive_slice_layer(const TriangleMesh& mesh, double radius) {
  LayerSlice layer;
  layer.radius = radius;
  std::vector<EdgeHits> memo(mesh.edge_count());
  std::vector<bool> done(mesh.edge_count(), false);

  for (FacetId f = 0; f < mesh.facet_count(); ++f) {
    if (facet_crosses_axis(mesh, f)) {
      throw Error(ErrorCode::AxisCrossingFacet, "facet " + std::to_string(f) + " crosses the x-axis",
                  {"facet " + std::to_string(f)});
    }
    const auto& edges = mesh.facet_edges(f);
    std::array<EdgeHits, 3> hits;
    bool any = false;
    for (int k = 0; k < 3; ++k) {
      const EdgeId e = edges[k];
      if (!done[e]) {
        const Edge& edge = mesh.edge(e);
        const EdgeCrossings xs = edge_cylinder_intersections(
            mesh.vertex(edge.endpoints[0]), mesh.vertex(edge.endpoints[1]), radius);
        for (const EdgeCrossing& x : xs.view()) {
          const auto index = static_cast<std::uint32_t>(layer.points.size());
          layer.points.push_back({PointId::on_edge(e, x.root), x.position, x.t});
          memo[e].items[memo[e].count++] = {index, x.t, x.position};
        }
        done[e] = true;
      }
      hits[k] = memo[e];
      any = any || hits[k].count > 0;
    }
    if (!any) continue;
    const PerimeterList perimeter = facet_perimeter_list(mesh, f, hits);
    for (const Segment& s : facet_relevant_segments(mesh, f, perimeter, radius)) {
      layer.segments.push_back(s);
    }
  }

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
  for (Segment& s : layer.segments) s.ends = {rank[s.ends[0]], rank[s.ends[1]]};
  std::sort(layer.segments.begin(), layer.segments.end(), [](const Segment& a, const Segment& b) {
    return std::tie(a.facet, a.ends) < std::tie(b.facet, b.ends);
  });
  return layer;
}

Plane facet_plane(const TriangleMesh& mesh, FacetId facet) {
  const Facet& f = mesh.facet(facet);
  const Vec3& a = mesh.vertex(f.vertices[0]);
  const Vec3& b = mesh.vertex(f.vertices[1]);
  const Vec3& c = mesh.vertex(f.vertices[2]);
  const Vec3 n = normalized(cross(b - a, c - a));
  return {n, dot(n, (a + b + c) / 3.0)};
}

Vec3 arc_point(const Plane& plane, double radius, const Vec3& p, const Vec3& q, double fraction,
               ArcBranch branch) {
  const Vec3 n = normalized(plane.normal);
  const double c = plane.offset / norm(plane.normal);
  if (std::abs(n.x) <= 1e-12 && std::abs(c) <= 1e-12) {
    throw Error(ErrorCode::DegeneratePlane, "plane contains the x-axis");
  }
  if (fraction <= 0.0) return p;
  if (fraction >= 1.0) return q;
  if (std::abs(n.x) <= 1e-12) return lerp(p, q, fraction);

  const auto at = [&](double alpha) {
    const double y = radius * std::cos(alpha);
    const double z = radius * std::sin(alpha);
    return Vec3{(c - n.y * y - n.z * z) / n.x, y, z};
  };
  const auto speed = [&](double alpha) {
    const double dx = radius * (n.y * std::sin(alpha) - n.z * std::cos(alpha)) / n.x;
    return std::sqrt(radius * radius + dx * dx);
  };
  // 5-point Gauss-Legendre over 16 panels
  static constexpr std::array<double, 5> kNodes{0.0, -0.5384693101056831, 0.5384693101056831,
                                                -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> kWeights{0.5688888888888889, 0.4786286704993665,
                                                  0.4786286704993665, 0.2369268850561891,
                                                  0.2369268850561891};
  const auto length = [&](double a0, double a1) {
    constexpr int kPanels = 16;
    const double h = (a1 - a0) / kPanels;
    double sum = 0.0;
    for (int i = 0; i < kPanels; ++i) {
      const double mid = a0 + (i + 0.5) * h;
      for (std::size_t k = 0; k < kNodes.size(); ++k) sum += kWeights[k] * speed(mid + 0.5 * h * kNodes[k]);
    }
    return 0.5 * h * sum;
  };

  const double a0 = std::atan2(p.z, p.y);
  double span = std::atan2(q.z, q.y) - a0;
  span = std::remainder(span, kTwoPi);  // shorter, in [-pi, pi]
  if (branch == ArcBranch::Positive && span <= 0.0) span += kTwoPi;
  if (branch == ArcBranch::Negative && span >= 0.0) span -= kTwoPi;

  const double total = std::abs(length(a0, a0 + span));
  const double target = fraction * total;
  // Newton on the arc length, safeguarded by bisection
  double lo = 0.0;
  double hi = 1.0;
  double t = fraction;
  for (int it = 0; it < 60; ++it) {
    const double f = std::abs(length(a0, a0 + t * span)) - target;
    if (std::abs(f) <= 1e-14 * total) break;
    (f < 0.0 ? lo : hi) = t;
    const double step = f / (speed(a0 + t * span) * std::abs(span));
    const double next = t - step;
    t = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
  }
  return at(a0 + t * span);
}

std::vector<std::uint64_t> canonical_cycle(const Contour& contour) {
  std::vector<std::uint64_t> ids;
  ids.reserve(contour.ids.size());
  for (const PointId& id : contour.ids) ids.push_back(id.value());
  if (ids.size() < 2) return ids;
  const auto first = std::min_element(ids.begin(), ids.end());
  std::rotate(ids.begin(), first, ids.end());
  if (ids.back() < ids[1]) std::reverse(ids.begin() + 1, ids.end());
  return ids;
}

std::vector<std::vector<std::uint64_t>> canonical_contour_set(std::span<const Contour> contours) {
  std::vector<std::vector<std::uint64_t>> out;
  out.reserve(contours.size());
  for (const Contour& c : contours) out.push_back(canonical_cycle(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::array<std::uint64_t, 3>> segment_multiset(const LayerSlice& layer) {
  std::vector<std::array<std::uint64_t, 3>> out;
  out.reserve(layer.segments.size());
  for (const Segment& s : layer.segments) {
    const std::uint64_t a = layer.points[s.ends[0]].id.value();
    const std::uint64_t b = layer.points[s.ends[1]].id.value();
    out.push_back({s.facet, std::min(a, b), std::max(a, b)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace slicyl::oracle
