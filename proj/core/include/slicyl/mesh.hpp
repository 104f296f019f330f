#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slicyl/geometry.hpp"

namespace slicyl {

using VertexId = std::uint32_t;
using FacetId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Facet {
  std::array<VertexId, 3> vertices{};
  Vec3 normal;  // unit, right-hand rule over `vertices`
};

/// Undirected edge. `endpoints[0]` is the lexicographically smaller position,
/// so every facet sees the same parameterization of the edge.
struct Edge {
  std::array<VertexId, 2> endpoints{};
  std::vector<FacetId> facets;
};

/// Welded, indexed triangle mesh with undirected edge adjacency. Immutable once
/// built; geometry-only changes go through `with_vertices`.
class TriangleMesh {
 public:
  TriangleMesh() = default;

  /// Builds normals (right-hand rule) and the canonical edge table from an
  /// indexed triangle list. Triangles must reference distinct vertices.
  static TriangleMesh from_indexed(std::vector<Vec3> vertices,
                                   std::span<const std::array<VertexId, 3>> triangles);

  const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Edge ids of facet f in perimeter order: (v0,v1), (v1,v2), (v2,v0).
  const std::array<EdgeId, 3>& facet_edges(FacetId f) const { return facet_edges_[f]; }

  const Vec3& vertex(VertexId v) const { return vertices_[v]; }
  const Facet& facet(FacetId f) const { return facets_[f]; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t facet_count() const noexcept { return facets_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return facets_.empty(); }

  /// Same topology with replaced vertex positions and facet normals. Edge
  /// endpoint order is re-canonicalized against the new positions.
  TriangleMesh with_geometry(std::vector<Vec3> vertices, std::vector<Vec3> normals) const;

 private:
  void canonicalize_edges();

  std::vector<Vec3> vertices_;
  std::vector<Facet> facets_;
  std::vector<Edge> edges_;
  std::vector<std::array<EdgeId, 3>> facet_edges_;
};

/// Unit normal of the triangle (a, b, c) by the right-hand rule; zero vector
/// for degenerate triangles.
Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c);

enum class EdgeDefect { Boundary, Overshared, Inconsistent };

struct EdgeIssue {
  EdgeId edge = 0;
  EdgeDefect defect = EdgeDefect::Boundary;
  std::vector<FacetId> facets;
};

struct ManifoldReport {
  std::vector<EdgeIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
  std::size_t count(EdgeDefect defect) const;
  /// One line per offending edge, e.g. "edge 7 (3-9): boundary, facets [2]".
  std::vector<std::string> describe(const TriangleMesh& mesh) const;
};

/// Closed orientable 2-manifold check: every edge has exactly two facets and
/// they traverse it in opposite directions.
ManifoldReport validate_manifold(const TriangleMesh& mesh);

/// Throws E_NON_MANIFOLD carrying the report lines when `report` is not ok.
void require_manifold(const TriangleMesh& mesh, const ManifoldReport& report);

}  // namespace slicyl
