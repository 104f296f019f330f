#include "slicyl/mesh.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include "slicyl/error.hpp"

namespace slicyl {

namespace {

std::uint64_t undirected_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// +1 if facet f walks the edge from endpoints[0] to endpoints[1], -1 otherwise.
int traversal_sign(const Facet& f, const Edge& e) {
  for (int k = 0; k < 3; ++k) {
    const VertexId a = f.vertices[k];
    const VertexId b = f.vertices[(k + 1) % 3];
    if (a == e.endpoints[0] && b == e.endpoints[1]) return 1;
    if (a == e.endpoints[1] && b == e.endpoints[0]) return -1;
  }
  return 0;
}

}  // namespace

Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c) {
  return normalized(cross(b - a, c - a));
}

TriangleMesh TriangleMesh::from_indexed(std::vector<Vec3> vertices,
                                        std::span<const std::array<VertexId, 3>> triangles) {
  TriangleMesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.facets_.reserve(triangles.size());
  mesh.facet_edges_.reserve(triangles.size());

  std::unordered_map<std::uint64_t, EdgeId> edge_of;
  edge_of.reserve(triangles.size() * 2);

  for (const auto& tri : triangles) {
    const auto fid = static_cast<FacetId>(mesh.facets_.size());
    const Vec3 n = triangle_normal(mesh.vertices_[tri[0]], mesh.vertices_[tri[1]],
                                   mesh.vertices_[tri[2]]);
    mesh.facets_.push_back({tri, n});

    std::array<EdgeId, 3> fe{};
    for (int k = 0; k < 3; ++k) {
      const VertexId a = tri[k];
      const VertexId b = tri[(k + 1) % 3];
      auto [it, inserted] =
          edge_of.try_emplace(undirected_key(a, b), static_cast<EdgeId>(mesh.edges_.size()));
      if (inserted) mesh.edges_.push_back({{a, b}, {}});
      mesh.edges_[it->second].facets.push_back(fid);
      fe[k] = it->second;
    }
    mesh.facet_edges_.push_back(fe);
  }
  mesh.canonicalize_edges();
  return mesh;
}

void TriangleMesh::canonicalize_edges() {
  for (Edge& e : edges_) {
    if (lex_less(vertices_[e.endpoints[1]], vertices_[e.endpoints[0]])) {
      std::swap(e.endpoints[0], e.endpoints[1]);
    }
  }
}

TriangleMesh TriangleMesh::with_geometry(std::vector<Vec3> vertices,
                                         std::vector<Vec3> normals) const {
  TriangleMesh out = *this;
  out.vertices_ = std::move(vertices);
  for (std::size_t f = 0; f < out.facets_.size(); ++f) out.facets_[f].normal = normals[f];
  out.canonicalize_edges();
  return out;
}

std::size_t ManifoldReport::count(EdgeDefect defect) const {
  return static_cast<std::size_t>(std::count_if(
      issues.begin(), issues.end(), [&](const EdgeIssue& i) { return i.defect == defect; }));
}

std::vector<std::string> ManifoldReport::describe(const TriangleMesh& mesh) const {
  std::vector<std::string> lines;
  lines.reserve(issues.size());
  for (const EdgeIssue& issue : issues) {
    const Edge& e = mesh.edge(issue.edge);
    std::string line = "edge " + std::to_string(issue.edge) + " (" +
                       std::to_string(e.endpoints[0]) + "-" + std::to_string(e.endpoints[1]) +
                       "): ";
    switch (issue.defect) {
      case EdgeDefect::Boundary: line += "boundary"; break;
      case EdgeDefect::Overshared: line += "overshared"; break;
      case EdgeDefect::Inconsistent: line += "inconsistent orientation"; break;
    }
    line += ", facets [";
    for (std::size_t i = 0; i < issue.facets.size(); ++i) {
      if (i) line += ",";
      line += std::to_string(issue.facets[i]);
    }
    line += "]";
    lines.push_back(std::move(line));
  }
  return lines;
}

ManifoldReport validate_manifold(const TriangleMesh& mesh) {
  ManifoldReport report;
  for (EdgeId id = 0; id < mesh.edge_count(); ++id) {
    const Edge& e = mesh.edge(id);
    if (e.facets.size() < 2) {
      report.issues.push_back({id, EdgeDefect::Boundary, e.facets});
    } else if (e.facets.size() > 2) {
      report.issues.push_back({id, EdgeDefect::Overshared, e.facets});
    } else {
      const int s0 = traversal_sign(mesh.facet(e.facets[0]), e);
      const int s1 = traversal_sign(mesh.facet(e.facets[1]), e);
      if (s0 + s1 != 0) report.issues.push_back({id, EdgeDefect::Inconsistent, e.facets});
    }
  }
  return report;
}

void require_manifold(const TriangleMesh& mesh, const ManifoldReport& report) {
  if (report.ok()) return;
  throw Error(ErrorCode::NonManifold,
              "mesh is not a closed orientable 2-manifold: " +
                  std::to_string(report.issues.size()) + " offending edge(s)",
              report.describe(mesh));
}

}  // namespace slicyl
