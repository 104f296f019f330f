#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "slicyl/mesh.hpp"
#include "slicyl/stl.hpp"

namespace slicyl::testing {

inline RawFacet raw(std::array<float, 3> n, std::array<float, 3> a, std::array<float, 3> b,
                    std::array<float, 3> c) {
  return RawFacet{n, {a, b, c}};
}

/// Closed tetrahedron (0,0,0),(1,0,0),(0,1,0),(0,0,1) with outward winding.
inline std::vector<RawFacet> tetrahedron_facets() {
  return {raw({0, 0, -1}, {0, 0, 0}, {0, 1, 0}, {1, 0, 0}),
          raw({0, -1, 0}, {0, 0, 0}, {1, 0, 0}, {0, 0, 1}),
          raw({-1, 0, 0}, {0, 0, 0}, {0, 0, 1}, {0, 1, 0}),
          raw({0.57735f, 0.57735f, 0.57735f}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1})};
}

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

inline void put_f32(std::string& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

/// Hand-assembled binary STL: `header` (padded to 80 bytes), declared count,
/// then the given records.
inline std::string binary_stl(const std::vector<RawFacet>& facets, std::uint32_t declared,
                              std::string header = {}) {
  header.resize(80, '\0');
  std::string out = header;
  put_u32(out, declared);
  for (const RawFacet& f : facets) {
    for (float v : f.normal) put_f32(out, v);
    for (const auto& p : f.vertices)
      for (float v : p) put_f32(out, v);
    out.push_back('\0');
    out.push_back('\0');
  }
  return out;
}

inline TriangleMesh mesh_of(std::vector<Vec3> vertices,
                            std::vector<std::array<VertexId, 3>> triangles) {
  return TriangleMesh::from_indexed(std::move(vertices), triangles);
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("slicyl_test_" + std::to_string(rd()) + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace slicyl::testing
