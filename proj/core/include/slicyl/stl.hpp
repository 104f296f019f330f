#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slicyl/mesh.hpp"

namespace slicyl {

/// One STL record exactly as stored: normal then three vertices, single precision.
struct RawFacet {
  std::array<float, 3> normal{};
  std::array<std::array<float, 3>, 3> vertices{};

  friend bool operator==(const RawFacet&, const RawFacet&) = default;
};

enum class StlFormat { Binary, Ascii };

/// Binary wins whenever the byte length is exactly 84 + 50 * count, even if
/// the header happens to start with "solid". Otherwise ASCII is chosen only
/// when the text starts with "solid" and parses.
StlFormat detect_format(std::string_view bytes);

std::vector<RawFacet> parse_binary_stl(std::string_view bytes);
std::vector<RawFacet> parse_ascii_stl(std::string_view text);

/// Detects the format and parses accordingly.
std::vector<RawFacet> parse_stl(std::string_view bytes);

/// 80-byte zero header, little-endian count, 50-byte records, zero attributes.
std::string serialize_binary_stl(std::span<const RawFacet> facets);
std::vector<RawFacet> to_raw_facets(const TriangleMesh& mesh);

struct WeldResult {
  TriangleMesh mesh;
  std::size_t degenerate_facets = 0;
  /// Facets whose stored (non-zero) normal disagreed with the winding.
  std::size_t normal_overrides = 0;
};

/// Merges bitwise-identical vertices (signed zeros are treated as equal),
/// drops zero-area facets and re-derives every normal from the winding.
WeldResult weld_and_index(std::span<const RawFacet> facets);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// read_file + parse_stl + weld_and_index.
WeldResult load_stl(const std::filesystem::path& path);
void save_binary_stl(const std::filesystem::path& path, const TriangleMesh& mesh);

}  // namespace slicyl
