#include "slicyl/stl.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <unordered_map>

#include "slicyl/error.hpp"

namespace slicyl {

namespace {

constexpr std::size_t kHeaderBytes = 80;
constexpr std::size_t kPreambleBytes = 84;
constexpr std::size_t kRecordBytes = 50;

std::uint32_t load_u32_le(const char* p) {
  const auto* b = reinterpret_cast<const unsigned char*>(p);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void store_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

float load_f32_le(const char* p) { return std::bit_cast<float>(load_u32_le(p)); }

void store_f32_le(std::string& out, float v) { store_u32_le(out, std::bit_cast<std::uint32_t>(v)); }

std::optional<std::uint64_t> binary_length_for(std::string_view bytes) {
  if (bytes.size() < kPreambleBytes) return std::nullopt;
  const std::uint64_t count = load_u32_le(bytes.data() + kHeaderBytes);
  return kPreambleBytes + kRecordBytes * count;
}

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  std::string_view next() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void skip_line() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  void expect(std::string_view keyword) {
    const std::string_view tok = next();
    if (tok != keyword) {
      throw Error(ErrorCode::Parse, "expected '" + std::string(keyword) + "' but found '" +
                                        std::string(tok) + "'");
    }
  }

  float number() {
    const std::string_view tok = next();
    float value = 0.0f;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (tok.empty() || ec != std::errc{} || ptr != last) {
      throw Error(ErrorCode::Parse, "malformed number '" + std::string(tok) + "'");
    }
    return value;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct VertexKey {
  std::array<std::uint32_t, 3> bits;
  bool operator==(const VertexKey&) const = default;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint32_t b : k.bits) {
      h ^= b;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

VertexKey key_of(const std::array<float, 3>& p) {
  VertexKey k{};
  for (int i = 0; i < 3; ++i) {
    const float c = p[i] == 0.0f ? 0.0f : p[i];  // -0 and +0 are one position
    k.bits[i] = std::bit_cast<std::uint32_t>(c);
  }
  return k;
}

}  // namespace

StlFormat detect_format(std::string_view bytes) {
  if (bytes.empty()) throw Error(ErrorCode::EmptyFile, "STL input is empty");
  if (const auto expected = binary_length_for(bytes); expected && *expected == bytes.size()) {
    return StlFormat::Binary;
  }
  if (bytes.starts_with("solid")) {
    try {
      parse_ascii_stl(bytes);
      return StlFormat::Ascii;
    } catch (const Error&) {
      // falls through to binary, whose length check reports the problem
    }
  }
  return StlFormat::Binary;
}

std::vector<RawFacet> parse_binary_stl(std::string_view bytes) {
  if (bytes.size() < kPreambleBytes) {
    throw Error(ErrorCode::Truncated, "binary STL shorter than the 84-byte preamble (" +
                                          std::to_string(bytes.size()) + " bytes)");
  }
  const std::uint32_t count = load_u32_le(bytes.data() + kHeaderBytes);
  const std::uint64_t expected = kPreambleBytes + kRecordBytes * static_cast<std::uint64_t>(count);
  if (bytes.size() != expected) {
    throw Error(ErrorCode::Truncated, "binary STL declares " + std::to_string(count) +
                                          " facets (" + std::to_string(expected) +
                                          " bytes) but has " + std::to_string(bytes.size()));
  }

  std::vector<RawFacet> facets(count);
  const char* p = bytes.data() + kPreambleBytes;
  for (RawFacet& f : facets) {
    for (int i = 0; i < 3; ++i) f.normal[i] = load_f32_le(p + 4 * i);
    for (int v = 0; v < 3; ++v) {
      for (int i = 0; i < 3; ++i) f.vertices[v][i] = load_f32_le(p + 12 + 12 * v + 4 * i);
    }
    p += kRecordBytes;  // trailing 2 attribute bytes ignored
  }
  return facets;
}

std::vector<RawFacet> parse_ascii_stl(std::string_view text) {
  Tokenizer tok(text);
  tok.expect("solid");
  tok.skip_line();  // solid name, possibly empty or multi-word

  std::vector<RawFacet> facets;
  for (;;) {
    const std::string_view word = tok.next();
    if (word == "endsolid") {
      tok.skip_line();
      if (!tok.at_end()) throw Error(ErrorCode::Parse, "trailing content after endsolid");
      return facets;
    }
    if (word != "facet") {
      throw Error(ErrorCode::Parse, word.empty() ? std::string("missing endsolid")
                                                 : "unexpected token '" + std::string(word) + "'");
    }
    RawFacet f;
    tok.expect("normal");
    for (float& c : f.normal) c = tok.number();
    tok.expect("outer");
    tok.expect("loop");
    for (auto& v : f.vertices) {
      tok.expect("vertex");
      for (float& c : v) c = tok.number();
    }
    tok.expect("endloop");
    tok.expect("endfacet");
    facets.push_back(f);
  }
}

std::vector<RawFacet> parse_stl(std::string_view bytes) {
  return detect_format(bytes) == StlFormat::Ascii ? parse_ascii_stl(bytes)
                                                  : parse_binary_stl(bytes);
}

std::string serialize_binary_stl(std::span<const RawFacet> facets) {
  std::string out(kHeaderBytes, '\0');
  out.reserve(kPreambleBytes + kRecordBytes * facets.size());
  store_u32_le(out, static_cast<std::uint32_t>(facets.size()));
  for (const RawFacet& f : facets) {
    for (float c : f.normal) store_f32_le(out, c);
    for (const auto& v : f.vertices) {
      for (float c : v) store_f32_le(out, c);
    }
    out.push_back('\0');
    out.push_back('\0');
  }
  return out;
}

std::vector<RawFacet> to_raw_facets(const TriangleMesh& mesh) {
  std::vector<RawFacet> out;
  out.reserve(mesh.facet_count());
  for (const Facet& f : mesh.facets()) {
    RawFacet r;
    r.normal = {static_cast<float>(f.normal.x), static_cast<float>(f.normal.y),
                static_cast<float>(f.normal.z)};
    for (int v = 0; v < 3; ++v) {
      const Vec3& p = mesh.vertex(f.vertices[v]);
      r.vertices[v] = {static_cast<float>(p.x), static_cast<float>(p.y), static_cast<float>(p.z)};
    }
    out.push_back(r);
  }
  return out;
}

WeldResult weld_and_index(std::span<const RawFacet> facets) {
  std::unordered_map<VertexKey, VertexId, VertexKeyHash> index;
  index.reserve(facets.size());
  std::vector<Vec3> vertices;
  std::vector<std::array<VertexId, 3>> triangles;
  std::vector<Vec3> stored_normals;
  triangles.reserve(facets.size());

  WeldResult result;
  for (const RawFacet& f : facets) {
    std::array<VertexId, 3> tri{};
    for (int v = 0; v < 3; ++v) {
      const auto& c = f.vertices[v];
      if (!std::isfinite(c[0]) || !std::isfinite(c[1]) || !std::isfinite(c[2])) {
        throw Error(ErrorCode::Parse, "non-finite vertex coordinate");
      }
      auto [it, inserted] = index.try_emplace(key_of(c), static_cast<VertexId>(vertices.size()));
      if (inserted) vertices.push_back({c[0] == 0.0f ? 0.0 : c[0], c[1] == 0.0f ? 0.0 : c[1],
                                        c[2] == 0.0f ? 0.0 : c[2]});
      tri[v] = it->second;
    }
    const bool repeated = tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2];
    if (repeated || norm(cross(vertices[tri[1]] - vertices[tri[0]],
                               vertices[tri[2]] - vertices[tri[0]])) == 0.0) {
      ++result.degenerate_facets;
      continue;
    }
    triangles.push_back(tri);
    stored_normals.push_back({f.normal[0], f.normal[1], f.normal[2]});
  }

  result.mesh = TriangleMesh::from_indexed(std::move(vertices), triangles);
  for (std::size_t i = 0; i < stored_normals.size(); ++i) {
    const Vec3 stored = normalized(stored_normals[i]);
    if (stored == Vec3{}) continue;
    if (dot(stored, result.mesh.facet(static_cast<FacetId>(i)).normal) < 1.0 - 1e-6) {
      ++result.normal_overrides;
    }
  }
  return result;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "short write to '" + path.string() + "'");
}

WeldResult load_stl(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  const auto raw = parse_stl(bytes);
  return weld_and_index(raw);
}

void save_binary_stl(const std::filesystem::path& path, const TriangleMesh& mesh) {
  write_file(path, serialize_binary_stl(to_raw_facets(mesh)));
}

}  // namespace slicyl
