#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slicyl {

enum class ErrorCode {
  EmptyFile,
  Truncated,
  Parse,
  Io,
  NonManifold,
  ZeroAxis,
  DecollideFail,
  NoLayers,
  AxisCrossingFacet,
  ArcOracle,
  InteriorPass,
  Degree,
  OpenChain,
  AmbiguousWinding,
  OddTypeII,
  Param,
  DegeneratePlane,
};

/// Stable identifier such as "E_TRUNCATED".
std::string_view error_name(ErrorCode code);

/// Every module reports failures through this exception; `details` carries
/// per-item diagnostics (offending edges, facets, ...) for machine-readable
/// error records.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace slicyl
