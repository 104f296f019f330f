#include "slicyl/error.hpp"

namespace slicyl {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyFile: return "E_EMPTY_FILE";
    case ErrorCode::Truncated: return "E_TRUNCATED";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::Io: return "E_IO";
    case ErrorCode::NonManifold: return "E_NON_MANIFOLD";
    case ErrorCode::ZeroAxis: return "E_ZERO_AXIS";
    case ErrorCode::DecollideFail: return "E_DECOLLIDE_FAIL";
    case ErrorCode::NoLayers: return "E_NO_LAYERS";
    case ErrorCode::AxisCrossingFacet: return "E_AXIS_CROSSING_FACET";
    case ErrorCode::ArcOracle: return "E_ARC_ORACLE";
    case ErrorCode::InteriorPass: return "E_INTERIOR_PASS";
    case ErrorCode::Degree: return "E_DEGREE";
    case ErrorCode::OpenChain: return "E_OPEN_CHAIN";
    case ErrorCode::AmbiguousWinding: return "E_AMBIGUOUS_WINDING";
    case ErrorCode::OddTypeII: return "E_ODD_TYPE_II";
    case ErrorCode::Param: return "E_PARAM";
    case ErrorCode::DegeneratePlane: return "E_DEGENERATE_PLANE";
  }
  return "E_UNKNOWN";
}

}  // namespace slicyl
