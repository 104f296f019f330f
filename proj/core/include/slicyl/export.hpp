#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "slicyl/pipeline.hpp"

namespace slicyl {

/// Version 1 layer document:
/// { "version": 1, "mandrel_radius", "layer_thickness",
///   "layers": [ { "index", "radius",
///                 "contours": [ { "kind": "I"|"II", "winding",
///                                 "points": [[x,y,z],...], "unrolled": [[x,u],...] } ],
///                 "type_II_pairs": [[a,b],...] } ] }
/// Deterministic for a given result; carries no timestamp.
std::string layers_to_json(const SliceResult& result);

/// One layer on the developed cylinder: horizontal u in [0, 2 pi r), vertical x.
/// Type I contours are closed paths; type II rings are open paths spanning the
/// full width, with dashed seam markers at u = 0 and u = 2 pi r.
std::string layer_to_svg(const LayerResult& layer, const BoundingCylinder& bounding);

/// Writes <stem>_layer_<index>.svg next to `base` for every layer and returns
/// the paths written.
std::vector<std::filesystem::path> write_svg_layers(const SliceResult& result,
                                                    const std::filesystem::path& base);

}  // namespace slicyl
