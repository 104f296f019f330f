#include "slicyl/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "slicyl/error.hpp"

namespace slicyl {

std::size_t LayerResult::count(ContourKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(contours.contours.begin(), contours.contours.end(),
                    [&](const Contour& c) { return c.kind == kind; }));
}

std::vector<std::string> interior_pass_report(const TriangleMesh& mesh,
                                              std::span<const FacetId> facets,
                                              std::span<const double> radii) {
  std::vector<std::string> lines;
  for (const FacetId f : facets) {
    for (const double r : radii) {
      if (interior_pass(mesh, f, r)) {
        std::ostringstream line;
        line << "facet " << f << " at r=" << r;
        lines.push_back(line.str());
      }
    }
  }
  return lines;
}

SliceResult slice_mesh(const TriangleMesh& mesh, const SliceSettings& settings) {
  SliceResult result;
  result.bounding = bounding_cylinder(mesh);
  result.slicyls = build_slicyl_set(mesh, settings.mandrel_radius, settings.layer_thickness,
                                    result.bounding, settings.epsilon);

  if (const auto crossing = axis_crossing_facets(mesh); !crossing.empty()) {
    auto passes = interior_pass_report(mesh, crossing, result.slicyls.radii);
    if (settings.strict && !passes.empty()) {
      throw Error(ErrorCode::InteriorPass,
                  std::to_string(passes.size()) +
                      " slicyl pass(es) through facet interiors without edge crossings",
                  std::move(passes));
    }
    std::vector<std::string> details;
    for (FacetId f : crossing) details.push_back("facet " + std::to_string(f));
    for (auto& p : passes) details.push_back("interior pass: " + p);
    throw Error(ErrorCode::AxisCrossingFacet,
                std::to_string(crossing.size()) +
                    " facet(s) cross the x-axis; the model needs an axial void along the skewer",
                std::move(details));
  }

  const ActiveTable table = build_active_table(mesh, result.slicyls);
  result.active_entries = table.total_entries();

  const std::size_t k = result.slicyls.count();
  result.layers.resize(k);
  std::vector<std::exception_ptr> failures(k);

  std::atomic<std::size_t> cursor{0};
  const auto worker = [&] {
    for (std::size_t i = cursor++; i < k; i = cursor++) {
      try {
        LayerResult& layer = result.layers[i];
        layer.index = i + 1;
        layer.radius = result.slicyls.radii[i];
        layer.active_facets = table.facets(i).size();
        layer.slice = slice_layer(mesh, table.facets(i), layer.radius);
        layer.slice = subdivide_long_arcs(mesh, std::move(layer.slice), settings.max_arc_sweep);
        layer.contours = build_layer_contours(layer.slice, layer.index);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(settings.threads, static_cast<unsigned>(k)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // lowest failing layer wins so errors are independent of scheduling
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return result;
}

}  // namespace slicyl
