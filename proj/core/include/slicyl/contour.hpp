#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "slicyl/geometry.hpp"
#include "slicyl/slicing.hpp"

namespace slicyl {

/// Point -> its two neighbours, keyed by layer point index (the layer's
/// points are sorted by PointId, so the index is a perfect hash of the id).
/// `sweep(p, k)` is the signed arc angle from p to its k-th neighbour.
class AdjacencyTable {
 public:
  std::size_t size() const noexcept { return neighbours_.size(); }
  const std::array<std::uint32_t, 2>& neighbours(std::uint32_t p) const { return neighbours_[p]; }
  double sweep(std::uint32_t p, int k) const { return sweeps_[p][k]; }
  std::uint8_t degree(std::uint32_t p) const { return degree_[p]; }

 private:
  friend AdjacencyTable build_adjacency(const LayerSlice& layer);

  std::vector<std::array<std::uint32_t, 2>> neighbours_;
  std::vector<std::array<double, 2>> sweeps_;
  std::vector<std::uint8_t> degree_;
};

/// Adds both directions of every segment. Throws E_DEGREE when a segment is
/// repeated or any point ends up with a degree other than 2; the details name
/// the point and the facets of its segments.
AdjacencyTable build_adjacency(const LayerSlice& layer);

enum class ContourKind { Unclassified, TypeI, TypeII };

/// Closed cyclic sequence of points on one slicyl; the last point connects
/// back to the first. `sweeps[k]` is the arc angle from point k to k+1.
struct Contour {
  std::size_t layer_index = 0;
  double radius = 0.0;
  std::vector<PointId> ids;
  std::vector<Vec3> points;
  std::vector<double> sweeps;
  ContourKind kind = ContourKind::Unclassified;
  double winding = 0.0;

  std::size_t size() const noexcept { return points.size(); }
};

/// Hash-table loop closure: take a start key and its two values (next and
/// final point), then repeatedly move to the neighbour that is not the
/// previous key, removing keys as they are consumed, until the walk returns
/// to the start. Start keys are taken in ascending id order; a seed
/// randomizes both the start key and the initial direction.
/// Throws E_OPEN_CHAIN if a walk fails to return to its start.
std::vector<Contour> close_contours(const AdjacencyTable& adjacency, const LayerSlice& layer,
                                    std::size_t layer_index,
                                    std::optional<std::uint64_t> seed = std::nullopt);

struct Classification {
  ContourKind kind = ContourKind::Unclassified;
  double winding = 0.0;
};

/// Total angle about the x-axis, summing wrap-to-(-pi, pi] steps of
/// atan2(z, y). |winding| < pi is type I, |winding -/+ 2 pi| < pi type II.
/// Throws E_AMBIGUOUS_WINDING for fewer than 3 points, a step (or recorded
/// arc) of at least pi - 1e-6, a winding off a multiple of 2 pi, or a contour
/// that winds more than once.
Classification classify_contour(const Contour& contour);

/// Contour mapped onto the developed cylinder: (x, u) with u = r * alpha,
/// alpha unwrapped from the first point.
struct UnrolledContour {
  std::vector<std::array<double, 2>> points;
  double closure_offset = 0.0;  // 0 for type I, +/- 2 pi r for type II
};

UnrolledContour unroll_contour(const Contour& contour);

/// Type II contours sorted by mean x and paired consecutively; indices refer
/// to `contours`. Throws E_ODD_TYPE_II for an odd number of rings.
std::vector<std::pair<std::size_t, std::size_t>> pair_type_ii(std::span<const Contour> contours);

/// Mean x of a contour's points.
double mean_x(const Contour& contour);

struct LayerContours {
  std::vector<Contour> contours;  // classified
  std::vector<UnrolledContour> unrolled;
  std::vector<std::pair<std::size_t, std::size_t>> type_ii_pairs;
};

/// build_adjacency -> close_contours -> classify -> unroll -> pair.
LayerContours build_layer_contours(const LayerSlice& layer, std::size_t layer_index);

}  // namespace slicyl
