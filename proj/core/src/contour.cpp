#include "slicyl/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

#include "slicyl/error.hpp"

namespace slicyl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kWindingTolerance = 1e-6;
constexpr std::size_t kMaxDetails = 32;

std::string describe(const PointId& id) {
  if (id.is_synthetic()) {
    return "synthetic point " + std::to_string(id.value() & ~(std::uint64_t{1} << 63));
  }
  return "point (edge " + std::to_string(id.edge()) + ", root " + std::to_string(id.root()) + ")";
}

}  // namespace

AdjacencyTable build_adjacency(const LayerSlice& layer) {
  const std::size_t n = layer.points.size();
  AdjacencyTable table;
  table.neighbours_.assign(n, {0, 0});
  table.sweeps_.assign(n, {0.0, 0.0});
  table.degree_.assign(n, 0);

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(layer.segments.size());
  const auto link = [&](std::uint32_t from, std::uint32_t to, double sweep) {
    std::uint8_t& d = table.degree_[from];
    if (d < 2) {
      table.neighbours_[from][d] = to;
      table.sweeps_[from][d] = sweep;
    }
    if (d < 255) ++d;
  };

  for (const Segment& s : layer.segments) {
    const auto [a, b] = s.ends;
    if (a == b) {
      throw Error(ErrorCode::Degree, "segment of facet " + std::to_string(s.facet) +
                                         " starts and ends at the same point");
    }
    const std::uint64_t key =
        (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::Degree,
                  "duplicate segment between " + describe(layer.points[a].id) + " and " +
                      describe(layer.points[b].id),
                  {"facet " + std::to_string(s.facet)});
    }
    link(a, b, s.sweep);
    link(b, a, -s.sweep);
  }

  std::vector<std::string> details;
  std::size_t bad = 0;
  for (std::uint32_t p = 0; p < n; ++p) {
    if (table.degree_[p] == 2) continue;
    ++bad;
    if (details.size() >= kMaxDetails) continue;
    std::string line = describe(layer.points[p].id) + " has degree " +
                       std::to_string(table.degree_[p]) + ", facets [";
    bool first = true;
    for (const Segment& s : layer.segments) {
      if (s.ends[0] != p && s.ends[1] != p) continue;
      if (!first) line += ",";
      line += std::to_string(s.facet);
      first = false;
    }
    details.push_back(line + "]");
  }
  if (bad > 0) {
    throw Error(ErrorCode::Degree,
                std::to_string(bad) + " intersection point(s) without exactly two neighbours at r=" +
                    std::to_string(layer.radius),
                std::move(details));
  }
  return table;
}

std::vector<Contour> close_contours(const AdjacencyTable& adjacency, const LayerSlice& layer,
                                    std::size_t layer_index, std::optional<std::uint64_t> seed) {
  const auto n = static_cast<std::uint32_t>(adjacency.size());
  std::vector<std::uint32_t> keys(n);
  std::iota(keys.begin(), keys.end(), 0u);
  std::mt19937_64 rng(seed.value_or(0));
  if (seed) std::shuffle(keys.begin(), keys.end(), rng);

  std::vector<bool> removed(n, false);
  std::vector<Contour> contours;

  for (const std::uint32_t start : keys) {
    if (removed[start]) continue;
    Contour c;
    c.layer_index = layer_index;
    c.radius = layer.radius;
    const auto push = [&](std::uint32_t p, double sweep) {
      c.ids.push_back(layer.points[p].id);
      c.points.push_back(layer.points[p].position);
      c.sweeps.push_back(sweep);
      removed[p] = true;
    };

    const int dir = seed ? static_cast<int>(rng() & 1u) : 0;
    const std::uint32_t final_point = adjacency.neighbours(start)[1 - dir];
    push(start, adjacency.sweep(start, dir));
    std::uint32_t prev = start;
    std::uint32_t next = adjacency.neighbours(start)[dir];

    while (!removed[next]) {
      const auto& values = adjacency.neighbours(next);
      int back = -1;
      if (values[0] == prev) {
        back = 0;
      } else if (values[1] == prev) {
        back = 1;
      }
      if (back < 0) {
        throw Error(ErrorCode::OpenChain, describe(layer.points[next].id) +
                                              " is not linked back to its predecessor");
      }
      const int forward = 1 - back;
      push(next, adjacency.sweep(next, forward));
      prev = next;
      next = values[forward];
    }
    if (next != start || prev != final_point) {
      throw Error(ErrorCode::OpenChain, "walk from " + describe(layer.points[start].id) +
                                            " did not close at its start point");
    }
    contours.push_back(std::move(c));
  }
  return contours;
}

Classification classify_contour(const Contour& contour) {
  const std::size_t n = contour.size();
  if (n < 3) {
    throw Error(ErrorCode::AmbiguousWinding,
                "contour with " + std::to_string(n) + " points cannot be classified");
  }
  const double limit = std::numbers::pi - kWindingTolerance;
  double winding = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double step =
        wrap_angle(axis_angle(contour.points[(k + 1) % n]) - axis_angle(contour.points[k]));
    const bool long_arc = k < contour.sweeps.size() && std::abs(contour.sweeps[k]) > limit;
    if (std::abs(step) > limit || long_arc) {
      throw Error(ErrorCode::AmbiguousWinding,
                  "contour step " + std::to_string(k) + " spans half a turn or more; "
                  "use --max-arc-subdivide");
    }
    winding += step;
  }
  const double turns = std::round(winding / kTwoPi);
  if (std::abs(winding - turns * kTwoPi) > kWindingTolerance) {
    throw Error(ErrorCode::AmbiguousWinding,
                "winding " + std::to_string(winding) + " is not a multiple of 2*pi");
  }
  if (turns == 0.0) return {ContourKind::TypeI, winding};
  if (std::abs(turns) == 1.0) return {ContourKind::TypeII, winding};
  throw Error(ErrorCode::AmbiguousWinding,
              "contour winds " + std::to_string(turns) + " times around the axis");
}

UnrolledContour unroll_contour(const Contour& contour) {
  UnrolledContour out;
  const std::size_t n = contour.size();
  if (n == 0) return out;
  out.points.reserve(n);
  const double r = contour.radius;
  double alpha = axis_angle(contour.points[0]);
  const double alpha0 = alpha;
  out.points.push_back({contour.points[0].x, r * alpha});
  for (std::size_t k = 1; k < n; ++k) {
    alpha += wrap_angle(axis_angle(contour.points[k]) - axis_angle(contour.points[k - 1]));
    out.points.push_back({contour.points[k].x, r * alpha});
  }
  alpha += wrap_angle(axis_angle(contour.points[0]) - axis_angle(contour.points[n - 1]));
  out.closure_offset = r * (alpha - alpha0);
  return out;
}

double mean_x(const Contour& contour) {
  if (contour.points.empty()) return 0.0;
  double sum = 0.0;
  for (const Vec3& p : contour.points) sum += p.x;
  return sum / static_cast<double>(contour.points.size());
}

std::vector<std::pair<std::size_t, std::size_t>> pair_type_ii(std::span<const Contour> contours) {
  std::vector<std::pair<double, std::size_t>> rings;
  for (std::size_t i = 0; i < contours.size(); ++i) {
    if (contours[i].kind == ContourKind::TypeII) rings.emplace_back(mean_x(contours[i]), i);
  }
  if (rings.size() % 2 != 0) {
    std::vector<std::string> details;
    for (const auto& [x, i] : rings) {
      details.push_back("contour " + std::to_string(i) + " at mean x " + std::to_string(x));
    }
    throw Error(ErrorCode::OddTypeII,
                std::to_string(rings.size()) + " type II contours cannot be paired",
                std::move(details));
  }
  std::sort(rings.begin(), rings.end());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < rings.size(); i += 2) {
    pairs.emplace_back(rings[i].second, rings[i + 1].second);
  }
  return pairs;
}

LayerContours build_layer_contours(const LayerSlice& layer, std::size_t layer_index) {
  LayerContours out;
  const AdjacencyTable adjacency = build_adjacency(layer);
  out.contours = close_contours(adjacency, layer, layer_index);
  out.unrolled.reserve(out.contours.size());
  for (Contour& c : out.contours) {
    const Classification cls = classify_contour(c);
    c.kind = cls.kind;
    c.winding = cls.winding;
    out.unrolled.push_back(unroll_contour(c));
  }
  out.type_ii_pairs = pair_type_ii(out.contours);
  return out;
}

}  // namespace slicyl
