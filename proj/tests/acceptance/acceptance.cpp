// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "slicyl/active_facets.hpp"
#include "slicyl/contour.hpp"
#include "slicyl/error.hpp"
#include "slicyl/oracle/bench.hpp"
#include "slicyl/oracle/generators.hpp"
#include "slicyl/oracle/reference.hpp"
#include "slicyl/orientation.hpp"
#include "slicyl/pipeline.hpp"
#include "slicyl/slicing.hpp"

namespace {

using namespace slicyl;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects failures for one criterion; keeps the first few messages.
class Verdict {
 public:
  void fail(const std::string& message) {
    if (failures_++ < 3) messages_.push_back(message);
  }
  void check(bool ok, const std::string& message) {
    if (!ok) fail(message);
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool passed() const { return failures_ == 0; }

  std::string summary() const {
    std::ostringstream out;
    const auto& lines = passed() ? notes_ : messages_;
    for (std::size_t i = 0; i < lines.size(); ++i) out << (i ? "; " : "") << lines[i];
    if (failures_ > messages_.size()) out << "; +" << failures_ - messages_.size() << " more";
    return out.str();
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
  std::vector<std::string> notes_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct SuiteCase {
  std::string name;
  TriangleMesh mesh;
  double mandrel_radius;
  double layer_thickness;
  std::optional<SliceResult> result;
  std::string error;
};

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

SliceResult run_slice(const TriangleMesh& mesh, double rm, double delta) {
  SliceSettings s;
  s.mandrel_radius = rm;
  s.layer_thickness = delta;
  s.threads = worker_threads();
  return slice_mesh(mesh, s);
}

TriangleMesh rolled(const TriangleMesh& mesh, double angle) {
  RigidTransform t;
  t.rotation = rotation_x(angle);
  return apply_transform(mesh, t);
}

/// Barycentric coordinates of p projected onto triangle abc.
std::array<double, 3> barycentric(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p) {
  const Vec3 v0 = b - a;
  const Vec3 v1 = c - a;
  const Vec3 v2 = p - a;
  const double d00 = dot(v0, v0);
  const double d01 = dot(v0, v1);
  const double d11 = dot(v1, v1);
  const double d20 = dot(v2, v0);
  const double d21 = dot(v2, v1);
  const double den = d00 * d11 - d01 * d01;
  const double v = (d11 * d20 - d01 * d21) / den;
  const double w = (d00 * d21 - d01 * d20) / den;
  return {1.0 - v - w, v, w};
}

std::vector<std::pair<std::size_t, std::size_t>> layer_counts(const SliceResult& r) {
  std::vector<std::pair<std::size_t, std::size_t>> counts;
  for (const LayerResult& layer : r.layers) {
    counts.emplace_back(layer.count(ContourKind::TypeI), layer.count(ContourKind::TypeII));
  }
  return counts;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Verdict>> verdicts(12);
  const std::array<const char*, 12> names{
      "cube contour counts",       "first layer clears the bore", "exactly-once consumption",
      "degree-2 adjacency",        "on-cylinder residual",        "oracle equivalence",
      "transform contract",        "type II parity",              "arc inside facet",
      "unroll isometry",           "active table speedup",        "quadratic examples"};
  for (std::size_t i = 0; i < 12; ++i) verdicts[i].first = names[i];
  auto& v = verdicts;
  const auto crit = [&](int n) -> Verdict& { return v[static_cast<std::size_t>(n - 1)].second; };

  // ---- suite meshes --------------------------------------------------------
  const auto cube = oracle::gen_cube_with_bore(20, 2, 32);
  const auto tube = oracle::gen_tube(10, 2, 5, 32, {.axial_divisions = 4, .radial_divisions = 3});
  const auto perturbed = oracle::gen_tube(
      10, 2, 5, 50, {.axial_divisions = 25, .radial_divisions = 25, .jitter = 0.7, .seed = 2024});
  const std::vector<oracle::GeneratedMesh> two{oracle::gen_tube(2, 2, 5, 24, {.x_start = 1}),
                                               oracle::gen_tube(3, 2, 5, 24, {.x_start = 6})};
  const auto twin = oracle::merge_meshes(two);

  std::vector<SuiteCase> suite;
  suite.push_back({"cube", cube.mesh, 2.0, 0.5, {}, {}});
  suite.push_back({"tube", tube.mesh, 2.0, 0.5, {}, {}});
  suite.push_back({"perturbed tube", perturbed.mesh, 2.0, 0.1, {}, {}});
  suite.push_back({"two tubes", twin.mesh, 2.0, 0.25, {}, {}});

  // ---- 1, 2: cube ----------------------------------------------------------
  {
    const auto start = Clock::now();
    SliceResult r;
    try {
      r = run_slice(oracle::gen_cube_with_bore(20, 2, 32).mesh, 2.0, 0.5);
    } catch (const Error& e) {
      crit(1).fail(std::string(error_name(e.code())) + ": " + e.what());
      crit(2).fail("cube slicing failed");
    }
    const double elapsed = seconds_since(start);
    if (crit(1).passed()) {
      crit(1).check(r.layers.size() == 24, "k=" + std::to_string(r.layers.size()) + ", expected 24");
      std::size_t inner = 0;
      std::size_t outer = 0;
      for (const LayerResult& layer : r.layers) {
        const std::size_t t1 = layer.count(ContourKind::TypeI);
        const std::size_t t2 = layer.count(ContourKind::TypeII);
        const std::string where = "layer " + std::to_string(layer.index) + " r=" + fmt(layer.radius);
        if (layer.radius < 10.0) {
          ++inner;
          crit(1).check(t2 == 2 && t1 == 0, where + ": " + std::to_string(t1) + " type I, " +
                                                std::to_string(t2) + " type II, expected 0/2");
        } else if (layer.radius > 10.0 && layer.radius < std::sqrt(200.0)) {
          ++outer;
          crit(1).check(t1 == 4 && t2 == 0, where + ": " + std::to_string(t1) + " type I, " +
                                                std::to_string(t2) + " type II, expected 4/0");
        }
      }
      crit(1).check(elapsed < 5.0, "runtime " + fmt(elapsed) + " s");
      crit(1).note("k=24, " + std::to_string(inner) + " layers with 2 type II, " + std::to_string(outer) +
                   " layers with 4 type I, " + fmt(elapsed) + " s");

      if (r.layers.empty()) return 1;
      const LayerResult& first = r.layers.front();
      crit(2).check(std::abs(first.radius - 2.5) < 1e-3, "first layer r=" + fmt(first.radius));
      std::size_t bore_segments = 0;
      for (const Segment& s : first.slice.segments) {
        bool on_bore = true;
        for (VertexId vid : cube.mesh.facet(s.facet).vertices) {
          on_bore &= std::abs(axis_distance(cube.mesh.vertex(vid)) - 2.0) < 1e-9;
        }
        bore_segments += on_bore;
      }
      crit(2).check(bore_segments == 0, std::to_string(bore_segments) + " bore-wall segments");
      crit(2).note("0 bore-wall segments of " + std::to_string(first.slice.segments.size()) + " at r=" +
                   fmt(first.radius));
    }
  }

  // ---- 7: transform contract (also adds rolled cubes to the suite) ---------
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-50.0, 50.0);
    double worst_axis = 0.0;
    double worst_dist = 0.0;
    const auto& verts = cube.mesh.vertices();
    for (int i = 0; i < 100; ++i) {
      const Vec3 a{coord(rng), coord(rng), coord(rng)};
      const Vec3 b{coord(rng), coord(rng), coord(rng)};
      const RigidTransform t = compute_skewer_transform({a, b});
      const Vec3 tb = t.apply(b);
      const double len = norm(b - a);
      worst_axis = std::max({worst_axis, std::abs(tb.y) / len, std::abs(tb.z) / len});
      crit(7).check(tb.x > 0.0, "B not on +x");
      const TriangleMesh moved = apply_transform(cube.mesh, t);
      const auto& out = moved.vertices();
      for (std::size_t p = 0; p < verts.size(); ++p) {
        for (std::size_t q = p + 1; q < verts.size(); ++q) {
          const double d0 = norm(verts[p] - verts[q]);
          worst_dist = std::max(worst_dist, std::abs(norm(out[p] - out[q]) - d0) / d0);
        }
      }
    }
    crit(7).check(worst_axis <= 1e-9, "off-axis " + fmt(worst_axis) + " x |B-A|");
    crit(7).check(worst_dist <= 1e-9, "distance error " + fmt(worst_dist) + " relative");

    const auto baseline = layer_counts(run_slice(cube.mesh, 2.0, 0.5));
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
    for (int k = 0; k < 8; ++k) {
      const double a = angle(rng);
      SuiteCase c{"cube rolled " + fmt(a), rolled(cube.mesh, a), 2.0, 0.5, {}, {}};
      try {
        const auto counts = layer_counts(run_slice(c.mesh, 2.0, 0.5));
        for (std::size_t l = 0; l < std::max(counts.size(), baseline.size()); ++l) {
          if (l >= counts.size() || l >= baseline.size() || counts[l] != baseline[l]) {
            crit(7).fail(c.name + ": layer " + std::to_string(l + 1) + " counts differ");
            break;
          }
        }
      } catch (const Error& e) {
        crit(7).fail(c.name + ": " + std::string(error_name(e.code())));
      }
      suite.push_back(std::move(c));
    }
    crit(7).note("100 axes, off-axis " + fmt(worst_axis) + ", distance error " + fmt(worst_dist) +
                 ", 8 rolls with identical counts");
  }

  // ---- slice the whole suite ------------------------------------------------
  for (SuiteCase& c : suite) {
    try {
      c.result = run_slice(c.mesh, c.mandrel_radius, c.layer_thickness);
    } catch (const Error& e) {
      c.error = std::string(error_name(e.code())) + ": " + e.what();
      if (e.code() == ErrorCode::OddTypeII) crit(8).fail(c.name + ": " + c.error);
      if (e.code() == ErrorCode::Degree) crit(4).fail(c.name + ": " + c.error);
      crit(3).fail(c.name + ": " + c.error);
    }
  }

  std::size_t layers_checked = 0;
  std::size_t points_checked = 0;
  std::size_t segments_checked = 0;
  std::size_t contours_checked = 0;
  double worst_residual = 0.0;
  double worst_step = 0.0;
  double worst_closure = 0.0;
  double worst_bary = 0.0;

  for (const SuiteCase& c : suite) {
    if (!c.result) continue;
    for (const LayerResult& layer : c.result->layers) {
      ++layers_checked;
      const double r = layer.radius;
      const std::string where = c.name + " layer " + std::to_string(layer.index);
      const LayerSlice& slice = layer.slice;

      // 3: every point in exactly one contour
      std::set<PointId> ids;
      for (const auto& p : slice.points) ids.insert(p.id);
      std::set<PointId> used;
      std::size_t total = 0;
      bool repeated = false;
      for (const Contour& contour : layer.contours.contours) {
        total += contour.size();
        for (const PointId& id : contour.ids) repeated |= !used.insert(id).second;
      }
      crit(3).check(!repeated && total == ids.size() && used == ids && ids.size() == slice.points.size(),
                    where + ": " + std::to_string(total) + " contour points for " +
                        std::to_string(ids.size()) + " distinct points");

      // 4: degrees before extraction
      try {
        const AdjacencyTable adj = build_adjacency(slice);
        for (std::uint32_t p = 0; p < adj.size(); ++p) {
          crit(4).check(adj.degree(p) == 2, where + ": degree " + std::to_string(adj.degree(p)));
        }
      } catch (const Error& e) {
        crit(4).fail(where + ": " + e.what());
      }

      // 5: residual
      for (const IntersectionPoint& p : slice.points) {
        ++points_checked;
        worst_residual = std::max(worst_residual, std::abs(axis_distance(p.position) - r) / r);
      }

      // 8: parity
      const std::size_t t2 = layer.count(ContourKind::TypeII);
      crit(8).check(t2 % 2 == 0, where + ": " + std::to_string(t2) + " type II contours");

      // 9: arc midpoint inside facet
      for (const Segment& s : slice.segments) {
        ++segments_checked;
        const Vec3& p = slice.points[s.ends[0]].position;
        const Vec3& q = slice.points[s.ends[1]].position;
        const auto branch = s.sweep > 0.0   ? oracle::ArcBranch::Positive
                            : s.sweep < 0.0 ? oracle::ArcBranch::Negative
                                            : oracle::ArcBranch::Shorter;
        try {
          const Vec3 mid = oracle::arc_point(oracle::facet_plane(c.mesh, s.facet), r, p, q, 0.5, branch);
          const auto& fv = c.mesh.facet(s.facet).vertices;
          const auto bary = barycentric(c.mesh.vertex(fv[0]), c.mesh.vertex(fv[1]), c.mesh.vertex(fv[2]), mid);
          const double lo = std::min({bary[0], bary[1], bary[2]});
          worst_bary = std::min(worst_bary, lo);
          crit(9).check(lo >= -1e-9, where + " facet " + std::to_string(s.facet) + ": barycentric " + fmt(lo));
        } catch (const Error& e) {
          crit(9).fail(where + " facet " + std::to_string(s.facet) + ": " + e.what());
        }
      }

      // 10: unroll isometry and closure
      for (std::size_t k = 0; k < layer.contours.contours.size(); ++k) {
        ++contours_checked;
        const Contour& contour = layer.contours.contours[k];
        const UnrolledContour& flat = layer.contours.unrolled[k];
        const std::size_t n = contour.size();
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t next = (j + 1) % n;
          const Vec3& a = contour.points[j];
          const Vec3& b = contour.points[next];
          const double dalpha = std::remainder(std::atan2(b.z, b.y) - std::atan2(a.z, a.y), 2 * kPi);
          const double geodesic = std::hypot(b.x - a.x, r * dalpha);
          const double du = flat.points[next][1] + (next == 0 ? flat.closure_offset : 0.0) - flat.points[j][1];
          const double planar = std::hypot(flat.points[next][0] - flat.points[j][0], du);
          worst_step = std::max(worst_step, std::abs(planar - geodesic));
          crit(10).check(std::abs(planar - geodesic) <= 1e-12,
                         where + ": step error " + fmt(std::abs(planar - geodesic)));
        }
        const double expected = contour.kind == ContourKind::TypeII ? 2 * kPi * r : 0.0;
        const double closure_error = std::abs(std::abs(flat.closure_offset) - expected);
        worst_closure = std::max(worst_closure, closure_error / r);
        crit(10).check(closure_error <= 1e-9 * r, where + ": closure " + fmt(flat.closure_offset));
      }
    }
  }
  crit(3).note(std::to_string(layers_checked) + " layers over " + std::to_string(suite.size()) + " meshes");
  crit(4).note(std::to_string(points_checked) + " points, all degree 2");
  crit(5).check(points_checked > 0, "no points checked");
  crit(5).check(worst_residual <= 1e-9, "worst residual " + fmt(worst_residual));
  crit(5).note("worst |d-r|/r " + fmt(worst_residual) + " over " + std::to_string(points_checked) + " points");
  crit(8).note("all layers even");
  crit(9).note(std::to_string(segments_checked) + " segments, lowest barycentric " + fmt(worst_bary));
  crit(10).note(std::to_string(contours_checked) + " contours, step error " + fmt(worst_step) +
                ", closure error " + fmt(worst_closure) + " r");

  // ---- 6: oracle equivalence ----------------------------------------------
  {
    std::size_t compared = 0;
    for (std::size_t m = 0; m < 3; ++m) {
      const SuiteCase& c = suite[m];
      if (!c.result) {
        crit(6).fail(c.name + ": " + c.error);
        continue;
      }
      for (const LayerResult& layer : c.result->layers) {
        const std::string where = c.name + " layer " + std::to_string(layer.index);
        try {
          const LayerSlice naive = oracle::naive_slice_layer(c.mesh, layer.radius);
          const LayerContours naive_contours = build_layer_contours(naive, layer.index);
          crit(6).check(oracle::canonical_contour_set(naive_contours.contours) ==
                            oracle::canonical_contour_set(layer.contours.contours),
                        where + ": contour sets differ");
          ++compared;
        } catch (const Error& e) {
          crit(6).fail(where + ": " + e.what());
        }
      }
    }
    crit(6).note(std::to_string(compared) + " layers identical (cube, tube, " +
                 std::to_string(perturbed.mesh.facet_count()) + "-facet perturbed tube)");
  }

  // ---- 11: performance -------------------------------------------------------
  {
    const auto start = Clock::now();
    const auto big = oracle::gen_tube(20, 2, 12.5, 125, {.axial_divisions = 50, .radial_divisions = 50});
    const SlicylSet set = build_slicyl_set(big.mesh, 2.0, 0.05, bounding_cylinder(big.mesh));
    crit(11).check(big.mesh.facet_count() >= 50000, std::to_string(big.mesh.facet_count()) + " facets");
    crit(11).check(set.count() >= 200, std::to_string(set.count()) + " layers");
    if (const auto mismatch = oracle::compare_paths(big.mesh, set.radii)) {
      crit(11).fail("outputs differ: " + *mismatch);
    } else {
      const oracle::BenchTiming t = oracle::time_paths(big.mesh, set.radii, 1);
      const double elapsed = seconds_since(start);
      crit(11).check(t.active_seconds <= 0.5 * t.naive_seconds,
                     "active " + fmt(t.active_seconds) + " s vs naive " + fmt(t.naive_seconds) + " s");
      crit(11).check(elapsed < 60.0, "total " + fmt(elapsed) + " s");
      crit(11).note(std::to_string(t.facets) + " facets, " + std::to_string(t.layers) + " layers, naive " +
                    fmt(t.naive_seconds) + " s, active " + fmt(t.active_seconds) + " s (" +
                    fmt(t.speedup()) + "x), total " + fmt(elapsed) + " s");
    }
  }

  // ---- 12: quadratic examples -----------------------------------------------
  {
    const EdgeCrossings sym = edge_cylinder_intersections({0, -2, 0}, {0, 2, 0}, 1.0);
    const bool sym_ok = sym.count == 2 && sym.items[0].t == 0.25 && sym.items[1].t == 0.75 &&
                        sym.items[0].position.x == 0.0 && sym.items[0].position.y == -1.0 &&
                        sym.items[0].position.z == 0.0 && sym.items[1].position.x == 0.0 &&
                        sym.items[1].position.y == 1.0 && sym.items[1].position.z == 0.0;
    crit(12).check(sym_ok, "symmetric crossing");
    crit(12).check(edge_cylinder_intersections({0, 0, 0.1}, {1, 0.2, 0.1}, 1.0).count == 0, "interior edge");
    crit(12).check(edge_cylinder_intersections({0, -2, 1}, {0, 2, 1}, 1.0).count == 0, "tangency");
    crit(12).note("t={0.25,0.75} at (0,-1,0),(0,1,0); inside edge empty; tangent edge empty");
  }

  bool all = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Verdict& verdict = v[i].second;
    all &= verdict.passed();
    std::printf("[%s] %2zu %-28s %s\n", verdict.passed() ? "PASS" : "FAIL", i + 1, v[i].first.c_str(),
                verdict.summary().c_str());
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
