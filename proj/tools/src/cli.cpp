#include "slicyl/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "slicyl/export.hpp"
#include "slicyl/oracle/bench.hpp"
#include "slicyl/oracle/generators.hpp"
#include "slicyl/orientation.hpp"
#include "slicyl/pipeline.hpp"
#include "slicyl/stl.hpp"

namespace slicyl::cli {

namespace {

constexpr const char* kExitCodes = R"(Exit codes:
   0  ok
   2  E_NON_MANIFOLD (slice without --force)
   3  E_AXIS_CROSSING_FACET
   4  E_DEGREE
   5  E_INTERIOR_PASS (only with --strict)
  10  E_EMPTY_FILE        11  E_TRUNCATED        12  E_PARSE
  13  E_IO                20  E_ZERO_AXIS        21  E_DECOLLIDE_FAIL
  22  E_NO_LAYERS         30  E_ARC_ORACLE       31  E_OPEN_CHAIN
  32  E_AMBIGUOUS_WINDING 33  E_ODD_TYPE_II      40  E_PARAM
  41  E_DEGENERATE_PLANE
  64  usage error
  70  bench: active and all-facet paths disagree
Errors are also written to stderr as one JSON line.)";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AxisOptions {
  std::vector<double> a;
  std::vector<double> b;
  bool pre_aligned = false;
  double x_offset = 0.0;

  void add_to(CLI::App& cmd, bool required) {
    auto* oa = cmd.add_option("--axis-a", a, "Skewer entry point A as x,y,z")
                   ->expected(3)
                   ->delimiter(',');
    auto* ob = cmd.add_option("--axis-b", b, "Skewer exit point B as x,y,z")
                   ->expected(3)
                   ->delimiter(',');
    oa->needs(ob);
    ob->needs(oa);
    auto* pa = cmd.add_flag("--pre-aligned", pre_aligned, "Mesh already has its skewer on +x");
    pa->excludes(oa);
    pa->excludes(ob);
    cmd.add_option("--x-offset", x_offset, "Shift along x after orientation");
    if (required) {
      cmd.callback([oa, pa] {
        if (oa->count() == 0 && pa->count() == 0) {
          throw CLI::RequiredError("--axis-a/--axis-b or --pre-aligned");
        }
      });
    }
  }

  bool has_axis() const { return a.size() == 3 && b.size() == 3; }

  TriangleMesh orient(const TriangleMesh& mesh) const {
    RigidTransform transform;
    if (has_axis()) {
      transform = compute_skewer_transform({{a[0], a[1], a[2]}, {b[0], b[1], b[2]}});
    }
    transform.x_offset = x_offset;
    return apply_transform(mesh, transform);
  }
};

void print_error_record(std::ostream& err, const std::string& name, int code,
                        const std::string& message, const std::vector<std::string>& details) {
  nlohmann::json record{{"error", name}, {"exit_code", code}, {"message", message},
                        {"details", details}};
  err << record.dump() << '\n';
}

void report_weld(const WeldResult& weld, std::ostream& err) {
  if (weld.degenerate_facets > 0) {
    err << "warning: dropped " << weld.degenerate_facets << " degenerate facet(s)\n";
  }
  if (weld.normal_overrides > 0) {
    err << "warning: " << weld.normal_overrides
        << " stored normal(s) disagree with the winding; winding used\n";
  }
}

unsigned thread_count(unsigned requested) {
  unsigned threads = requested;
  if (const char* env = std::getenv("SLICYL_THREADS"); env && *env) {
    try {
      threads = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw UsageError(std::string("SLICYL_THREADS is not a number: ") + env);
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

// ---------------------------------------------------------------------------

struct SliceOptions {
  std::string input;
  AxisOptions axis;
  double mandrel_radius = 0.0;
  double layer_thickness = 0.0;
  std::optional<double> epsilon;
  std::string output = "layers.json";
  std::string format = "json";
  double max_arc_subdivide = 0.0;
  bool force = false;
  bool strict = false;
  unsigned threads = 0;
};

int cmd_slice(const SliceOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.layer_thickness > 0.0)) throw UsageError("--layer-thickness must be > 0");
  if (!(o.mandrel_radius >= 0.0)) throw UsageError("--mandrel-radius must be >= 0");
  if (o.epsilon && !(*o.epsilon > 0.0)) throw UsageError("--epsilon must be > 0");
  if (!(o.max_arc_subdivide >= 0.0)) throw UsageError("--max-arc-subdivide must be >= 0");

  const WeldResult weld = load_stl(o.input);
  report_weld(weld, err);
  const ManifoldReport report = validate_manifold(weld.mesh);
  if (!report.ok()) {
    if (!o.force) require_manifold(weld.mesh, report);
    err << "warning: mesh is not a closed manifold (" << report.issues.size()
        << " edge issue(s)); continuing because of --force\n";
  }
  const TriangleMesh mesh = o.axis.orient(weld.mesh);

  SliceSettings settings;
  settings.mandrel_radius = o.mandrel_radius;
  settings.layer_thickness = o.layer_thickness;
  settings.epsilon = o.epsilon;
  settings.max_arc_sweep = o.max_arc_subdivide;
  settings.strict = o.strict;
  settings.threads = thread_count(o.threads);
  const SliceResult result = slice_mesh(mesh, settings);

  if (o.format == "json" || o.format == "both") write_file(o.output, layers_to_json(result));
  std::vector<std::filesystem::path> svgs;
  if (o.format == "svg" || o.format == "both") svgs = write_svg_layers(result, o.output);

  out << "r_BC " << result.bounding.radius << "  l_BC " << result.bounding.length << "  layers "
      << result.layers.size() << "  active entries " << result.active_entries << '\n';
  out << std::setw(6) << "layer" << std::setw(14) << "radius" << std::setw(8) << "active"
      << std::setw(7) << "typeI" << std::setw(8) << "typeII" << std::setw(9) << "points" << '\n';
  std::size_t total_points = 0;
  for (const LayerResult& layer : result.layers) {
    std::size_t points = 0;
    for (const Contour& c : layer.contours.contours) points += c.size();
    total_points += points;
    out << std::setw(6) << layer.index << std::setw(14) << std::fixed << std::setprecision(8)
        << layer.radius << std::defaultfloat << std::setw(8) << layer.active_facets << std::setw(7)
        << layer.count(ContourKind::TypeI) << std::setw(8) << layer.count(ContourKind::TypeII)
        << std::setw(9) << points << '\n';
  }
  out << "total points " << total_points << '\n';
  if (o.format != "svg") out << "wrote " << o.output << '\n';
  if (!svgs.empty()) out << "wrote " << svgs.size() << " svg file(s)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct InfoOptions {
  std::string input;
  AxisOptions axis;
};

int cmd_info(const InfoOptions& o, std::ostream& out, std::ostream& err) {
  const WeldResult weld = load_stl(o.input);
  report_weld(weld, err);
  const TriangleMesh& mesh = weld.mesh;
  out << "facets " << mesh.facet_count() << '\n';
  out << "vertices " << mesh.vertex_count() << '\n';
  out << "edges " << mesh.edge_count() << '\n';
  const ManifoldReport report = validate_manifold(mesh);
  if (report.ok()) {
    out << "manifold yes\n";
  } else {
    out << "manifold no (" << report.count(EdgeDefect::Boundary) << " boundary, "
        << report.count(EdgeDefect::Overshared) << " overshared, "
        << report.count(EdgeDefect::Inconsistent) << " inconsistent)\n";
    for (const std::string& line : report.describe(mesh)) out << "  " << line << '\n';
  }
  if (!mesh.empty()) {
    const TriangleMesh oriented = o.axis.orient(mesh);
    const BoundingCylinder bc = bounding_cylinder(oriented);
    out << std::setprecision(12);
    out << "bounding cylinder" << (o.axis.has_axis() ? " (oriented)" : "") << " r_BC " << bc.radius
        << " l_BC " << bc.length << " x [" << bc.x_min << ", " << bc.x_max << "]\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::string output;
  double side = 20.0;
  double bore_radius = 2.0;
  std::size_t segments = 32;
  double length = 10.0;
  double inner = 2.0;
  double outer = 5.0;
  oracle::TubeOptions tube;
  std::vector<double> origin{0.0, 5.0, 0.0};
  double size = 1.0;
  bool open = false;
};

int write_generated(const oracle::GeneratedMesh& g, const std::string& path, std::ostream& out) {
  save_binary_stl(path, g.mesh);
  out << "wrote " << path << " (" << g.mesh.facet_count() << " facets) " << g.descriptor << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchOptions {
  std::vector<std::size_t> segments{125};
  std::size_t divisions = 50;
  double length = 20.0;
  double inner = 2.0;
  double outer = 12.5;
  double layer_thickness = 0.05;
  std::size_t repeat = 3;
};

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.layer_thickness > 0.0)) throw UsageError("--layer-thickness must be > 0");
  struct Case {
    oracle::GeneratedMesh mesh;
    SlicylSet slicyls;
  };
  std::vector<Case> cases;
  for (const std::size_t n : o.segments) {
    oracle::TubeOptions tube;
    tube.axial_divisions = o.divisions;
    tube.radial_divisions = o.divisions;
    auto g = oracle::gen_tube(o.length, o.inner, o.outer, n, tube);
    const BoundingCylinder bc = bounding_cylinder(g.mesh);
    SlicylSet slicyls = build_slicyl_set(g.mesh, o.inner, o.layer_thickness, bc);
    cases.push_back({std::move(g), std::move(slicyls)});
  }
  // equality first, so a mismatch never produces timings
  for (const Case& c : cases) {
    if (auto mismatch = oracle::compare_paths(c.mesh.mesh, c.slicyls.radii)) {
      print_error_record(err, "BENCH_MISMATCH", kExitBenchMismatch,
                         "active-table and all-facet slicing disagree",
                         {c.mesh.descriptor, *mismatch});
      return kExitBenchMismatch;
    }
  }
  out << "facets,layers,naive_s,active_s,table_s,speedup\n";
  for (const Case& c : cases) {
    const auto t = oracle::time_paths(c.mesh.mesh, c.slicyls.radii, o.repeat);
    out << t.facets << ',' << t.layers << ',' << t.naive_seconds << ',' << t.active_seconds << ','
        << t.table_seconds << ',' << t.speedup() << '\n';
  }
  return kExitOk;
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonManifold: return 2;
    case ErrorCode::AxisCrossingFacet: return 3;
    case ErrorCode::Degree: return 4;
    case ErrorCode::InteriorPass: return 5;
    case ErrorCode::EmptyFile: return 10;
    case ErrorCode::Truncated: return 11;
    case ErrorCode::Parse: return 12;
    case ErrorCode::Io: return 13;
    case ErrorCode::ZeroAxis: return 20;
    case ErrorCode::DecollideFail: return 21;
    case ErrorCode::NoLayers: return 22;
    case ErrorCode::ArcOracle: return 30;
    case ErrorCode::OpenChain: return 31;
    case ErrorCode::AmbiguousWinding: return 32;
    case ErrorCode::OddTypeII: return 33;
    case ErrorCode::Param: return 40;
    case ErrorCode::DegeneratePlane: return 41;
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cylindrical slicing of closed triangle meshes around a skewer axis", "slicyl"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  SliceOptions slice;
  auto* s = app.add_subcommand("slice", "Slice a mesh into concentric cylindrical layers");
  s->add_option("-i,--input", slice.input, "STL file (binary or ASCII)")->required();
  slice.axis.add_to(*s, true);
  s->add_option("--mandrel-radius", slice.mandrel_radius, "Mandrel radius r_m")->required();
  s->add_option("--layer-thickness", slice.layer_thickness, "Layer thickness delta")->required();
  s->add_option("--epsilon", slice.epsilon, "Vertex clearance band (default 1e-6 * delta)");
  s->add_option("-o,--output", slice.output, "Layer JSON path; SVG files are named after it")
      ->capture_default_str();
  s->add_option("--format", slice.format, "Output format")
      ->check(CLI::IsMember({"json", "svg", "both"}))
      ->capture_default_str();
  s->add_option("--max-arc-subdivide", slice.max_arc_subdivide,
                "Split facet arcs longer than this angle (radians); 0 disables");
  s->add_flag("--force", slice.force, "Slice even if the mesh is not a closed manifold");
  s->add_flag("--strict", slice.strict, "Treat slicyls passing through facet interiors as errors");
  s->add_option("--threads", slice.threads,
                "Worker threads (0 = hardware); SLICYL_THREADS overrides");

  InfoOptions info;
  auto* in = app.add_subcommand("info", "Print mesh statistics and the bounding cylinder");
  in->add_option("-i,--input", info.input, "STL file")->required();
  info.axis.add_to(*in, false);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Write a generated test mesh as binary STL");
  g->require_subcommand(1);
  auto* gc = g->add_subcommand("cube", "Cube on x in [0, side] with a bore along the x-axis");
  gc->add_option("-o,--output", gen.output, "STL path")->required();
  gc->add_option("--side", gen.side)->capture_default_str();
  gc->add_option("--bore-radius", gen.bore_radius)->capture_default_str();
  gc->add_option("--segments", gen.segments, "Bore wall quads")->capture_default_str();
  auto* gt = g->add_subcommand("tube", "Annular tube along x");
  gt->add_option("-o,--output", gen.output, "STL path")->required();
  gt->add_option("--length", gen.length)->capture_default_str();
  gt->add_option("--inner", gen.inner)->capture_default_str();
  gt->add_option("--outer", gen.outer)->capture_default_str();
  gt->add_option("--segments", gen.segments)->capture_default_str();
  gt->add_option("--axial", gen.tube.axial_divisions)->capture_default_str();
  gt->add_option("--radial", gen.tube.radial_divisions)->capture_default_str();
  gt->add_option("--jitter", gen.tube.jitter, "Grid perturbation in [0, 1)")->capture_default_str();
  gt->add_option("--seed", gen.tube.seed)->capture_default_str();
  gt->add_option("--x-start", gen.tube.x_start)->capture_default_str();
  auto* gh = g->add_subcommand("tetrahedron", "Right-corner tetrahedron");
  gh->add_option("-o,--output", gen.output, "STL path")->required();
  gh->add_option("--origin", gen.origin, "Corner as x,y,z")->expected(3)->delimiter(',');
  gh->add_option("--size", gen.size)->capture_default_str();
  gh->add_flag("--open", gen.open, "Leave out one facet");

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Time active-table slicing against all-facet slicing");
  b->add_option("--segments", bench.segments, "Tube segment counts, one CSV row each")
      ->capture_default_str();
  b->add_option("--divisions", bench.divisions, "Axial and radial tube divisions")
      ->capture_default_str();
  b->add_option("--length", bench.length)->capture_default_str();
  b->add_option("--inner", bench.inner, "Inner radius, also the mandrel radius")
      ->capture_default_str();
  b->add_option("--outer", bench.outer)->capture_default_str();
  b->add_option("--layer-thickness", bench.layer_thickness)->capture_default_str();
  b->add_option("--repeat", bench.repeat, "Best of this many runs")->capture_default_str();

  std::vector<std::string> argv_storage{"slicyl"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*s) return cmd_slice(slice, out, err);
    if (*in) return cmd_info(info, out, err);
    if (*gc) return write_generated(oracle::gen_cube_with_bore(gen.side, gen.bore_radius, gen.segments),
                                    gen.output, out);
    if (*gt) {
      return write_generated(oracle::gen_tube(gen.length, gen.inner, gen.outer, gen.segments, gen.tube),
                             gen.output, out);
    }
    if (*gh) {
      auto t = oracle::gen_tetrahedron({gen.origin[0], gen.origin[1], gen.origin[2]}, gen.size);
      if (gen.open) {
        auto raw = to_raw_facets(t.mesh);
        raw.pop_back();
        write_file(gen.output, serialize_binary_stl(raw));
        out << "wrote " << gen.output << " (3 facets) open " << t.descriptor << '\n';
        return kExitOk;
      }
      return write_generated(t, gen.output, out);
    }
    if (*b) return cmd_bench(bench, out, err);
  } catch (const UsageError& e) {
    print_error_record(err, "E_USAGE", kExitUsage, e.what(), {});
    return kExitUsage;
  } catch (const Error& e) {
    const int code = exit_code(e.code());
    print_error_record(err, std::string(error_name(e.code())), code, e.what(), e.details());
    return code;
  }
  return kExitUsage;
}

}  // namespace slicyl::cli
