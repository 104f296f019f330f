#include "slicyl/export.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "slicyl/stl.hpp"

namespace slicyl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string_view kind_label(ContourKind kind) {
  switch (kind) {
    case ContourKind::TypeI: return "I";
    case ContourKind::TypeII: return "II";
    case ContourKind::Unclassified: break;
  }
  return "?";
}

void append_path(std::ostringstream& out, const std::vector<std::array<double, 2>>& pts,
                 double shift, bool close) {
  out << "M";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << (i ? " L" : "") << ' ' << pts[i][1] + shift << ' ' << pts[i][0];
  }
  if (close) out << " Z";
}

}  // namespace

std::string layers_to_json(const SliceResult& result) {
  using nlohmann::json;
  json doc;
  doc["version"] = 1;
  doc["mandrel_radius"] = result.slicyls.mandrel_radius;
  doc["layer_thickness"] = result.slicyls.layer_thickness;
  json layers = json::array();
  for (const LayerResult& layer : result.layers) {
    json contours = json::array();
    for (std::size_t c = 0; c < layer.contours.contours.size(); ++c) {
      const Contour& contour = layer.contours.contours[c];
      json points = json::array();
      for (const Vec3& p : contour.points) points.push_back({p.x, p.y, p.z});
      json unrolled = json::array();
      for (const auto& q : layer.contours.unrolled[c].points) unrolled.push_back({q[0], q[1]});
      contours.push_back({{"kind", kind_label(contour.kind)},
                          {"winding", contour.winding},
                          {"points", std::move(points)},
                          {"unrolled", std::move(unrolled)}});
    }
    json pairs = json::array();
    for (const auto& [a, b] : layer.contours.type_ii_pairs) pairs.push_back({a, b});
    layers.push_back({{"index", layer.index},
                      {"radius", layer.radius},
                      {"contours", std::move(contours)},
                      {"type_II_pairs", std::move(pairs)}});
  }
  doc["layers"] = std::move(layers);
  return doc.dump() + "\n";
}

std::string layer_to_svg(const LayerResult& layer, const BoundingCylinder& bounding) {
  const double width = kTwoPi * layer.radius;
  const double height = std::max(bounding.length, 1e-9);
  const double margin = 0.02 * std::max(width, height);
  const double stroke = 0.002 * std::max(width, height);

  std::ostringstream out;
  out << std::setprecision(10);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -margin << ' '
      << bounding.x_min - margin << ' ' << width + 2 * margin << ' ' << height + 2 * margin
      << "\">\n";
  out << "<title>layer " << layer.index << " r=" << layer.radius << "</title>\n";
  out << "<defs><clipPath id=\"canvas\"><rect x=\"0\" y=\"" << bounding.x_min << "\" width=\""
      << width << "\" height=\"" << height << "\"/></clipPath></defs>\n";
  out << "<rect x=\"0\" y=\"" << bounding.x_min << "\" width=\"" << width << "\" height=\""
      << height << "\" fill=\"none\" stroke=\"#ccc\" stroke-width=\"" << stroke << "\"/>\n";
  for (const double u : {0.0, width}) {
    out << "<line class=\"seam\" x1=\"" << u << "\" y1=\"" << bounding.x_min << "\" x2=\"" << u
        << "\" y2=\"" << bounding.x_max << "\" stroke=\"#888\" stroke-dasharray=\"" << 4 * stroke
        << "\" stroke-width=\"" << stroke << "\"/>\n";
  }

  for (std::size_t c = 0; c < layer.contours.contours.size(); ++c) {
    const Contour& contour = layer.contours.contours[c];
    const UnrolledContour& flat = layer.contours.unrolled[c];
    if (flat.points.empty()) continue;
    // bring the first point onto the canvas
    const double shift = -width * std::floor(flat.points.front()[1] / width);
    std::ostringstream d;
    d << std::setprecision(10);
    if (contour.kind == ContourKind::TypeII) {
      auto open = flat.points;
      open.push_back({flat.points.front()[0], flat.points.front()[1] + flat.closure_offset});
      append_path(d, open, shift, false);
      d << ' ';
      append_path(d, open, shift - std::copysign(width, flat.closure_offset), false);
      out << "<path class=\"type-II\" clip-path=\"url(#canvas)\" fill=\"none\" stroke=\"#c33\" "
             "stroke-width=\""
          << stroke << "\" d=\"" << d.str() << "\"/>\n";
    } else {
      double lo = flat.points.front()[1];
      double hi = lo;
      for (const auto& q : flat.points) {
        lo = std::min(lo, q[1]);
        hi = std::max(hi, q[1]);
      }
      append_path(d, flat.points, shift, true);
      // contours straddling the seam are drawn once more on the other side
      const bool wraps = lo + shift < 0.0 || hi + shift > width;
      if (hi + shift > width) {
        d << ' ';
        append_path(d, flat.points, shift - width, true);
      }
      if (lo + shift < 0.0) {
        d << ' ';
        append_path(d, flat.points, shift + width, true);
      }
      out << "<path class=\"type-I\"" << (wraps ? " clip-path=\"url(#canvas)\"" : "")
          << " fill=\"none\" stroke=\"#33c\" stroke-width=\"" << stroke << "\" d=\"" << d.str()
          << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<std::filesystem::path> write_svg_layers(const SliceResult& result,
                                                    const std::filesystem::path& base) {
  std::vector<std::filesystem::path> written;
  const auto dir = base.parent_path();
  const auto stem = base.stem().string();
  for (const LayerResult& layer : result.layers) {
    const auto path = dir / (stem + "_layer_" + std::to_string(layer.index) + ".svg");
    write_file(path, layer_to_svg(layer, result.bounding));
    written.push_back(path);
  }
  return written;
}

}  // namespace slicyl
