#include "adsgeom/svg.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace adsgeom {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 360;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(const char* title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
     << "<title>" << title << "</title>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  return os.str();
}

const char* fill_for(RegionKind k) {
  switch (k) {
    case RegionKind::FutureHyperbolic: return "#dbe9f6";
    case RegionKind::PastHyperbolic: return "#f6e3db";
    case RegionKind::DeSitter: return "#eeeeee";
  }
  return "#ffffff";
}

}  // namespace

std::string surface_svg(const HSSurface& s) {
  std::ostringstream os;
  os << header("HS surface");
  // Columns: future regions, de Sitter regions, past regions.
  std::map<int, std::vector<int>> columns;
  for (size_t i = 0; i < s.regions().size(); ++i) {
    const RegionKind k = s.regions()[i].kind;
    columns[k == RegionKind::FutureHyperbolic ? 0 : k == RegionKind::DeSitter ? 1 : 2].push_back(static_cast<int>(i));
  }
  std::vector<std::array<double, 3>> shape(s.regions().size());
  for (const auto& [col, ids] : columns) {
    const double cx = 130 + 230 * col;
    const double step = (kHeight - 40) / static_cast<double>(ids.size());
    const double r = std::min(95.0, 0.42 * step);
    for (size_t n = 0; n < ids.size(); ++n) {
      shape[static_cast<size_t>(ids[n])] = {cx, 20 + step * (n + 0.5), r};
    }
  }
  for (size_t c = 0; c < s.photon_circles().size(); ++c) {
    const auto& pc = s.photon_circles()[c];
    const auto& a = shape[static_cast<size_t>(pc.hyperbolic_region)];
    const auto& b = shape[static_cast<size_t>(pc.de_sitter_region)];
    os << "<line x1=\"" << fmt(a[0]) << "\" y1=\"" << fmt(a[1]) << "\" x2=\"" << fmt(b[0]) << "\" y2=\"" << fmt(b[1])
       << "\" stroke=\"#555555\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (size_t i = 0; i < s.regions().size(); ++i) {
    const Region& reg = s.regions()[i];
    const auto& sh = shape[i];
    os << "<circle cx=\"" << fmt(sh[0]) << "\" cy=\"" << fmt(sh[1]) << "\" r=\"" << fmt(sh[2]) << "\" fill=\""
       << fill_for(reg.kind) << "\" stroke=\"black\"/>\n";
    if (reg.kind == RegionKind::DeSitter && reg.boundary_circles >= 2) {
      os << "<circle cx=\"" << fmt(sh[0]) << "\" cy=\"" << fmt(sh[1]) << "\" r=\"" << fmt(0.45 * sh[2])
         << "\" fill=\"white\" stroke=\"black\"/>\n";
    }
    os << "<text x=\"" << fmt(sh[0]) << "\" y=\"" << fmt(sh[1] - sh[2] - 4) << "\" font-size=\"11\" text-anchor=\"middle\">"
       << escape(std::string(region_kind_name(reg.kind)) + (reg.label.empty() ? "" : " " + reg.label)) << "</text>\n";
    const auto inside = s.singularities_in_region(static_cast<int>(i));
    for (size_t n = 0; n < inside.size(); ++n) {
      const double ang = kTwoPi * static_cast<double>(n) / static_cast<double>(inside.size()) + 0.3;
      const double rad = reg.kind == RegionKind::DeSitter && reg.boundary_circles >= 2 ? 0.72 * sh[2] : 0.5 * sh[2];
      const double x = sh[0] + (inside.size() > 1 ? rad * std::cos(ang) : 0.0);
      const double y = sh[1] + (inside.size() > 1 ? rad * std::sin(ang) : 0.0);
      const auto idx = static_cast<size_t>(inside[n]);
      os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"3.5\" fill=\"black\"/>\n"
         << "<text x=\"" << fmt(x + 5) << "\" y=\"" << fmt(y - 5) << "\" font-size=\"9\">"
         << escape(s.singularities()[idx].label + ": " + describe(s.singularity_types()[idx])) << "</text>\n";
    }
  }
  for (size_t i = 0; i < s.singularities().size(); ++i) {
    const auto& sg = s.singularities()[i];
    if (sg.photon_circle < 0) continue;
    const auto& pc = s.photon_circles()[static_cast<size_t>(sg.photon_circle)];
    const auto& a = shape[static_cast<size_t>(pc.hyperbolic_region)];
    const auto& b = shape[static_cast<size_t>(pc.de_sitter_region)];
    const double x = 0.5 * (a[0] + b[0]);
    const double y = 0.5 * (a[1] + b[1]);
    os << "<rect x=\"" << fmt(x - 3.5) << "\" y=\"" << fmt(y - 3.5) << "\" width=\"7\" height=\"7\" fill=\"black\"/>\n"
       << "<text x=\"" << fmt(x + 5) << "\" y=\"" << fmt(y + 12) << "\" font-size=\"9\">"
       << escape(sg.label + ": " + describe(s.singularity_types()[i])) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string cobweb_svg(const FirstReturnSystem& sys) {
  validate(sys);
  const double x0 = 60;
  const double y0 = 20;
  const double side = kHeight - 60;
  auto to_s = [](double y) { return std::atan(y) / kPi + 0.5; };
  auto from_s = [](double s) { return std::tan(kPi * (s - 0.5)); };
  auto px = [&](double s) { return x0 + side * s; };
  auto py = [&](double s) { return y0 + side * (1 - s); };
  std::ostringstream os;
  os << header("First-return map");
  os << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\"" << fmt(side) << "\" height=\"" << fmt(side)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(px(1)) << "\" y2=\"" << fmt(py(1))
     << "\" stroke=\"#999999\"/>\n";
  const int n = 400;
  std::string path;
  bool pen = false;
  for (int i = 1; i < n; ++i) {
    const double s = static_cast<double>(i) / n;
    const auto r = first_return(sys, from_s(s));
    if (!r) {
      pen = false;
      continue;
    }
    path += (pen ? " L " : " M ") + fmt(px(s)) + " " + fmt(py(to_s(*r)));
    pen = true;
  }
  os << "<path d=\"" << path << "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"/>\n";
  for (double start : {0.2, 0.5, 0.8}) {
    double s = start;
    std::string web = "M " + fmt(px(s)) + " " + fmt(py(0));
    for (int k = 0; k < 12; ++k) {
      const auto r = first_return(sys, from_s(s));
      if (!r) break;
      const double t = to_s(*r);
      web += " L " + fmt(px(s)) + " " + fmt(py(t)) + " L " + fmt(px(t)) + " " + fmt(py(t));
      s = t;
    }
    os << "<path d=\"" << web << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"0.8\"/>\n";
  }
  for (const auto& leaf : detect_ccc(sys).closed_leaves) {
    const double s = to_s(leaf.y);
    os << "<circle cx=\"" << fmt(px(s)) << "\" cy=\"" << fmt(py(s)) << "\" r=\"4\" fill=\""
       << (leaf.degenerate ? "orange" : "black") << "\"/>\n";
  }
  os << "<text x=\"" << fmt(x0 + side + 20) << "\" y=\"40\" font-size=\"12\">base "
     << escape(format_matrix(sys.base_holonomy)) << "</text>\n";
  os << "<text x=\"" << fmt(x0 + side + 20) << "\" y=\"58\" font-size=\"12\">surgeries " << sys.surgeries.size()
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace adsgeom
