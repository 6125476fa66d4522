#include "tropwave/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace tropwave {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string face_color(LatticeVec v) {
  std::uint64_t h = static_cast<std::uint64_t>(v.i * 73856093L) ^ static_cast<std::uint64_t>(v.j * 19349663L);
  int hue = static_cast<int>(h % 360);
  return "hsl(" + std::to_string(hue) + ",55%,82%)";
}

}  // namespace

std::string render_svg(const TropicalSeries& f, const std::vector<Point>& points, const SvgOptions& opt) {
  const Polygon& outline = f.domain().outline();
  double x0 = to_double(outline[0].x), x1 = x0, y0 = to_double(outline[0].y), y1 = y0;
  for (const auto& p : outline) {
    x0 = std::min(x0, to_double(p.x));
    x1 = std::max(x1, to_double(p.x));
    y0 = std::min(y0, to_double(p.y));
    y1 = std::max(y1, to_double(p.y));
  }
  double span = std::max({x1 - x0, y1 - y0, 1e-9});
  double scale = (opt.size - 2 * opt.margin) / span;
  double w = (x1 - x0) * scale + 2 * opt.margin;
  double h = (y1 - y0) * scale + 2 * opt.margin;
  auto px = [&](const Point& p) { return num((to_double(p.x) - x0) * scale + opt.margin); };
  auto py = [&](const Point& p) { return num((y1 - to_double(p.y)) * scale + opt.margin); };
  auto path = [&](const Polygon& poly) {
    std::string s;
    for (std::size_t i = 0; i < poly.size(); ++i) s += (i ? " " : "") + px(poly[i]) + "," + py(poly[i]);
    return s;
  };

  TropicalCurve c = extract_curve(f);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
                    "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
  if (opt.tint_faces) {
    out += "<g id=\"faces\" stroke=\"none\">\n";
    for (const auto& face : c.faces)
      out += "<polygon points=\"" + path(face.poly) + "\" fill=\"" + face_color(face.v) + "\"><title>" +
             std::to_string(face.v.i) + "," + std::to_string(face.v.j) + "</title></polygon>\n";
    out += "</g>\n";
  }
  out += "<polygon id=\"domain\" points=\"" + path(outline) + "\" fill=\"none\" stroke=\"#555\" stroke-width=\"1\"/>\n";
  out += "<g id=\"edges\" stroke=\"#111\" stroke-linecap=\"round\">\n";
  for (const auto& e : c.edges) {
    if (e.ray) continue;
    const Point& a = c.vertices[e.a].p;
    const Point& b = c.vertices[e.b].p;
    out += "<line x1=\"" + px(a) + "\" y1=\"" + py(a) + "\" x2=\"" + px(b) + "\" y2=\"" + py(b) +
           "\" stroke-width=\"" + num(1.5 * static_cast<double>(e.weight)) + "\"/>\n";
  }
  out += "</g>\n";
  if (!points.empty()) {
    out += "<g id=\"points\" fill=\"#c00\">\n";
    for (const auto& p : points) out += "<circle cx=\"" + px(p) + "\" cy=\"" + py(p) + "\" r=\"3\"/>\n";
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace tropwave
