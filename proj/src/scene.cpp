#include "geofat/scene.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace geofat {

namespace {

std::string num(double v) {
  if (v == 0) v = 0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string xy(Point p) { return num(p.x) + "," + num(-p.y); }

template <class... F>
struct Overload : F... {
  using F::operator()...;
};

void collect(const Layer& layer, std::vector<Point>& pts) {
  std::visit(Overload{
                 [&](const Polygon& p) {
                   const auto v = all_vertices(p);
                   pts.insert(pts.end(), v.begin(), v.end());
                 },
                 [&](const Polyline& l) { pts.insert(pts.end(), l.points.begin(), l.points.end()); },
                 [&](const PointSet& s) { pts.insert(pts.end(), s.points.begin(), s.points.end()); },
                 [&](const std::vector<Circle>& cs) {
                   for (const Circle& c : cs) {
                     pts.push_back(c.center - Point{c.radius, c.radius});
                     pts.push_back(c.center + Point{c.radius, c.radius});
                   }
                 },
                 [&](const GridSpec& g) {
                   pts.push_back(g.origin);
                   pts.push_back(g.origin + Point{g.nx * g.pitch, g.ny * g.pitch});
                 },
             },
             layer.payload);
}

std::string ring_path(const Ring& r) {
  std::string d;
  for (std::size_t i = 0; i < r.size(); ++i) d += (i == 0 ? "M" : " L") + xy(r[i]);
  return d + " Z";
}

}  // namespace

const char* layer_kind(const Layer& layer) {
  static const char* const names[] = {"polygon", "path", "points", "circles", "grid"};
  return names[layer.payload.index()];
}

std::string render_svg(const Scene& scene) {
  if (scene.layers.empty()) throw std::invalid_argument("cannot render an empty scene");
  std::vector<Point> extent;
  for (const Layer& l : scene.layers) {
    if (std::holds_alternative<Polygon>(l.payload)) {
      collect(l, extent);
      break;
    }
  }
  std::vector<Point> all;
  for (const Layer& l : scene.layers) collect(l, all);
  for (Point p : all)
    if (!is_finite(p)) throw std::invalid_argument("scene geometry must be finite");
  if (extent.empty()) extent = all;
  if (extent.empty()) throw std::invalid_argument("scene has no geometry");

  const Bbox box = bounding_box(extent);
  const double w = box.width(), h = box.height();
  const double span = std::max({w, h, 1e-12});
  const double pw = w > 0 ? 0.05 * w : 0.05 * span, ph = h > 0 ? 0.05 * h : 0.05 * span;
  const double unit = (std::max(w, h) + 2 * std::max(pw, ph)) / 500;

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(box.lo.x - pw) + " " +
         num(-box.hi.y - ph) + " " + num(w + 2 * pw) + " " + num(h + 2 * ph) + "\">\n";
  for (const Layer& l : scene.layers) {
    const Style& s = l.style;
    out += "<g class=\"" + std::string(layer_kind(l)) + "\" stroke=\"" + s.stroke + "\" fill=\"" + s.fill +
           "\" stroke-width=\"" + num(s.width * unit) + "\" opacity=\"" + num(s.opacity) + "\">\n";
    std::visit(Overload{
                   [&](const Polygon& p) {
                     std::string d;
                     for (std::size_t r = 0; r < p.ring_count(); ++r) d += (r ? " " : "") + ring_path(p.ring(r));
                     out += "<path fill-rule=\"evenodd\" d=\"" + d + "\"/>\n";
                   },
                   [&](const Polyline& pl) {
                     std::string pts;
                     for (std::size_t i = 0; i < pl.points.size(); ++i) pts += (i ? " " : "") + xy(pl.points[i]);
                     out += "<polyline fill=\"none\" points=\"" + pts + "\"/>\n";
                   },
                   [&](const PointSet& ps) {
                     for (Point p : ps.points)
                       out += "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(-p.y) + "\" r=\"" + num(2 * s.width * unit) +
                              "\"/>\n";
                   },
                   [&](const std::vector<Circle>& cs) {
                     for (const Circle& c : cs)
                       out += "<circle cx=\"" + num(c.center.x) + "\" cy=\"" + num(-c.center.y) + "\" r=\"" +
                              num(c.radius) + "\"/>\n";
                   },
                   [&](const GridSpec& g) {
                     for (long i = 0; i <= g.nx; ++i) {
                       const double x = g.origin.x + i * g.pitch;
                       out += "<line x1=\"" + num(x) + "\" y1=\"" + num(-g.origin.y) + "\" x2=\"" + num(x) + "\" y2=\"" +
                              num(-(g.origin.y + g.ny * g.pitch)) + "\"/>\n";
                     }
                     for (long j = 0; j <= g.ny; ++j) {
                       const double y = g.origin.y + j * g.pitch;
                       out += "<line x1=\"" + num(g.origin.x) + "\" y1=\"" + num(-y) + "\" x2=\"" +
                              num(g.origin.x + g.nx * g.pitch) + "\" y2=\"" + num(-y) + "\"/>\n";
                     }
                   },
               },
               l.payload);
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace geofat
