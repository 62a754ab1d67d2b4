#pragma once

// Layered SVG scenes: polygons, red shortest paths, point sets, disks and
// grids. Output is deterministic text; y is flipped so the scene reads with
// y pointing up.

#include <string>
#include <variant>
#include <vector>

#include "geofat/geom.hpp"

namespace geofat {

struct Circle {
  Point center;
  double radius = 0.0;
};

struct GridSpec {
  Point origin;
  double pitch = 0.0;
  long nx = 0;  // number of cells in each direction
  long ny = 0;
};

struct Polyline {
  std::vector<Point> points;
};

struct PointSet {
  std::vector<Point> points;
};

struct Style {
  std::string stroke = "black";
  std::string fill = "none";
  double width = 1.0;  // in units of 1/500 of the view extent
  double opacity = 1.0;
};

struct Layer {
  std::variant<Polygon, Polyline, PointSet, std::vector<Circle>, GridSpec> payload;
  Style style;
};

struct Scene {
  std::vector<Layer> layers;

  Scene& add(Layer layer) {
    layers.push_back(std::move(layer));
    return *this;
  }
};

const char* layer_kind(const Layer& layer);

/// Throws std::invalid_argument on an empty scene or non-finite geometry.
/// The view box is the bounding box of the first polygon layer (or of all
/// geometry when there is none) padded by 5% on every side.
std::string render_svg(const Scene& scene);

}  // namespace geofat
