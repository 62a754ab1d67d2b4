#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "geofat/geom.hpp"

namespace geofat {

using Json = nlohmann::json;

Json to_json(Point p);
Json to_json(const std::vector<Point>& pts);
Json to_json(const Polygon& poly);

Point point_from_json(const Json& j);
std::vector<Point> points_from_json(const Json& j);

struct LoadedPolygon {
  Polygon polygon;
  bool reoriented = false;  // orientation had to be normalized on load
};

/// Parses {"outer": [[x,y],...], "holes": [[[x,y],...],...]}. Orientation is
/// normalized; reoriented reports whether that changed anything.
LoadedPolygon polygon_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace geofat
