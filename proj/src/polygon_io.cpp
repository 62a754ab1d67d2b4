#include "geofat/polygon_io.hpp"

#include <fstream>
#include <sstream>

namespace geofat {

Json to_json(Point p) { return Json::array({p.x, p.y}); }

Json to_json(const std::vector<Point>& pts) {
  Json arr = Json::array();
  for (Point p : pts) arr.push_back(to_json(p));
  return arr;
}

Json to_json(const Polygon& poly) {
  Json holes = Json::array();
  for (const auto& h : poly.holes) holes.push_back(to_json(h));
  return Json{{"outer", to_json(poly.outer)}, {"holes", holes}};
}

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("expected a point [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point> points_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of points");
  std::vector<Point> pts;
  pts.reserve(j.size());
  for (const auto& e : j) pts.push_back(point_from_json(e));
  return pts;
}

LoadedPolygon polygon_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("outer")) throw std::invalid_argument("polygon JSON needs an \"outer\" ring");
  LoadedPolygon out;
  out.polygon.outer = points_from_json(j.at("outer"));
  if (j.contains("holes")) {
    if (!j.at("holes").is_array()) throw std::invalid_argument("\"holes\" must be an array of rings");
    for (const auto& h : j.at("holes")) out.polygon.holes.push_back(points_from_json(h));
  }
  out.reoriented = normalize_orientation(out.polygon);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace geofat
