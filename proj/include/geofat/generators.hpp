#pragma once

// Deterministic polygon families: the Hilbert-corridor polygons P_m, their
// chained variant P*_m, spiky combs, random convex polygons and smooth blobs.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "geofat/geom.hpp"

namespace geofat {

struct MarkedPolygon {
  Polygon polygon;
  std::map<std::string, Point> marks;
};

struct Rect {
  double x0, y0, x1, y1;
};

/// Boundary of (union of free rects) minus (union of wall rects), traced on
/// the compressed grid of all rect coordinates. Returns one polygon per
/// connected component, in a deterministic order. Throws std::logic_error if
/// two components meet at a single corner.
std::vector<Polygon> trace_free_region(const std::vector<Rect>& free, const std::vector<Rect>& walls);

/// Wall rectangles of P_m with absolute corridor width eps, in unit-square
/// coordinates.
std::vector<Rect> pm_walls(int m, double eps);

/// Rectangles that fill each of the three top-level openings of P_m
/// (0: west, 1: centre, 2: east).
Rect pm_opening_plug(int which, int m, double eps);

/// Throws std::invalid_argument unless 1 <= m and 0 < eps < 2^-(m+3).
void check_family_params(int m, double eps);

MarkedPolygon gen_P1(double eps);
MarkedPolygon gen_Pm(int m, double eps);
MarkedPolygon gen_Pstar(int m, double eps);

MarkedPolygon gen_comb(int n_teeth, double tooth_width, double tooth_depth);
Polygon gen_random_convex(int n, std::uint64_t seed);
Polygon gen_fat_blob(int n, std::uint64_t seed);

}  // namespace geofat
