#include <doctest.h>

#include <random>

#include "geofat/boundary_index.hpp"
#include "geofat/geom.hpp"
#include "geofat/polygon_io.hpp"
#include "shapes.hpp"

using namespace geofat;

TEST_CASE("orientation basics") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == Orientation::CCW);
  CHECK(orientation({0, 0}, {1, 0}, {2, 0}) == Orientation::Collinear);
  CHECK(orientation({0, 0}, {0, 1}, {1, 1}) == Orientation::CW);
}

TEST_CASE("orientation is antisymmetric") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-10, 10);
  for (int k = 0; k < 2000; ++k) {
    const Point p{U(rng), U(rng)}, q{U(rng), U(rng)}, r{U(rng), U(rng)};
    CHECK(static_cast<int>(orientation(p, q, r)) == -static_cast<int>(orientation(p, r, q)));
  }
}

TEST_CASE("validate") {
  CHECK(validate(shapes::unit_square()).ok());

  Polygon cw = shapes::unit_square();
  std::reverse(cw.outer.begin(), cw.outer.end());
  CHECK(validate(cw).has(DefectKind::OuterOrientation));

  const Polygon bowtie{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}, {}};
  CHECK(validate(bowtie).has(DefectKind::SelfIntersection));

  SUBCASE("all defects are reported") {
    Polygon bad{{{0, 0}, {1, 0}, {1, 0}, {1, 1}, {0.5, 1}, {0, 1}}, {}};
    bad.outer.push_back({0, 0.5});
    bad.outer.push_back({0, 0.25});
    const auto rep = validate(bad);
    CHECK(rep.has(DefectKind::DuplicateVertex));
    CHECK(rep.has(DefectKind::CollinearVertices));
  }
  SUBCASE("holes") {
    CHECK(validate(shapes::square_with_hole()).ok());
    Polygon outside = shapes::unit_square();
    outside.holes.push_back({{2, 2}, {2, 3}, {3, 3}, {3, 2}});
    CHECK(validate(outside).has(DefectKind::HoleOutside));
    Polygon ccw_hole = shapes::unit_square();
    ccw_hole.holes.push_back({{0.25, 0.25}, {0.75, 0.25}, {0.75, 0.75}, {0.25, 0.75}});
    CHECK(validate(ccw_hole).has(DefectKind::HoleOrientation));
  }
  SUBCASE("range and finiteness") {
    CHECK(validate(Polygon{{{0, 0}, {2e6, 0}, {0, 1}}, {}}).has(DefectKind::OutOfRange));
    CHECK(validate(Polygon{{{0, 0}, {NAN, 0}, {0, 1}}, {}}).has(DefectKind::NonFinite));
    CHECK(validate(Polygon{{{0, 0}, {1, 0}}, {}}).has(DefectKind::TooFewVertices));
  }
}

TEST_CASE("point in polygon") {
  const Polygon sq = shapes::unit_square();
  CHECK(point_in_polygon(sq, {0.5, 0.5}) == Location::Inside);
  CHECK(point_in_polygon(sq, {0.5, 0}) == Location::Boundary);
  CHECK(point_in_polygon(sq, {1.5, 0.5}) == Location::Outside);
  CHECK(point_in_polygon(shapes::square_with_hole(), {0.5, 0.5}) == Location::Outside);
  CHECK(point_in_polygon(shapes::square_with_hole(), {0.25, 0.5}) == Location::Boundary);
}

TEST_CASE("point in polygon is invariant under translation and scaling") {
  const Polygon base = shapes::l_shape();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-0.5, 2.5);
  for (auto [shift, scale] : {std::pair{Point{3, -7}, 1.0}, {Point{0, 0}, 2.5}, {Point{-1, 4}, 0.125}}) {
    Polygon t = base;
    for (Point& p : t.outer) p = p * scale + shift;
    for (int k = 0; k < 500; ++k) {
      const Point q{U(rng), U(rng)};
      CHECK(point_in_polygon(base, q) == point_in_polygon(t, q * scale + shift));
    }
  }
}

TEST_CASE("segment in polygon") {
  CHECK(segment_in_polygon(shapes::unit_square(), {0.1, 0.1}, {0.9, 0.9}));
  const Polygon L = shapes::l_shape();
  CHECK(segment_in_polygon(L, {0.5, 1.5}, {1.5, 0.5}));  // grazes the reflex corner
  CHECK(segment_in_polygon(L, {0.4, 1.5}, {1.5, 0.4}));  // passes inside the corner
  CHECK_FALSE(segment_in_polygon(L, {0.6, 1.5}, {1.5, 0.6}));
  CHECK(segment_in_polygon(L, {0, 0}, {2, 0}));  // along an edge
  CHECK_FALSE(segment_in_polygon(shapes::square_with_hole(), {0.1, 0.5}, {0.9, 0.5}));
  CHECK(segment_in_polygon(shapes::square_with_hole(), {0.1, 0.1}, {0.9, 0.1}));
  CHECK_THROWS_AS(segment_in_polygon(L, {1.5, 1.5}, {0.5, 0.5}), InvalidQuery);
}

TEST_CASE("segment in polygon is symmetric and matches the index") {
  const Polygon poly = shapes::square_with_hole();
  const BoundaryIndex index(poly);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(0, 1);
  int checked = 0;
  while (checked < 1500) {
    const Point a{U(rng), U(rng)}, b{U(rng), U(rng)};
    if (point_in_polygon(poly, a) == Location::Outside || point_in_polygon(poly, b) == Location::Outside) continue;
    const bool ab = segment_in_polygon(poly, a, b);
    CHECK(ab == segment_in_polygon(poly, b, a));
    CHECK(ab == index.visible(a, b));
    CHECK(point_in_polygon(poly, a) == index.locate(a));
    ++checked;
  }
}

TEST_CASE("euclidean diameter") {
  CHECK(euclidean_diameter(std::vector<Point>{{3, 4}}) == 0.0);
  CHECK(euclidean_diameter(shapes::unit_square().outer) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS(euclidean_diameter(std::vector<Point>{}));

  std::mt19937_64 rng(1);
  std::normal_distribution<double> N(0, 1);
  for (int n : {1, 2, 3, 10, 100, 500}) {
    std::vector<Point> pts(n);
    for (Point& p : pts) p = {N(rng), N(rng)};
    double brute = 0;
    for (Point a : pts)
      for (Point b : pts) brute = std::max(brute, dist(a, b));
    CHECK(euclidean_diameter(pts) == brute);
  }
}

TEST_CASE("lengths and areas") {
  CHECK(ring_length(shapes::unit_square().outer) == doctest::Approx(4.0));
  CHECK(polygon_area(shapes::unit_square()) == doctest::Approx(1.0));
  CHECK(polygon_area(shapes::square_with_hole()) == doctest::Approx(0.75));
  const Ring tri{{0, 0}, {4, 0}, {0, 3}};
  CHECK(ring_length(tri) == doctest::Approx(12.0));
  CHECK(polygon_area(Polygon{tri, {}}) == doctest::Approx(6.0));
  CHECK(polygon_area(shapes::square_with_hole()) < polygon_area(shapes::unit_square()));
}

TEST_CASE("polygon json round trip") {
  const Polygon poly = shapes::square_with_hole();
  const Json j = to_json(poly);
  const LoadedPolygon back = polygon_from_json(Json::parse(j.dump()));
  CHECK_FALSE(back.reoriented);
  CHECK(back.polygon.outer == poly.outer);
  CHECK(back.polygon.holes == poly.holes);
  CHECK(to_json(back.polygon).dump() == j.dump());

  Polygon cw = poly;
  std::reverse(cw.outer.begin(), cw.outer.end());
  CHECK(polygon_from_json(to_json(cw)).reoriented);
}
