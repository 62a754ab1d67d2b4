#include <doctest.h>

#include <random>

#include "geofat/generators.hpp"
#include "geofat/oracle.hpp"
#include "shapes.hpp"

using namespace geofat;

TEST_CASE("grid oracle in a convex polygon") {
  const Polygon sq = shapes::unit_square();
  const double pitch = 0.02;
  const DenseGridOracle grid(sq, pitch);
  CHECK(grid.pitch() == pitch);
  CHECK(grid.node_count() == 51 * 51);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.01, 0.99);
  for (int k = 0; k < 30; ++k) {
    const Point a{U(rng), U(rng)}, b{U(rng), U(rng)};
    const double g = grid.distance(a, b);
    CHECK(g >= dist(a, b) - 1e-9);
    CHECK(g <= 1.09 * dist(a, b) + 4 * pitch);
  }
  CHECK(grid.distance({0.3, 0.3}, {0.3, 0.3}) == 0.0);
  CHECK(oracle_distance(grid, {0.1, 0.1}, {0.1, 0.9}) == doctest::Approx(0.8));
  CHECK_THROWS_AS(grid.distance({0.5, 0.5}, {3, 3}), InvalidQuery);
}

TEST_CASE("grid oracle rejects bad pitches") {
  CHECK_THROWS_AS(DenseGridOracle(shapes::unit_square(), 0), std::invalid_argument);
  CHECK_THROWS_AS(DenseGridOracle(shapes::unit_square(), 1e-5), std::invalid_argument);
}

TEST_CASE("halving the pitch never lengthens node-to-node distances") {
  const Polygon L = shapes::l_shape();
  // points on the coarse lattice are also nodes of every finer one
  const std::vector<std::pair<Point, Point>> pairs{{{0.5, 1.5}, {1.5, 0.5}}, {{0.25, 1.75}, {1.75, 0.25}},
                                                   {{0, 0}, {1.5, 0.75}}};
  std::vector<double> prev(pairs.size(), std::numeric_limits<double>::infinity());
  for (double pitch : {0.125, 0.0625, 0.03125, 0.015625}) {
    const DenseGridOracle grid(L, pitch);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double d = grid.distance(pairs[k].first, pairs[k].second);
      CHECK(d <= prev[k] + 1e-12);
      prev[k] = d;
    }
  }
}

TEST_CASE("grid oracle sees holes") {
  const DenseGridOracle grid(shapes::square_with_hole(), 0.01);
  const double g = grid.distance({0.1, 0.5}, {0.9, 0.5});
  // around the hole: at least the bend through two hole corners
  CHECK(g >= 2 * std::hypot(0.4, 0.25) - 1e-9);
}

TEST_CASE("brute closest pair and furthest") {
  const GeodesicEngine e(shapes::l_shape());
  const std::vector<Point> Q{{0.5, 1.5}, {1.5, 0.5}, {0.2, 0.2}, {0.3, 0.25}};
  const PairResult p = brute_closest_pair(e, Q);
  CHECK(p.i == 2);
  CHECK(p.j == 3);
  CHECK(p.distance == doctest::Approx(std::hypot(0.1, 0.05)));
  CHECK_THROWS_AS(brute_closest_pair(e, {{0.5, 0.5}}), InvalidQuery);
  const PairResult two = brute_closest_pair(e, {{0.5, 1.5}, {1.5, 0.5}});
  CHECK(two.i == 0);
  CHECK(two.j == 1);
  CHECK(brute_closest_pair(e, {{0.5, 1.5}, {0.7, 0.7}, {1.5, 0.5}, {0.7, 0.7}}).distance == 0.0);

  const Neighbor only = brute_furthest(e, {0.1, 0.1}, {{1.9, 0.9}});
  CHECK(only.index == 0);
  CHECK(only.distance == doctest::Approx(dist({0.1, 0.1}, {1.9, 0.9})));
  const Neighbor far = brute_furthest(e, {1.9, 0.5}, Q);
  CHECK(far.index == 0);
  CHECK_THROWS_AS(brute_furthest(e, {0.1, 0.1}, {}), InvalidQuery);
}

TEST_CASE("convexity check finds non-convex regions") {
  const GeodesicEngine e(shapes::square(3));
  const Ring L{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  CHECK_FALSE(geodesic_convexity_check(e, L, 200, 1).empty());
  const Ring box{{0.5, 0.5}, {2.5, 0.5}, {2.5, 2.5}, {0.5, 2.5}};
  CHECK(geodesic_convexity_check(e, box, 200, 1).empty());
}

TEST_CASE("relative hulls pass the convexity check") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (const Polygon& poly : {gen_Pm(2, 1e-2).polygon, gen_fat_blob(48, seed)}) {
      const GeodesicEngine e(poly);
      const Bbox box = bounding_box(poly);
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
      std::vector<Point> S;
      while (S.size() < 8) {
        const Point p{ux(rng), uy(rng)};
        if (e.locate(p) == Location::Inside) S.push_back(p);
      }
      const RelativeHull h = relative_convex_hull(e, S);
      if (polygon_area(Polygon{h.boundary, {}}) <= 1e-9) continue;
      CHECK(geodesic_convexity_check(e, h.boundary, 100, seed).empty());
      ++checked;
    }
  }
  CHECK(checked == 20);
}

TEST_CASE("max stretch") {
  const std::vector<Point> nodes{{0, 0}, {1, 0}, {2, 0}};
  const std::vector<double> D{0, 1, 2, 1, 0, 1, 2, 1, 0};
  SpannerGraph path{nodes, {{0, 1, 1}, {1, 2, 1}}, 0.1};
  CHECK(max_stretch(path, D) == 1.0);
  SpannerGraph detour{nodes, {{0, 1, 1}, {1, 2, 1}}, 0.1};
  const std::vector<double> Dshort{0, 1, 1.5, 1, 0, 1, 1.5, 1, 0};
  CHECK(max_stretch(detour, Dshort) == doctest::Approx(2 / 1.5));
  SpannerGraph broken{nodes, {{0, 1, 1}}, 0.1};
  CHECK(std::isinf(max_stretch(broken, D)));
}
