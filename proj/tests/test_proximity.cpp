#include <doctest.h>

#include <random>

#include "geofat/generators.hpp"
#include "geofat/oracle.hpp"
#include "geofat/proximity.hpp"
#include "shapes.hpp"

using namespace geofat;

namespace {

std::vector<Point> uniform_in(const GeodesicEngine& e, int n, std::uint64_t seed) {
  const Bbox box = bounding_box(e.polygon());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Point p{ux(rng), uy(rng)};
    if (e.locate(p) == Location::Inside) pts.push_back(p);
  }
  return pts;
}

std::vector<Point> comb_tips(const MarkedPolygon& comb, int n) {
  std::vector<Point> tips;
  for (int i = 1; i <= n; ++i) tips.push_back(comb.marks.at("tip_" + std::to_string(i)));
  return tips;
}

}  // namespace

TEST_CASE("closest pair: small and degenerate inputs") {
  const GeodesicEngine e(shapes::l_shape());
  const ClosestPairResult two = closest_pair(e, {{0.5, 1.5}, {1.5, 0.5}}, 8, 1);
  CHECK(two.n_distance_queries == 1);
  CHECK(two.i == 0);
  CHECK(two.j == 1);
  CHECK(two.distance == e.distance({0.5, 1.5}, {1.5, 0.5}));

  const ClosestPairResult dup = closest_pair(e, {{0.5, 0.5}, {1.5, 0.5}, {0.2, 1.2}, {0.5, 0.5}}, 8, 2);
  CHECK(dup.distance == 0.0);
  CHECK(dup.a == dup.b);

  CHECK_THROWS_AS(closest_pair(e, {{0.5, 0.5}}, 8, 1), InvalidQuery);
  CHECK_THROWS_AS(closest_pair(e, {{0.5, 0.5}, {1.5, 1.5}}, 8, 1), InvalidQuery);
  CHECK_THROWS_AS(closest_pair(e, {{0.5, 0.5}, {0.6, 0.5}}, 0.5, 1), InvalidQuery);
}

TEST_CASE("closest pair equals brute force") {
  SUBCASE("uniform points in polygons") {
    for (const Polygon& poly : {gen_random_convex(10, 4), gen_fat_blob(64, 5), gen_Pm(2, 1e-2).polygon,
                                shapes::square_with_hole()}) {
      const GeodesicEngine e(poly);
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto Q = uniform_in(e, 50, seed);
        const ClosestPairResult r = closest_pair(e, Q, 8, seed);
        const PairResult b = brute_closest_pair(e, Q);
        CHECK(r.distance == b.distance);
        CHECK(r.distance == e.distance(Q[r.i], Q[r.j]));
        CHECK(r.n_distance_queries < 50 * 49 / 2);
      }
    }
  }
  SUBCASE("comb tips") {
    const auto comb = gen_comb(20, 0.02, 0.45);
    const GeodesicEngine e(comb.polygon);
    auto Q = comb_tips(comb, 20);
    const auto extra = uniform_in(e, 20, 3);
    Q.insert(Q.end(), extra.begin(), extra.end());
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
      CHECK(closest_pair(e, Q, 8, seed).distance == brute_closest_pair(e, Q).distance);
  }
}

TEST_CASE("closest pair grid invariants") {
  const GeodesicEngine e(gen_fat_blob(64, 2));
  const auto Q = uniform_in(e, 80, 12);
  int calls = 0;
  const ClosestPairResult r = closest_pair(e, Q, 4, 7, [&](const GridState& g, std::span<const std::size_t> done,
                                                           const ClosestPairResult& cur) {
    ++calls;
    CHECK(g.cell_side == doctest::Approx(g.delta / (2 * g.M)));
    CHECK(g.delta == cur.distance);
    double brute = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < done.size(); ++a)
      for (std::size_t b = a + 1; b < done.size(); ++b) brute = std::min(brute, e.distance(Q[done[a]], Q[done[b]]));
    CHECK(g.delta == brute);
    std::size_t stored = 0;
    for (const auto& [_, bucket] : g.cells) stored += bucket.size();
    CHECK(stored == done.size());
    for (std::size_t idx : done) {
      const auto it = g.cells.find(g.key(Q[idx]));
      REQUIRE(it != g.cells.end());
      CHECK(std::find(it->second.begin(), it->second.end(), idx) != it->second.end());
    }
  });
  CHECK(calls == 79);
  CHECK(r.n_rebuilds >= 1);
}

TEST_CASE("closest pair is deterministic per seed") {
  const GeodesicEngine e(gen_fat_blob(64, 3));
  const auto Q = uniform_in(e, 60, 1);
  const auto a = closest_pair(e, Q, 8, 42), b = closest_pair(e, Q, 8, 42);
  CHECK(a.i == b.i);
  CHECK(a.j == b.j);
  CHECK(a.n_distance_queries == b.n_distance_queries);
}

TEST_CASE("furthest-neighbour coresets") {
  SUBCASE("single point") {
    const GeodesicEngine e(shapes::unit_square());
    const Coreset c = coreset_furthest(e, {{0.3, 0.3}}, 0.5);
    REQUIRE(c.points.size() == 1);
    CHECK(c.indices[0] == 0);
  }
  SUBCASE("square corners with an explicit nu") {
    const GeodesicEngine e(shapes::square(4));
    const std::vector<Point> S{{1, 1}, {3, 1}, {3, 3}, {1, 3}};
    const auto queries = uniform_in(e, 100, 8);
    for (double eps : {1.0, 0.5, 0.25}) {
      const Coreset c = coreset_furthest(e, S, eps, 2 * std::sqrt(2.0));
      CHECK(c.points.size() <= 4);
      CHECK(c.hull_perimeter == doctest::Approx(8.0));
      for (Point q : queries)
        CHECK(furthest_neighbor(e, q, c.points).distance >= (1 - eps) * brute_furthest(e, q, S).distance);
    }
  }
  SUBCASE("guarantee and size bound on blobs") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      const GeodesicEngine e(gen_fat_blob(64, s));
      const auto S = uniform_in(e, 60, 100 + s);
      const auto queries = uniform_in(e, 40, 200 + s);
      for (double eps : {0.5, 0.2, 0.1}) {
        const Coreset c = coreset_furthest(e, S, eps);
        CHECK(perimeter_ratio(e, S) <= c.nu);
        CHECK(c.points.size() <= static_cast<std::size_t>(std::ceil(2 * c.nu / eps)) + 1);
        for (std::size_t k = 0; k < c.points.size(); ++k) CHECK(S[c.indices[k]] == c.points[k]);
        for (Point q : queries) {
          const double got = furthest_neighbor(e, q, c.points).distance;
          const double truth = brute_furthest(e, q, S).distance;
          CHECK(got >= (1 - eps) * truth);
        }
      }
    }
  }
  SUBCASE("smaller epsilon never means fewer points") {
    const GeodesicEngine e(gen_fat_blob(64, 9));
    const auto S = uniform_in(e, 100, 9);
    std::size_t prev = 0;
    for (double eps : {1.0, 0.5, 0.2, 0.1, 0.05}) {
      const std::size_t n = coreset_furthest(e, S, eps, 4.0).points.size();
      CHECK(n >= prev);
      prev = n;
    }
  }
  const GeodesicEngine sq(shapes::unit_square());
  CHECK_THROWS_AS(coreset_furthest(sq, {}, 0.5), InvalidQuery);
  CHECK_THROWS_AS(coreset_furthest(sq, {{0.5, 0.5}}, 0), InvalidQuery);
}

TEST_CASE("furthest neighbour") {
  const GeodesicEngine sq(shapes::unit_square());
  const Neighbor self = furthest_neighbor(sq, {0.3, 0.4}, {{0.3, 0.4}});
  CHECK(self.point == Point{0.3, 0.4});
  CHECK(self.distance == 0.0);

  const GeodesicEngine convex(gen_random_convex(10, 2));
  const auto pts = uniform_in(convex, 30, 4);
  for (std::size_t k = 0; k < 5; ++k) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (dist(pts[k], pts[i]) > dist(pts[k], pts[best])) best = i;
    CHECK(furthest_neighbor(convex, pts[k], pts).index == best);
  }

  const Polygon L = shapes::l_shape();
  const GeodesicEngine e(L);
  const Neighbor n = furthest_neighbor(e, {0.2, 0.2}, {{1.8, 0.2}, {0.2, 1.8}, {1.5, 0.5}});
  CHECK(n.index == 0);  // equal lengths: the lowest index wins
  const DenseGridOracle grid(L, 0.01);
  const double g = grid.distance({0.2, 0.2}, n.point);
  CHECK(g >= n.distance - 1e-9);
  CHECK(g <= 1.0824 * n.distance + 4 * 0.01);
}

TEST_CASE("furthest neighbour ties go to the lowest index") {
  const GeodesicEngine e(shapes::unit_square());
  const Neighbor n = furthest_neighbor(e, {0.5, 0.5}, {{0.5, 0.6}, {0, 0}, {1, 1}, {0, 1}});
  CHECK(n.index == 1);
  CHECK(n.distance == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("greedy spanners") {
  const GeodesicEngine sq(shapes::square(10));
  SUBCASE("two points give one edge") {
    const SpannerGraph g = greedy_spanner(sq, {{1, 1}, {2, 3}}, 0.5);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].weight == doctest::Approx(std::sqrt(5.0)));
  }
  SUBCASE("collinear points give a path") {
    std::vector<Point> line;
    for (int k = 0; k < 8; ++k) line.push_back({1.0 + k, 5.0});
    const SpannerGraph g = greedy_spanner(sq, line, 0.1);
    CHECK(g.edges.size() == 7);
    for (const SpannerEdge& e : g.edges) CHECK(e.j - e.i == 1);
  }
  SUBCASE("stretch stays within 1 + eps") {
    for (const Polygon& poly : {gen_fat_blob(64, 1), gen_Pm(2, 1e-2).polygon}) {
      const GeodesicEngine e(poly);
      const auto S = uniform_in(e, 40, 5);
      const auto D = distance_matrix(e, S);
      for (double eps : {0.1, 0.5, 1.0}) {
        const SpannerGraph g = greedy_spanner(S, D, eps);
        CHECK(max_stretch(g, D) <= 1 + eps + 1e-9);
        CHECK(g.edges.size() >= S.size() - 1);
      }
    }
  }
}

TEST_CASE("distance matrix is symmetric with a zero diagonal") {
  const GeodesicEngine e(shapes::l_shape());
  const std::vector<Point> S{{0.5, 1.5}, {1.5, 0.5}, {0.1, 0.1}};
  const auto D = distance_matrix(e, S);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(D[i * 3 + i] == 0.0);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(D[i * 3 + j] == D[j * 3 + i]);
      if (i != j) CHECK(D[i * 3 + j] == e.distance(S[i], S[j]));
    }
  }
}

TEST_CASE("perimeter ratio") {
  const GeodesicEngine sq(shapes::square(4));
  CHECK(perimeter_ratio(sq, {{1, 1}, {3, 1}, {3, 3}, {1, 3}}) == doctest::Approx(8 / std::sqrt(8.0)));
  CHECK(perimeter_ratio(sq, {{1, 1}, {3, 3}}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(perimeter_ratio(sq, {{1, 1}}), InvalidQuery);
  CHECK_THROWS_AS(perimeter_ratio(sq, {{1, 1}, {1, 1}}), InvalidQuery);

  // tips of a comb: the hull dips between every pair of teeth
  double prev = 0;
  for (int n : {8, 16, 32}) {
    const auto comb = gen_comb(n, 0.01, 0.45);
    const GeodesicEngine e(comb.polygon);
    const double ratio = perimeter_ratio(e, comb_tips(comb, n));
    CHECK(ratio > 1.5 * prev);
    prev = ratio;
  }
}
