#include <doctest.h>

#include <numbers>

#include "geofat/circle_clip.hpp"
#include "geofat/fatness.hpp"
#include "geofat/generators.hpp"
#include "shapes.hpp"

using namespace geofat;

namespace {

constexpr double kPi = std::numbers::pi;

// inradius from the vertex coordinates: area over semi-perimeter
double heron_inradius(Point a, Point b, Point c) {
  const double s = 0.5 * (dist(a, b) + dist(b, c) + dist(c, a));
  return std::abs(cross(b - a, c - a)) / 2 / s;
}

}  // namespace

TEST_CASE("parameter ranges") {
  CHECK_NOTHROW(check_params({kPi / 3, 1.0}));
  CHECK_THROWS_AS(check_params({0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(check_params({1.2, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(check_params({0.3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(check_params({0.3, 1.5}), std::invalid_argument);
}

TEST_CASE("doubling bound formula") {
  const DoublingBound b = doubling_bound_formula({kPi / 3, 0.1});
  CHECK(b.g == 185);
  CHECK(b.c == 34596.0);
  // small beta makes the second term dominate, small alpha the first
  const DoublingBound wide = doubling_bound_formula({kPi / 3, 1.0});
  CHECK(wide.g == 56);
  CHECK(wide.c == 3249.0);
  double prev = std::numeric_limits<double>::infinity();
  for (double a : {0.1, 0.3, 0.6, 1.0}) {
    CHECK(doubling_bound_formula({a, 0.2}).c <= prev);
    prev = doubling_bound_formula({a, 0.2}).c;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double b : {0.01, 0.1, 0.5, 1.0}) {
    CHECK(doubling_bound_formula({0.4, b}).c <= prev);
    prev = doubling_bound_formula({0.4, b}).c;
  }
}

TEST_CASE("fat triangle incircle matches the vertex construction") {
  for (double phi : {0.1, 0.5, kPi / 3, 1.5, 2.5}) {
    for (double t : {0.01, 1.0, 7.0}) {
      const Point a{0, 0}, b{t, 0}, c{t * std::cos(phi), t * std::sin(phi)};
      CHECK(fat_triangle_incircle(t, phi) == doctest::Approx(heron_inradius(a, b, c)).epsilon(1e-12));
    }
  }
  CHECK(fat_triangle_incircle(1, kPi / 3) == doctest::Approx(1 / (2 * std::sqrt(3.0))));
  // long legs guarantee a unit incircle
  CHECK(fat_triangle_incircle(4, kPi / 2) >= 1);
  for (double phi : {0.05, 0.3, kPi / 3}) CHECK(fat_triangle_incircle(4 / std::sin(phi), phi) >= 1);
  CHECK(fat_triangle_incircle(6, 0.7) == doctest::Approx(2 * fat_triangle_incircle(3, 0.7)));
  CHECK_THROWS_AS(fat_triangle_incircle(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(fat_triangle_incircle(1, kPi), std::invalid_argument);
}

TEST_CASE("local fatness") {
  SUBCASE("a square is at least quarter fat") {
    const LocalFatReport r = check_locally_fat(shapes::unit_square(), 0.2, 128, 16, 3);
    CHECK(r.samples > 0);
    CHECK(r.min_ratio >= 0.25 - 1e-6);
    CHECK(r.min_ratio <= 1.0);
    CHECK(r.ok());
  }
  SUBCASE("a thin comb is not") {
    const LocalFatReport r = check_locally_fat(gen_comb(16, 0.01, 0.45).polygon, 0.1, 256, 16, 3);
    CHECK_FALSE(r.ok());
    CHECK(r.min_ratio < 0.05);
    CHECK(r.witness_radius > 0);
  }
  SUBCASE("convex polygons: no worse than the sharpest corner") {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const Polygon p = gen_random_convex(12, s);
      double sharpest = kPi;
      for (std::size_t i = 0; i < p.outer.size(); ++i) sharpest = std::min(sharpest, interior_angle(p.outer, i));
      const LocalFatReport r = check_locally_fat(p, 0.01, 64, 16, s);
      CHECK(r.min_ratio >= std::min(0.25, sharpest / (2 * kPi)) - 1e-3);
    }
  }
  SUBCASE("the corridor polygon keeps a positive constant") {
    const LocalFatReport r = check_locally_fat(gen_Pm(2, 1e-3).polygon, 1 / (8 * kPi), 128, 16, 5);
    CHECK(r.min_ratio >= 1 / (8 * kPi) - 0.01);
  }
  CHECK_THROWS_AS(check_locally_fat(shapes::unit_square(), 0, 10, 10, 1), std::invalid_argument);
}

TEST_CASE("disk clipped to a comb spike") {
  const auto comb = gen_comb(16, 0.01, 0.45);
  const Point c{0.725, 0};  // halfway along the first tooth
  const double r = 0.1;
  const Point base = comb.polygon.outer[0], tip = comb.polygon.outer[1];
  REQUIRE(tip == comb.marks.at("tip_1"));
  // width of the tooth at abscissa x, intersected with the disk chord there
  auto width = [&](double x) {
    const double tooth = x < base.x || x > tip.x ? 0.0 : 2 * std::abs(base.y) * (tip.x - x) / (tip.x - base.x);
    const double chord = 2 * std::sqrt(std::max(0.0, r * r - (x - c.x) * (x - c.x)));
    return std::min(tooth, chord);
  };
  const int steps = 200000;
  const double h = 2 * r / steps;
  double area = 0;
  for (int k = 0; k < steps; ++k) area += width(c.x - r + (k + 0.5) * h) * h;
  const DiskClip clip = clip_disk(comb.polygon, c, r);
  CHECK(clip.component_area == doctest::Approx(area).epsilon(1e-6));
  CHECK(clip.component_area / (kPi * r * r) < 0.05);
}

TEST_CASE("witness triangles") {
  const GeodesicEngine sq(shapes::unit_square());
  const FatnessParams params{kPi / 4, 0.3};
  const double diam = std::sqrt(2.0);
  CHECK(verify_witness(sq, {{0, 0}, {1, 0}, {0, 1}}, params, diam));
  CHECK_FALSE(verify_witness(sq, {{0, 0}, {0.2, 0}, {0, 0.2}}, params, diam));   // too short
  CHECK_FALSE(verify_witness(sq, {{0, 0}, {1, 0}, {1, 0.05}}, params, diam));    // too thin
  CHECK_FALSE(verify_witness(sq, {{0, 0}, {1.5, 0}, {0, 1}}, params, diam));     // leaves the square
  CHECK(witness_leg(params, diam) >= params.beta * diam);

  // a triangle spanning the hole of a square with a hole
  const GeodesicEngine holed(shapes::square_with_hole());
  CHECK_FALSE(triangle_in_polygon(holed, {0.1, 0.1}, {0.9, 0.1}, {0.5, 0.9}));
  CHECK(triangle_in_polygon(holed, {0.05, 0.05}, {0.2, 0.05}, {0.05, 0.2}));
}

TEST_CASE("coverage certification") {
  const FatnessParams params{0.2, 0.05};
  SUBCASE("blobs") {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const GeodesicEngine e(gen_fat_blob(64, s));
      const CoveredReport rep = check_alpha_beta_covered(e, params, 256, 64);
      CHECK(rep.ok());
      CHECK(rep.vertex_failures.empty());
      CHECK(rep.tested > 200);
      CHECK(rep.witnesses.size() == static_cast<std::size_t>(rep.tested));
      for (const auto& w : rep.witnesses) CHECK(verify_witness(e, w, params, rep.diameter));
    }
  }
  SUBCASE("unit square with a hand-placed witness") {
    const GeodesicEngine e(shapes::unit_square());
    const FatnessParams p{kPi / 6, 0.1};
    CHECK(check_alpha_beta_covered(e, p, 128, 64).ok());
    const double leg = witness_leg(p, std::sqrt(2.0));
    const Point apex{0.5, 0};
    CHECK(verify_witness(e, {apex, apex + Point{std::cos(1.4), std::sin(1.4)} * leg,
                             apex + Point{std::cos(1.4 + kPi / 6), std::sin(1.4 + kPi / 6)} * leg},
                         p, std::sqrt(2.0)));
  }
  SUBCASE("random convex polygons at weak parameters") {
    for (std::uint64_t s = 1; s <= 5; ++s)
      CHECK(check_alpha_beta_covered(GeodesicEngine(gen_random_convex(12, s)), {0.1, 0.01}, 128, 64).ok());
  }
  SUBCASE("thin corridors fail") {
    const GeodesicEngine e(gen_Pstar(2, 1e-4).polygon);
    CHECK_FALSE(check_alpha_beta_covered(e, {kPi / 6, 0.1}, 256, 64).failures.empty());
  }
  SUBCASE("weaker parameters never fail more") {
    const GeodesicEngine e(gen_fat_blob(64, 4));
    const auto strong = check_alpha_beta_covered(e, {0.6, 0.3}, 256, 64);
    const auto weak = check_alpha_beta_covered(e, {0.3, 0.15}, 256, 64);
    CHECK(weak.failures.size() <= strong.failures.size());
  }
  SUBCASE("a thin comb fails") {
    const GeodesicEngine e(gen_comb(8, 0.005, 0.45).polygon);
    const CoveredReport rep = check_alpha_beta_covered(e, {0.3, 0.2}, 256, 64);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.vertex_failures.empty());
  }
}
