#pragma once

// Sampled certification of local fatness and (alpha, beta)-coverage, and the
// closed-form constants derived from them. Reports are evidence gathered on
// a finite sample, not proofs.

#include <cstdint>
#include <vector>

#include "geofat/geodesic.hpp"
#include "geofat/geom.hpp"

namespace geofat {

inline constexpr double kAngleTol = 1e-6;
inline constexpr double kLengthTol = 1e-9;

struct FatnessParams {
  double alpha = 0.0;  // radians, in (0, pi/3]
  double beta = 0.0;   // in (0, 1]
};

/// Throws std::invalid_argument when alpha or beta is out of range.
void check_params(const FatnessParams& params);

struct WitnessTriangle {
  Point apex;
  Point v1;
  Point v2;
};

struct LocalFatReport {
  double gamma = 0.0;
  double min_ratio = 1.0;
  Point witness_center;
  double witness_radius = 0.0;
  int samples = 0;  // disks evaluated
  bool ok() const { return min_ratio >= gamma; }
};

LocalFatReport check_locally_fat(const Polygon& poly, double gamma, int n_centers, int n_radii, std::uint64_t seed);

struct BoundarySample {
  Point point;
  double arc_position = 0.0;  // arc length from the start of the outer ring, rings concatenated
};

struct CoveredReport {
  FatnessParams params;
  double diameter = 0.0;
  double side = 0.0;  // leg length used for candidate triangles
  int tested = 0;
  std::vector<BoundarySample> failures;
  std::vector<WitnessTriangle> witnesses;  // one per accepted sample
  /// Convex vertices whose interior angle is below alpha. Reported apart
  /// from failures: no alpha-fat triangle can have its apex there.
  std::vector<Point> vertex_failures;
  bool ok() const { return failures.empty(); }
};

CoveredReport check_alpha_beta_covered(const GeodesicEngine& engine, const FatnessParams& params, int n_boundary,
                                       int n_dirs);

/// Leg length of the isosceles candidate triangles: all three sides reach
/// beta * diam (the base is the short side when alpha < pi/3).
double witness_leg(const FatnessParams& params, double diameter);

/// Independent re-check of a witness: angles >= alpha - kAngleTol, sides >=
/// beta * diam - kLengthTol, and the triangle lies in the polygon.
bool verify_witness(const GeodesicEngine& engine, const WitnessTriangle& t, const FatnessParams& params,
                    double diameter);

/// Triangle containment: all three sides inside the polygon and no polygon
/// vertex strictly inside.
bool triangle_in_polygon(const GeodesicEngine& engine, Point a, Point b, Point c);

struct DoublingBound {
  long g = 0;
  double c = 0.0;
};

DoublingBound doubling_bound_formula(const FatnessParams& params);

/// Inradius of the isosceles triangle with legs t and apex angle phi.
double fat_triangle_incircle(double t, double phi);

}  // namespace geofat
