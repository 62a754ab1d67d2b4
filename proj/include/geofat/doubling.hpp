#pragma once

// Upper and lower certificates for the doubling constant of the geodesic
// metric, both evaluated on a grid sample of the geodesic disk.

#include <vector>

#include "geofat/fatness.hpp"
#include "geofat/geodesic.hpp"

namespace geofat {

struct CoverResult {
  Point center;
  double radius = 0.0;
  long grid = 0;  // g: the side-3r square is split into g x g cells
  std::vector<Point> cover_centers;
  double cover_radius = 0.0;
  std::vector<Point> uncovered;
  std::size_t samples = 0;
};

/// Grid points of the g x g grid on the side-3r square around p that lie in
/// the polygon, checked as centers of radius-r/2 geodesic disks against the
/// disk sample at pitch sample_density.
CoverResult grid_cover(const GeodesicEngine& engine, Point p, double r, const FatnessParams& params,
                       double sample_density);

/// Centers of seven disks of radius r/2 covering the Euclidean disk D(c, r):
/// c itself and six points at distance r*sqrt(3)/2 on the 30-degree rays.
std::vector<Point> seven_disk_cover(Point c, double r);

struct PackingResult {
  Point center;
  double radius = 0.0;
  std::vector<Point> witnesses;
  double separation = 0.0;
  std::size_t samples = 0;
};

/// Greedy farthest-point selection inside the sampled disk D_g(p, r) while
/// the next point stays more than r from all chosen ones. Pairwise
/// separation is re-verified before returning.
PackingResult packing_lower_bound(const GeodesicEngine& engine, Point p, double r, double sample_density);

struct GrowthRow {
  int m = 0;
  std::size_t n_vertices = 0;
  std::size_t lower_bound = 0;
  double seconds = 0.0;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  bool complete = true;
  std::string error;  // set when a row could not be computed
};

/// For each m, packing_lower_bound on P*_m at (c, 2).
GrowthTable doubling_growth_experiment(int m_lo, int m_hi, double eps, double sample_density);

}  // namespace geofat
