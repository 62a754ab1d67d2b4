#pragma once

// Proximity structures over the geodesic metric: randomized-grid closest
// pair, furthest-neighbour coresets on the relative convex hull, greedy
// spanners and the perimeter/diameter ratio of relative hulls.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "geofat/geodesic.hpp"

namespace geofat {

struct ClosestPairResult {
  std::size_t i = 0;
  std::size_t j = 0;
  Point a;
  Point b;
  double distance = 0.0;
  long n_distance_queries = 0;
  long n_rebuilds = 0;
};

struct CellKey {
  std::int64_t x;
  std::int64_t y;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    return std::hash<std::int64_t>()(k.x * 0x9E3779B97F4A7C15LL ^ k.y);
  }
};

struct GridState {
  double delta = 0.0;
  double cell_side = 0.0;
  double M = 0.0;
  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> cells;

  CellKey key(Point p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / cell_side)), static_cast<std::int64_t>(std::floor(p.y / cell_side))};
  }
};

/// Called after every insertion or rebuild with the grid, the indices of the
/// processed points (in processing order) and the current pair.
using GridObserver = std::function<void(const GridState&, std::span<const std::size_t>, const ClosestPairResult&)>;

ClosestPairResult closest_pair(const GeodesicEngine& engine, const std::vector<Point>& Q, double M,
                               std::uint64_t seed, const GridObserver& observer = {});

struct Coreset {
  std::vector<Point> points;
  std::vector<std::size_t> indices;  // into S
  double epsilon = 0.0;
  double nu = 0.0;
  double hull_perimeter = 0.0;
  double spacing = 0.0;  // (epsilon / (2 nu)) * hull_perimeter
};

/// nu defaults to 1.25 x the measured perimeter ratio of S.
Coreset coreset_furthest(const GeodesicEngine& engine, const std::vector<Point>& S, double epsilon,
                         std::optional<double> nu = std::nullopt);

struct Neighbor {
  std::size_t index = 0;
  Point point;
  double distance = 0.0;
};

Neighbor furthest_neighbor(const GeodesicEngine& engine, Point q, const std::vector<Point>& C);

struct SpannerEdge {
  std::size_t i;
  std::size_t j;
  double weight;
};

struct SpannerGraph {
  std::vector<Point> nodes;
  std::vector<SpannerEdge> edges;
  double epsilon = 0.0;
};

/// All pairwise geodesic distances (symmetric, zero diagonal), row-major.
std::vector<double> distance_matrix(const GeodesicEngine& engine, const std::vector<Point>& S);

SpannerGraph greedy_spanner(const GeodesicEngine& engine, const std::vector<Point>& S, double epsilon);
SpannerGraph greedy_spanner(const std::vector<Point>& S, const std::vector<double>& dist, double epsilon);

double perimeter_ratio(const GeodesicEngine& engine, const std::vector<Point>& S);

}  // namespace geofat
