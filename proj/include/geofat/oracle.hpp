#pragma once

// Slow reference implementations for tests and cross-checks. Only the plain
// geom predicates are shared with the engine; the grid oracle in particular
// never touches the boundary index or the routing graph.

#include <cstdint>
#include <vector>

#include "geofat/geodesic.hpp"
#include "geofat/proximity.hpp"

namespace geofat {

/// 8-neighbour grid graph over the polygon. Nodes sit at lo + pitch*(i, j)
/// and are kept when point_in_polygon says INSIDE or BOUNDARY; links are kept
/// when segment_in_polygon holds.
class DenseGridOracle {
 public:
  DenseGridOracle(const Polygon& poly, double pitch);

  double pitch() const { return pitch_; }
  std::size_t node_count() const { return n_nodes_; }
  Point node_point(long i, long j) const { return {lo_.x + i * pitch_, lo_.y + j * pitch_}; }

  /// Grid-graph distance between the nodes nearest to a and b that see them,
  /// plus the two snapping legs. Throws InvalidQuery if a or b cannot snap or
  /// the nodes are disconnected.
  double distance(Point a, Point b) const;

 private:
  long snap(Point p) const;

  Polygon poly_;
  double pitch_;
  Point lo_;
  long nx_ = 0;
  long ny_ = 0;
  std::size_t n_nodes_ = 0;
  std::vector<char> inside_;     // nx*ny
  std::vector<std::uint8_t> link_;  // bit k: link towards kNeighbours[k]
};

double oracle_distance(const DenseGridOracle& o, Point a, Point b);

struct PairResult {
  std::size_t i = 0;
  std::size_t j = 0;
  double distance = 0.0;
};

/// Minimum over all pairs of engine.distance; the first minimal pair in
/// (i, j) order wins.
PairResult brute_closest_pair(const GeodesicEngine& engine, const std::vector<Point>& Q);

Neighbor brute_furthest(const GeodesicEngine& engine, Point q, const std::vector<Point>& S);

struct ConvexityViolation {
  Point a;
  Point b;
  Point outside;  // waypoint or segment midpoint that left the region
};

/// Samples n_pairs point pairs inside the region (a closed ring) and reports
/// the pairs whose shortest path leaves it.
std::vector<ConvexityViolation> geodesic_convexity_check(const GeodesicEngine& engine, const Ring& region,
                                                         int n_pairs, std::uint64_t seed);

/// Largest graph-distance / D ratio over all node pairs, by Dijkstra from
/// every node. Infinity if the graph is disconnected.
double max_stretch(const SpannerGraph& g, const std::vector<double>& D);

}  // namespace geofat
