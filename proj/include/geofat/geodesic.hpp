#pragma once

// Geodesic metric inside a polygon with holes. Shortest paths bend only at
// reflex vertices, so routing runs over the graph of mutually visible,
// bitangent reflex-vertex pairs with precomputed all-pairs distances. The
// full vertex visibility graph is still available on demand.

#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "geofat/boundary_index.hpp"
#include "geofat/geom.hpp"

namespace geofat {

struct GeodesicPath {
  std::vector<Point> waypoints;
  double length = 0.0;
};

class GeodesicEngine;

/// Geodesic distances from one fixed source to arbitrary targets.
class SourceField {
 public:
  SourceField(const GeodesicEngine& engine, Point source);

  Point source() const { return source_; }
  /// +infinity when q is not reachable from the source.
  double distance_to(Point q) const;
  GeodesicPath path_to(Point q) const;

 private:
  // Last routing vertex before q on a shortest path, -1 for the direct
  // segment, -2 if unreachable.
  int last_hop(Point q, double& length) const;

  const GeodesicEngine* engine_;
  Point source_;
  std::vector<double> dist_;  // per routing vertex
  std::vector<int> entry_;    // first routing vertex on the path to each
};

class GeodesicEngine {
 public:
  using Adjacency = std::vector<std::vector<std::pair<int, double>>>;

  /// Throws InvalidPolygon if validate(poly) reports defects.
  explicit GeodesicEngine(Polygon poly);

  const Polygon& polygon() const { return poly_; }
  const BoundaryIndex& index() const { return index_; }
  const std::vector<Point>& vertices() const { return verts_; }

  Location locate(Point p) const { return index_.locate(p); }
  bool contains(Point p) const { return locate(p) != Location::Outside; }
  /// Segment containment; both endpoints must be in the polygon.
  bool visible(Point a, Point b) const { return index_.visible(a, b); }

  /// Visibility graph over all ring vertices, edge (u,v) iff the segment is
  /// inside the polygon, weighted by Euclidean length. Built on first use.
  const Adjacency& visibility_graph() const;

  double distance(Point a, Point b) const;
  GeodesicPath shortest_path(Point a, Point b) const;
  SourceField field(Point source) const;

  std::size_t routing_vertex_count() const { return routing_.size(); }

 private:
  friend class SourceField;

  struct RoutingVertex {
    Point p;
    Point prev;
    Point next;
  };

  /// The segment x-v can be extended or bent around v without entering the
  /// polygon's exterior: both ring neighbours of v lie on one side of line xv.
  bool tangent_at(Point x, int v) const;

  void build_routing();
  void require_inside(Point p) const;

  Polygon poly_;
  BoundaryIndex index_;
  std::vector<Point> verts_;
  std::vector<RoutingVertex> routing_;
  std::vector<double> apsp_;  // R x R, symmetric
  std::vector<int> pred_;     // R x R, pred_[s*R + t] = predecessor of t in s's tree

  mutable std::once_flag vis_once_;
  mutable Adjacency vis_;
};

GeodesicEngine build_engine(const Polygon& poly);
GeodesicPath shortest_path(const GeodesicEngine& engine, Point a, Point b);
double geodesic_distance(const GeodesicEngine& engine, Point a, Point b);

struct RelativeHull {
  /// Closed polyline; the last point connects back to the first. A single
  /// point for |hull(S)| = 1, a path and its reverse for collinear S.
  std::vector<Point> boundary;
  double perimeter = 0.0;
  /// Points of S at which the boundary turns, counterclockwise.
  std::vector<Point> anchors;
  /// Index in boundary of each anchor.
  std::vector<std::size_t> anchor_pos;
};

RelativeHull relative_convex_hull(const GeodesicEngine& engine, const std::vector<Point>& S);

/// Grid points p + density*(i, j) inside P with geodesic distance <= r from
/// p, in row-major order (j, then i).
std::vector<Point> geodesic_disk_sample(const GeodesicEngine& engine, Point p, double r, double density);

}  // namespace geofat
