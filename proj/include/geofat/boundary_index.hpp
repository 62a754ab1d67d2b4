#pragma once

// Uniform-grid bucketing of boundary edges. Answers the same point-location
// and segment-containment questions as the brute predicates in geom.hpp, with
// identical results, but touches only edges near the query.

#include <cstdint>
#include <vector>

#include "geofat/geom.hpp"

namespace geofat {

class BoundaryIndex {
 public:
  explicit BoundaryIndex(const Polygon& poly);

  Location locate(Point p) const;

  /// Same contract as segment_in_polygon (throws on outside endpoints).
  bool segment_inside(Point a, Point b) const;

  /// segment_inside without the endpoint precondition check; the caller
  /// guarantees a and b are in the polygon.
  bool visible(Point a, Point b) const;

  const std::vector<Segment>& edges() const { return edges_; }
  std::size_t cell_count() const { return cells_.size() - 1; }

 private:
  int col(double x) const;
  int row(double y) const;

  // Calls f(edge_index) for every edge bucketed in a cell that the segment
  // ab, thickened by `slack`, may touch. f returns false to stop early.
  template <class F>
  bool visit_along(Point a, Point b, double slack, F&& f) const;

  template <class F>
  bool visit_cell(int cx, int cy, F&& f) const;

  bool near_boundary(Point p) const;
  bool inside_by_ray(Point p) const;

  std::vector<Segment> edges_;
  Bbox box_;
  int nx_ = 1;
  int ny_ = 1;
  double cw_ = 1.0;
  double ch_ = 1.0;
  std::vector<std::uint32_t> cells_;  // CSR offsets, size nx*ny+1
  std::vector<std::uint32_t> items_;
};

}  // namespace geofat
