#pragma once

// Exact area of disk ∩ polygon, split into connected components. The clipped
// boundary is assembled from polygon chains inside the disk and circle arcs
// inside the polygon; areas come from Green's theorem on that boundary.

#include "geofat/geom.hpp"

namespace geofat {

struct DiskClip {
  double total_area = 0.0;      // area(D ∩ P)
  double component_area = 0.0;  // area of the component of D ∩ P containing the center
  int components = 0;
};

/// The center must not lie on the polygon boundary.
DiskClip clip_disk(const Polygon& poly, Point center, double r);

}  // namespace geofat
