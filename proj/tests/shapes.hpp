#pragma once

// Small hand-built polygons shared by the tests.

#include "geofat/geom.hpp"

namespace shapes {

inline geofat::Polygon unit_square() { return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}}; }

inline geofat::Polygon square(double s) { return {{{0, 0}, {s, 0}, {s, s}, {0, s}}, {}}; }

inline geofat::Polygon l_shape() { return {{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, {}}; }

// unit square minus [0.25, 0.75]^2
inline geofat::Polygon square_with_hole() {
  return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.75}, {0.75, 0.25}}}};
}

}  // namespace shapes
