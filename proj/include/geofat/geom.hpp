#pragma once

// Planar primitives, polygon representation, validation and Euclidean
// measures. Everything here is a pure function over immutable values.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geofat {

/// Collinearity tolerance on the sine of the angle at the first point.
inline constexpr double kOrientTol = 1e-12;
/// A point within this distance of a boundary edge is classified BOUNDARY.
inline constexpr double kBoundaryTol = 1e-9;
/// All scene coordinates must lie in [-kCoordLimit, kCoordLimit].
inline constexpr double kCoordLimit = 1e6;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

/// Lexicographic order (x, then y).
constexpr bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Ring vertices in order; closed implicitly (first vertex is not repeated).
using Ring = std::vector<Point>;

/// Outer ring counterclockwise, holes clockwise. With that convention the
/// interior is always to the left of every directed boundary edge.
struct Polygon {
  Ring outer;
  std::vector<Ring> holes;

  std::size_t vertex_count() const;
  std::size_t ring_count() const { return 1 + holes.size(); }
  const Ring& ring(std::size_t i) const { return i == 0 ? outer : holes[i - 1]; }
};

struct Segment {
  Point a;
  Point b;
};

/// All directed boundary edges, ring by ring.
std::vector<Segment> boundary_edges(const Polygon& poly);
/// All ring vertices in ring order (outer first).
std::vector<Point> all_vertices(const Polygon& poly);

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };

Orientation orientation(Point p, Point q, Point r);

enum class Location { Inside, Boundary, Outside };

const char* to_string(Orientation o);
const char* to_string(Location l);

double signed_area(const Ring& ring);
double ring_length(const Ring& ring);
double polygon_area(const Polygon& poly);
double perimeter(const Polygon& poly);

/// Distance from p to the closed segment ab.
double point_segment_distance(Point p, Point a, Point b);

/// Closed-segment intersection under the orientation tolerance.
bool segments_intersect(Point a, Point b, Point c, Point d);

/// p lies on the closed segment ab (collinear and between the endpoints).
bool on_segment(Point p, Point a, Point b);

/// Classification of p against a ring alone (crossing number).
Location locate_in_ring(const Ring& ring, Point p);

Location point_in_polygon(const Polygon& poly, Point p);

/// True iff the closed segment ab stays inside the closed region.
/// Throws InvalidQuery if an endpoint is outside.
bool segment_in_polygon(const Polygon& poly, Point a, Point b);

/// Strictly convex hull, counterclockwise, starting at the lexicographically
/// smallest point. Collinear points are dropped.
std::vector<Point> convex_hull(std::span<const Point> pts);

double euclidean_diameter(std::span<const Point> pts);

/// Interior angle (radians, in (0, 2pi)) at vertex i of a ring whose
/// interior lies to the left.
double interior_angle(const Ring& ring, std::size_t i);

/// Vertex i of a ring (interior on the left) is reflex: interior angle > pi.
bool is_reflex(const Ring& ring, std::size_t i);

/// Force outer CCW and holes CW. Returns true if anything was reversed.
bool normalize_orientation(Polygon& poly);

struct Bbox {
  Point lo;
  Point hi;
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
};
Bbox bounding_box(std::span<const Point> pts);
Bbox bounding_box(const Polygon& poly);

enum class DefectKind {
  TooFewVertices,
  NonFinite,
  OutOfRange,
  DuplicateVertex,
  CollinearVertices,
  ZeroArea,
  OuterOrientation,
  HoleOrientation,
  SelfIntersection,
  HoleOutside,
  HolesOverlap,
};

const char* to_string(DefectKind k);

struct Defect {
  DefectKind kind;
  int ring = -1;   // 0 = outer, i = hole i-1
  int index = -1;  // vertex or edge index within the ring, when meaningful
  std::string detail;
};

struct ValidationReport {
  std::vector<Defect> defects;
  bool ok() const { return defects.empty(); }
  bool has(DefectKind k) const;
};

/// Checks every ring and polygon invariant and reports all defects found.
ValidationReport validate(const Polygon& poly);

class InvalidPolygon : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidQuery : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Contact between the query segment ab and one boundary edge.
struct EdgeContact {
  bool proper = false;  // interiors cross transversally
  int n_touch = 0;      // edge endpoints lying strictly inside ab
  double t[2] = {0.0, 0.0};
};

EdgeContact edge_contact(Point a, Point b, const Segment& e);

/// Crossing-number contribution of edge e for a ray from p towards +x.
/// Returns true and the crossing abscissa when the edge straddles p.y.
inline bool ray_crossing(Point p, const Segment& e, double& xc) {
  if ((e.a.y > p.y) == (e.b.y > p.y)) return false;
  xc = e.a.x + (p.y - e.a.y) * (e.b.x - e.a.x) / (e.b.y - e.a.y);
  return true;
}

}  // namespace detail

}  // namespace geofat
