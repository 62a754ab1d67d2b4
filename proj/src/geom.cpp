#include "geofat/geom.hpp"

#include <algorithm>
#include <numbers>

namespace geofat {

std::size_t Polygon::vertex_count() const {
  std::size_t n = outer.size();
  for (const auto& h : holes) n += h.size();
  return n;
}

std::vector<Segment> boundary_edges(const Polygon& poly) {
  std::vector<Segment> edges;
  edges.reserve(poly.vertex_count());
  for (std::size_t r = 0; r < poly.ring_count(); ++r) {
    const Ring& ring = poly.ring(r);
    for (std::size_t i = 0; i < ring.size(); ++i)
      edges.push_back({ring[i], ring[(i + 1) % ring.size()]});
  }
  return edges;
}

std::vector<Point> all_vertices(const Polygon& poly) {
  std::vector<Point> v;
  v.reserve(poly.vertex_count());
  for (std::size_t r = 0; r < poly.ring_count(); ++r)
    v.insert(v.end(), poly.ring(r).begin(), poly.ring(r).end());
  return v;
}

Orientation orientation(Point p, Point q, Point r) {
  const Point u = q - p;
  const Point v = r - p;
  const double c = cross(u, v);
  const double scale = norm(u) * norm(v);
  if (scale == 0.0 || std::abs(c) <= kOrientTol * scale) return Orientation::Collinear;
  return c > 0 ? Orientation::CCW : Orientation::CW;
}

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::CW: return "CW";
    case Orientation::CCW: return "CCW";
    case Orientation::Collinear: return "COLLINEAR";
  }
  return "?";
}

const char* to_string(Location l) {
  switch (l) {
    case Location::Inside: return "INSIDE";
    case Location::Boundary: return "BOUNDARY";
    case Location::Outside: return "OUTSIDE";
  }
  return "?";
}

double signed_area(const Ring& ring) {
  double a = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) a += cross(ring[i], ring[(i + 1) % n]);
  return 0.5 * a;
}

double ring_length(const Ring& ring) {
  double len = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) len += dist(ring[i], ring[(i + 1) % n]);
  return len;
}

double polygon_area(const Polygon& poly) {
  double a = std::abs(signed_area(poly.outer));
  for (const auto& h : poly.holes) a -= std::abs(signed_area(h));
  return a;
}

double perimeter(const Polygon& poly) {
  double len = ring_length(poly.outer);
  for (const auto& h : poly.holes) len += ring_length(h);
  return len;
}

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return dist(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return dist(p, a + ab * t);
}

bool on_segment(Point p, Point a, Point b) {
  if (p == a || p == b) return true;
  if (orientation(a, b, p) != Orientation::Collinear) return false;
  const Point ab = b - a;
  const double t = dot(p - a, ab) / dot(ab, ab);
  return t >= 0.0 && t <= 1.0;
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const auto o1 = static_cast<int>(orientation(a, b, c));
  const auto o2 = static_cast<int>(orientation(a, b, d));
  const auto o3 = static_cast<int>(orientation(c, d, a));
  const auto o4 = static_cast<int>(orientation(c, d, b));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

namespace detail {

EdgeContact edge_contact(Point a, Point b, const Segment& e) {
  EdgeContact out;
  const auto o1 = static_cast<int>(orientation(a, b, e.a));
  const auto o2 = static_cast<int>(orientation(a, b, e.b));
  if (o1 * o2 > 0) return out;
  const auto o3 = static_cast<int>(orientation(e.a, e.b, a));
  const auto o4 = static_cast<int>(orientation(e.a, e.b, b));
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (o1 * o2 < 0 && o3 * o4 < 0) {
    // an endpoint sitting on the edge within tolerance is a touch, not a crossing;
    // the sign test alone misreads points a few ulps from a vertex
    if (point_segment_distance(a, e.a, e.b) <= kBoundaryTol || point_segment_distance(b, e.a, e.b) <= kBoundaryTol)
      return out;
    for (Point v : {e.a, e.b})
      if (point_segment_distance(v, a, b) <= kBoundaryTol) out.t[out.n_touch++] = dot(v - a, ab) / len2;
    if (out.n_touch == 0) out.proper = true;
    return out;
  }
  auto touch = [&](Point v, int o) {
    if (o != 0) return;
    const double t = dot(v - a, ab) / len2;
    if (t > 0.0 && t < 1.0) out.t[out.n_touch++] = t;
  };
  touch(e.a, o1);
  touch(e.b, o2);
  return out;
}

}  // namespace detail

Location locate_in_ring(const Ring& ring, Point p) {
  bool inside = false;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Segment e{ring[i], ring[(i + 1) % n]};
    if (point_segment_distance(p, e.a, e.b) <= kBoundaryTol) return Location::Boundary;
    double xc;
    if (detail::ray_crossing(p, e, xc) && xc > p.x) inside = !inside;
  }
  return inside ? Location::Inside : Location::Outside;
}

Location point_in_polygon(const Polygon& poly, Point p) {
  bool inside = false;
  for (std::size_t r = 0; r < poly.ring_count(); ++r) {
    const Ring& ring = poly.ring(r);
    for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
      const Segment e{ring[i], ring[(i + 1) % n]};
      // edges entirely left of, above or below p can neither touch it nor cross its ray
      if (std::max(e.a.x, e.b.x) < p.x - kBoundaryTol) continue;
      if (std::min(e.a.y, e.b.y) > p.y + kBoundaryTol || std::max(e.a.y, e.b.y) < p.y - kBoundaryTol) continue;
      if (point_segment_distance(p, e.a, e.b) <= kBoundaryTol) return Location::Boundary;
      double xc;
      if (detail::ray_crossing(p, e, xc) && xc > p.x) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

bool segment_in_polygon(const Polygon& poly, Point a, Point b) {
  if (point_in_polygon(poly, a) == Location::Outside || point_in_polygon(poly, b) == Location::Outside)
    throw InvalidQuery("segment_in_polygon: endpoint outside polygon");
  if (a == b) return true;
  const Point lo{std::min(a.x, b.x) - kBoundaryTol, std::min(a.y, b.y) - kBoundaryTol};
  const Point hi{std::max(a.x, b.x) + kBoundaryTol, std::max(a.y, b.y) + kBoundaryTol};
  std::vector<double> ts{0.0, 1.0};
  for (std::size_t r = 0; r < poly.ring_count(); ++r) {
    const Ring& ring = poly.ring(r);
    for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
      const Point p = ring[i], q = ring[(i + 1) % n];
      if (std::max(p.x, q.x) < lo.x || std::min(p.x, q.x) > hi.x || std::max(p.y, q.y) < lo.y ||
          std::min(p.y, q.y) > hi.y)
        continue;
      const auto c = detail::edge_contact(a, b, {p, q});
      if (c.proper) return false;
      for (int k = 0; k < c.n_touch; ++k) ts.push_back(c.t[k]);
    }
  }
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] <= 1e-15) continue;
    const Point mid = a + (b - a) * (0.5 * (ts[i] + ts[i + 1]));
    if (point_in_polygon(poly, mid) == Location::Outside) return false;
  }
  return true;
}

std::vector<Point> convex_hull(std::span<const Point> pts) {
  std::vector<Point> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end(), lex_less);
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  std::vector<Point> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

double euclidean_diameter(std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("euclidean_diameter: empty point set");
  const auto hull = convex_hull(pts);
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) best = std::max(best, dist(hull[i], hull[j]));
  return best;
}

double interior_angle(const Ring& ring, std::size_t i) {
  const std::size_t n = ring.size();
  const Point prev = ring[(i + n - 1) % n];
  const Point cur = ring[i];
  const Point next = ring[(i + 1) % n];
  const Point u = prev - cur;
  const Point v = next - cur;
  // angle swept counterclockwise from (next - cur) to (prev - cur)
  double a = std::atan2(cross(v, u), dot(v, u));
  if (a <= 0) a += 2 * std::numbers::pi;
  return a;
}

bool is_reflex(const Ring& ring, std::size_t i) {
  const std::size_t n = ring.size();
  return orientation(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) == Orientation::CW;
}

bool normalize_orientation(Polygon& poly) {
  bool changed = false;
  if (signed_area(poly.outer) < 0) {
    std::reverse(poly.outer.begin(), poly.outer.end());
    changed = true;
  }
  for (auto& h : poly.holes) {
    if (signed_area(h) > 0) {
      std::reverse(h.begin(), h.end());
      changed = true;
    }
  }
  return changed;
}

Bbox bounding_box(std::span<const Point> pts) {
  Bbox b{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
  for (Point p : pts) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  }
  return b;
}

Bbox bounding_box(const Polygon& poly) { return bounding_box(poly.outer); }

const char* to_string(DefectKind k) {
  switch (k) {
    case DefectKind::TooFewVertices: return "too few vertices";
    case DefectKind::NonFinite: return "non-finite coordinate";
    case DefectKind::OutOfRange: return "coordinate out of range";
    case DefectKind::DuplicateVertex: return "duplicate consecutive vertex";
    case DefectKind::CollinearVertices: return "collinear consecutive vertices";
    case DefectKind::ZeroArea: return "zero area";
    case DefectKind::OuterOrientation: return "outer orientation";
    case DefectKind::HoleOrientation: return "hole orientation";
    case DefectKind::SelfIntersection: return "self-intersection";
    case DefectKind::HoleOutside: return "hole outside outer ring";
    case DefectKind::HolesOverlap: return "holes overlap";
  }
  return "?";
}

bool ValidationReport::has(DefectKind k) const {
  return std::any_of(defects.begin(), defects.end(), [k](const Defect& d) { return d.kind == k; });
}

namespace {

struct RingEdge {
  Segment s;
  int ring;
  int index;
  int ring_size;
  double minx, maxx;
};

bool adjacent(const RingEdge& e, const RingEdge& f) {
  if (e.ring != f.ring) return false;
  const int d = std::abs(e.index - f.index);
  return d == 1 || d == e.ring_size - 1;
}

// Edges that are consecutive in a ring share exactly one endpoint; anything
// more (overlap) is already reported as a collinear or duplicate defect.
void find_intersections(const Polygon& poly, std::vector<Defect>& out) {
  std::vector<RingEdge> edges;
  for (std::size_t r = 0; r < poly.ring_count(); ++r) {
    const Ring& ring = poly.ring(r);
    const int n = static_cast<int>(ring.size());
    for (int i = 0; i < n; ++i) {
      Segment s{ring[i], ring[(i + 1) % n]};
      edges.push_back({s, static_cast<int>(r), i, n, std::min(s.a.x, s.b.x), std::max(s.a.x, s.b.x)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const RingEdge& a, const RingEdge& b) { return a.minx < b.minx; });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const RingEdge& e = edges[i];
    for (std::size_t j = i + 1; j < edges.size() && edges[j].minx <= e.maxx + kBoundaryTol; ++j) {
      const RingEdge& f = edges[j];
      if (adjacent(e, f)) continue;
      if (std::max(e.s.a.y, e.s.b.y) + kBoundaryTol < std::min(f.s.a.y, f.s.b.y) ||
          std::max(f.s.a.y, f.s.b.y) + kBoundaryTol < std::min(e.s.a.y, e.s.b.y))
        continue;
      if (segments_intersect(e.s.a, e.s.b, f.s.a, f.s.b)) {
        out.push_back({DefectKind::SelfIntersection, e.ring, e.index,
                       "edge " + std::to_string(e.index) + " of ring " + std::to_string(e.ring) + " meets edge " +
                           std::to_string(f.index) + " of ring " + std::to_string(f.ring)});
      }
    }
  }
}

void check_ring(const Ring& ring, int r, std::vector<Defect>& out) {
  const int n = static_cast<int>(ring.size());
  if (n < 3) {
    out.push_back({DefectKind::TooFewVertices, r, -1, std::to_string(n) + " vertices"});
    return;
  }
  for (int i = 0; i < n; ++i) {
    const Point p = ring[i];
    if (!is_finite(p)) out.push_back({DefectKind::NonFinite, r, i, {}});
    else if (std::abs(p.x) > kCoordLimit || std::abs(p.y) > kCoordLimit)
      out.push_back({DefectKind::OutOfRange, r, i, {}});
  }
  for (int i = 0; i < n; ++i) {
    const Point a = ring[i], b = ring[(i + 1) % n], c = ring[(i + 2) % n];
    if (a == b) out.push_back({DefectKind::DuplicateVertex, r, i, {}});
    else if (b != c && orientation(a, b, c) == Orientation::Collinear)
      out.push_back({DefectKind::CollinearVertices, r, (i + 1) % n, {}});
  }
  if (signed_area(ring) == 0.0) out.push_back({DefectKind::ZeroArea, r, -1, {}});
}

}  // namespace

ValidationReport validate(const Polygon& poly) {
  ValidationReport rep;
  auto& d = rep.defects;
  check_ring(poly.outer, 0, d);
  for (std::size_t h = 0; h < poly.holes.size(); ++h) check_ring(poly.holes[h], static_cast<int>(h + 1), d);
  // Orientation, containment and intersection checks need usable rings.
  const bool rings_usable = std::none_of(d.begin(), d.end(), [](const Defect& x) {
    return x.kind == DefectKind::TooFewVertices || x.kind == DefectKind::NonFinite;
  });
  if (!rings_usable) return rep;

  if (signed_area(poly.outer) < 0) d.push_back({DefectKind::OuterOrientation, 0, -1, "outer ring is clockwise"});
  for (std::size_t h = 0; h < poly.holes.size(); ++h)
    if (signed_area(poly.holes[h]) > 0)
      d.push_back({DefectKind::HoleOrientation, static_cast<int>(h + 1), -1, "hole is counterclockwise"});

  find_intersections(poly, d);

  for (std::size_t h = 0; h < poly.holes.size(); ++h) {
    const Ring& hole = poly.holes[h];
    for (std::size_t i = 0; i < hole.size(); ++i) {
      if (locate_in_ring(poly.outer, hole[i]) != Location::Inside) {
        d.push_back({DefectKind::HoleOutside, static_cast<int>(h + 1), static_cast<int>(i), {}});
        break;
      }
    }
    for (std::size_t g = 0; g < poly.holes.size(); ++g) {
      if (g == h) continue;
      if (locate_in_ring(poly.holes[g], hole.front()) != Location::Outside) {
        d.push_back({DefectKind::HolesOverlap, static_cast<int>(h + 1), static_cast<int>(g + 1), {}});
      }
    }
  }
  return rep;
}

}  // namespace geofat
