#include "geofat/fatness.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <stdexcept>

#include "geofat/boundary_index.hpp"
#include "geofat/circle_clip.hpp"
#include "geofat/parallel.hpp"

namespace geofat {

namespace {

constexpr double kPi = std::numbers::pi;

Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

double ccw_delta(double from, double to) {
  double d = std::fmod(to - from, 2 * kPi);
  if (d < 0) d += 2 * kPi;
  return d;
}

std::vector<Point> sample_centers(const Polygon& poly, const BoundaryIndex& index, int n_centers, double diam,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int n_grid = (n_centers + 1) / 2;
  const int n_bnd = n_centers - n_grid;
  const Bbox box = bounding_box(poly);
  const double fill = std::max(1e-6, polygon_area(poly) / (box.width() * box.height()));

  // stratified: one jittered point per grid cell, refined until enough land inside
  std::vector<Point> centers;
  for (double k = std::ceil(std::sqrt(n_grid / fill)); static_cast<int>(centers.size()) < n_grid; k = std::ceil(k * 1.5)) {
    centers.clear();
    const int kk = static_cast<int>(k);
    const double cw = box.width() / kk, ch = box.height() / kk;
    std::vector<Point> inside;
    for (int j = 0; j < kk; ++j)
      for (int i = 0; i < kk; ++i) {
        const Point p{box.lo.x + (i + U(rng)) * cw, box.lo.y + (j + U(rng)) * ch};
        if (index.locate(p) == Location::Inside) inside.push_back(p);
      }
    if (static_cast<int>(inside.size()) < n_grid) {
      if (kk > 4096) break;
      continue;
    }
    // spread the picks evenly over the inside cells
    for (int t = 0; t < n_grid; ++t) centers.push_back(inside[static_cast<std::size_t>(t) * inside.size() / n_grid]);
  }

  // boundary-biased: just inside a random boundary point, log-uniform offset
  const auto edges = boundary_edges(poly);
  std::vector<double> cum{0.0};
  for (const Segment& e : edges) cum.push_back(cum.back() + dist(e.a, e.b));
  int added = 0;
  for (int attempt = 0; added < n_bnd && attempt < 100 * (n_bnd + 1); ++attempt) {
    const double s = U(rng) * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), s);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()) - 1, edges.size() - 1);
    const Segment& e = edges[k];
    const double len = dist(e.a, e.b);
    const Point dir = (e.b - e.a) * (1.0 / len);
    const Point on = e.a + dir * (s - cum[k]);
    const double off = diam * std::pow(10.0, -5.0 + 4.0 * U(rng));
    const Point p = on + Point{-dir.y, dir.x} * off;
    if (index.locate(p) != Location::Inside) continue;
    centers.push_back(p);
    ++added;
  }
  return centers;
}

}  // namespace

void check_params(const FatnessParams& params) {
  if (!(params.alpha > 0) || params.alpha > kPi / 3 + 1e-15)
    throw std::invalid_argument("alpha must lie in (0, pi/3]");
  if (!(params.beta > 0) || params.beta > 1) throw std::invalid_argument("beta must lie in (0, 1]");
}

LocalFatReport check_locally_fat(const Polygon& poly, double gamma, int n_centers, int n_radii, std::uint64_t seed) {
  if (!(gamma > 0) || gamma > 1) throw std::invalid_argument("gamma must lie in (0, 1]");
  if (n_centers < 1 || n_radii < 1) throw std::invalid_argument("need at least one center and one radius");
  const BoundaryIndex index(poly);
  const auto verts = all_vertices(poly);
  const double diam = euclidean_diameter(verts);
  std::mt19937_64 rng(seed);
  const auto centers = sample_centers(poly, index, n_centers, diam, rng);

  std::vector<double> radii(n_radii);
  for (int k = 0; k < n_radii; ++k) radii[k] = kLengthTol * std::pow(diam / kLengthTol, static_cast<double>(k) / n_radii);

  struct Best {
    double ratio = 2.0;
    double radius = 0.0;
    int samples = 0;
  };
  std::vector<Best> best(centers.size());
  parallel_for(centers.size(), [&](std::size_t i) {
    const Point c = centers[i];
    double far = 0.0;
    for (Point v : verts) far = std::max(far, dist(c, v));
    for (double r : radii) {
      if (far <= r) continue;  // disk contains the whole polygon
      const double ratio = clip_disk(poly, c, r).component_area / (kPi * r * r);
      ++best[i].samples;
      if (ratio < best[i].ratio) best[i] = {ratio, r, best[i].samples};
    }
  });

  LocalFatReport rep;
  rep.gamma = gamma;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    rep.samples += best[i].samples;
    if (best[i].samples > 0 && best[i].ratio < rep.min_ratio) {
      rep.min_ratio = best[i].ratio;
      rep.witness_center = centers[i];
      rep.witness_radius = best[i].radius;
    }
  }
  rep.min_ratio = std::clamp(rep.min_ratio, 0.0, 1.0);
  return rep;
}

double witness_leg(const FatnessParams& params, double diameter) {
  return params.beta * diameter / std::min(1.0, 2 * std::sin(params.alpha / 2));
}

bool triangle_in_polygon(const GeodesicEngine& engine, Point a, Point b, Point c) {
  if (!engine.contains(a) || !engine.contains(b) || !engine.contains(c)) return false;
  if (!engine.visible(a, b) || !engine.visible(b, c) || !engine.visible(c, a)) return false;
  if (orientation(a, b, c) == Orientation::CW) std::swap(b, c);
  const Bbox box = bounding_box(std::vector<Point>{a, b, c});
  for (Point v : engine.vertices()) {
    if (v.x <= box.lo.x || v.x >= box.hi.x || v.y <= box.lo.y || v.y >= box.hi.y) continue;
    if (orientation(a, b, v) == Orientation::CCW && orientation(b, c, v) == Orientation::CCW &&
        orientation(c, a, v) == Orientation::CCW)
      return false;
  }
  return true;
}

bool verify_witness(const GeodesicEngine& engine, const WitnessTriangle& t, const FatnessParams& params,
                    double diameter) {
  const Point p[3] = {t.apex, t.v1, t.v2};
  for (int i = 0; i < 3; ++i) {
    const Point a = p[i], b = p[(i + 1) % 3], c = p[(i + 2) % 3];
    if (dist(a, b) < params.beta * diameter - kLengthTol) return false;
    const double ang = std::abs(std::atan2(cross(b - a, c - a), dot(b - a, c - a)));
    if (ang < params.alpha - kAngleTol) return false;
  }
  return triangle_in_polygon(engine, t.apex, t.v1, t.v2);
}

CoveredReport check_alpha_beta_covered(const GeodesicEngine& engine, const FatnessParams& params, int n_boundary,
                                       int n_dirs) {
  check_params(params);
  if (n_boundary < 1 || n_dirs < 1) throw std::invalid_argument("need positive sample counts");
  const Polygon& poly = engine.polygon();
  CoveredReport rep;
  rep.params = params;
  rep.diameter = euclidean_diameter(engine.vertices());
  rep.side = witness_leg(params, rep.diameter);
  const double alpha = params.alpha;

  const auto edges = boundary_edges(poly);
  std::vector<double> cum{0.0};
  for (const Segment& e : edges) cum.push_back(cum.back() + dist(e.a, e.b));
  const double per = cum.back();

  struct Outcome {
    bool skipped = false;
    bool found = false;
    BoundarySample sample;
    WitnessTriangle witness;
  };
  std::vector<Outcome> res(n_boundary);
  parallel_for(res.size(), [&](std::size_t k) {
    Outcome& o = res[k];
    const double s = (k + 0.5) * per / n_boundary;
    const auto it = std::upper_bound(cum.begin(), cum.end(), s);
    const std::size_t ei = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()) - 1, edges.size() - 1);
    const Segment& e = edges[ei];
    const double along = s - cum[ei];
    const double len = cum[ei + 1] - cum[ei];
    if (along <= 1e-9 * per || len - along <= 1e-9 * per) {
      o.skipped = true;  // sample fell on a vertex
      return;
    }
    const Point p = e.a + (e.b - e.a) * (along / len);
    o.sample = {p, s};
    const double phi = std::atan2(e.b.y - e.a.y, e.b.x - e.a.x);
    // canonical bisector directions whose legs both point into the interior
    std::vector<std::pair<double, double>> dirs;
    const double lo = phi + alpha / 2, width = kPi - alpha;
    for (int d = 0; d < n_dirs; ++d) {
      const double psi = 2 * kPi * d / n_dirs;
      const double off = ccw_delta(lo, psi);
      if (off <= width) dirs.push_back({std::abs(off - width / 2), psi});
    }
    std::sort(dirs.begin(), dirs.end());
    for (auto [_, psi] : dirs) {
      const Point v1 = p + unit(psi - alpha / 2) * rep.side;
      const Point v2 = p + unit(psi + alpha / 2) * rep.side;
      if (triangle_in_polygon(engine, p, v1, v2)) {
        o.found = true;
        o.witness = {p, v1, v2};
        return;
      }
    }
  });
  for (const Outcome& o : res) {
    if (o.skipped) continue;
    ++rep.tested;
    if (o.found) rep.witnesses.push_back(o.witness);
    else rep.failures.push_back(o.sample);
  }
  for (std::size_t r = 0; r < poly.ring_count(); ++r) {
    const Ring& ring = poly.ring(r);
    for (std::size_t i = 0; i < ring.size(); ++i)
      if (interior_angle(ring, i) < alpha - kAngleTol) rep.vertex_failures.push_back(ring[i]);
  }
  return rep;
}

DoublingBound doubling_bound_formula(const FatnessParams& params) {
  check_params(params);
  const double s = std::sin(params.alpha);
  const long g1 = static_cast<long>(std::ceil(48.0 / s));
  const long g2 = static_cast<long>(std::ceil(16.0 / (params.beta * s)));
  const double c1 = static_cast<double>(g1 + 1) * static_cast<double>(g1 + 1);
  const double c2 = static_cast<double>(g2 + 1) * static_cast<double>(g2 + 1);
  return {std::max(g1, g2), std::max(c1, c2)};
}

double fat_triangle_incircle(double t, double phi) {
  if (!(t > 0) || !(phi > 0) || !(phi < kPi)) throw std::invalid_argument("need t > 0 and phi in (0, pi)");
  return t * t * std::sin(phi) / (2 * t * (1 + std::sin(phi / 2)));
}

}  // namespace geofat
