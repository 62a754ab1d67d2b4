#include "geofat/circle_clip.hpp"

#include <algorithm>
#include <numbers>

namespace geofat {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

struct Piece {
  bool arc = false;
  Point a, b;             // straight piece
  double th0 = 0, dth = 0;  // arc from angle th0, counterclockwise by dth
};

using Loop = std::vector<Piece>;

struct Chain {
  std::vector<Point> pts;
  double th_in = 0, th_out = 0;
};

double ccw_delta(double from, double to) {
  double d = std::fmod(to - from, kTwoPi);
  if (d < 0) d += kTwoPi;
  return d;
}

double loop_area(const Loop& loop, double r) {
  double a = 0;
  for (const Piece& p : loop) a += p.arc ? r * r * p.dth : cross(p.a, p.b);
  return 0.5 * a;
}

// Crossing-number test for a ray from q towards +x.
bool loop_contains(const Loop& loop, double r, Point q) {
  bool inside = false;
  for (const Piece& p : loop) {
    if (!p.arc) {
      double xc;
      if (detail::ray_crossing(q, {p.a, p.b}, xc) && xc > q.x) inside = !inside;
      continue;
    }
    if (std::abs(q.y) >= r) continue;
    const double h = std::sqrt(r * r - q.y * q.y);
    for (double x : {-h, h}) {
      if (x <= q.x) continue;
      if (p.dth >= kTwoPi || ccw_delta(p.th0, std::atan2(q.y, x)) < p.dth) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

DiskClip clip_disk(const Polygon& poly, Point center, double r) {
  DiskClip out;
  if (!(r > 0)) return out;
  const double r2 = r * r;
  std::vector<Chain> chains;
  std::vector<Loop> loops;
  bool any_crossing = false;

  for (std::size_t ri = 0; ri < poly.ring_count(); ++ri) {
    const Ring& ring = poly.ring(ri);
    // split every edge at its circle crossings; classify sub-pieces
    std::vector<Point> from, to;
    std::vector<char> in;
    for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
      const Point a = ring[i] - center, b = ring[(i + 1) % n] - center;
      const Point d = b - a;
      const double A = dot(d, d), B = 2 * dot(a, d), C = dot(a, a) - r2;
      double ts[2];
      int nt = 0;
      const double disc = B * B - 4 * A * C;
      if (disc > 0) {
        const double s = std::sqrt(disc);
        const double q = -0.5 * (B + std::copysign(s, B));
        double t1 = q / A, t2 = C / q;
        if (t1 > t2) std::swap(t1, t2);
        for (double t : {t1, t2})
          if (t > 0 && t < 1) ts[nt++] = t;
      }
      Point prev = a;
      for (int k = 0; k <= nt; ++k) {
        const Point next = k < nt ? a + d * ts[k] : b;
        const Point mid = (prev + next) * 0.5;
        from.push_back(prev);
        to.push_back(next);
        in.push_back(dot(mid, mid) < r2);
        prev = next;
      }
    }
    const std::size_t m = in.size();
    const auto n_in = std::count(in.begin(), in.end(), 1);
    if (n_in == 0) continue;
    if (n_in == static_cast<long>(m)) {
      Loop loop;
      for (std::size_t k = 0; k < m; ++k) loop.push_back({false, from[k], to[k]});
      loops.push_back(std::move(loop));
      continue;
    }
    any_crossing = true;
    std::size_t start = 0;
    while (!(in[start] && !in[(start + m - 1) % m])) ++start;
    for (std::size_t step = 0; step < m;) {
      const std::size_t k = (start + step) % m;
      if (!in[k]) {
        ++step;
        continue;
      }
      Chain ch;
      ch.pts.push_back(from[k]);
      while (step < m && in[(start + step) % m]) {
        ch.pts.push_back(to[(start + step) % m]);
        ++step;
      }
      ch.th_in = std::atan2(ch.pts.front().y, ch.pts.front().x);
      ch.th_out = std::atan2(ch.pts.back().y, ch.pts.back().x);
      chains.push_back(std::move(ch));
    }
  }

  if (!any_crossing) {
    // the circle itself bounds a component iff it runs through the polygon
    if (point_in_polygon(poly, center + Point{r, 0}) != Location::Outside) {
      Piece full;
      full.arc = true;
      full.dth = kTwoPi;
      loops.push_back({full});
    }
  } else {
    // after leaving the disk, follow the circle counterclockwise to the
    // nearest entry
    std::vector<int> next(chains.size());
    std::vector<double> gap(chains.size());
    for (std::size_t i = 0; i < chains.size(); ++i) {
      double best = kTwoPi + 1;
      for (std::size_t j = 0; j < chains.size(); ++j) {
        const double dl = ccw_delta(chains[i].th_out, chains[j].th_in);
        if (dl < best) {
          best = dl;
          next[i] = static_cast<int>(j);
        }
      }
      gap[i] = best;
    }
    std::vector<char> used(chains.size(), 0);
    for (std::size_t s = 0; s < chains.size(); ++s) {
      if (used[s]) continue;
      Loop loop;
      for (int c = static_cast<int>(s); !used[c]; c = next[c]) {
        used[c] = 1;
        const auto& pts = chains[c].pts;
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) loop.push_back({false, pts[k], pts[k + 1]});
        Piece arc;
        arc.arc = true;
        arc.th0 = chains[c].th_out;
        arc.dth = gap[c];
        loop.push_back(arc);
      }
      loops.push_back(std::move(loop));
    }
  }

  std::vector<double> areas(loops.size());
  for (std::size_t i = 0; i < loops.size(); ++i) {
    areas[i] = loop_area(loops[i], r);
    out.total_area += areas[i];
    if (areas[i] > 0) ++out.components;
  }
  int home = -1;
  for (std::size_t i = 0; i < loops.size(); ++i)
    if (areas[i] > 0 && loop_contains(loops[i], r, {0, 0})) home = static_cast<int>(i);
  if (home < 0) return out;
  out.component_area = areas[home];
  for (std::size_t i = 0; i < loops.size(); ++i) {
    if (areas[i] >= 0) continue;
    const Piece& p = loops[i].front();
    if (loop_contains(loops[home], r, p.a)) out.component_area += areas[i];
  }
  return out;
}

}  // namespace geofat
