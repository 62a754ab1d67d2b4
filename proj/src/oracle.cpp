#include "geofat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

#include "geofat/parallel.hpp"

namespace geofat {

namespace {

constexpr long kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr long kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

DenseGridOracle::DenseGridOracle(const Polygon& poly, double pitch) : poly_(poly), pitch_(pitch) {
  if (!(pitch > 0)) throw std::invalid_argument("grid pitch must be positive");
  const Bbox box = bounding_box(poly);
  lo_ = box.lo;
  nx_ = static_cast<long>(std::floor(box.width() / pitch)) + 1;
  ny_ = static_cast<long>(std::floor(box.height() / pitch)) + 1;
  if (static_cast<double>(nx_) * static_cast<double>(ny_) > 2e7) throw std::invalid_argument("grid pitch too fine");
  inside_.assign(static_cast<std::size_t>(nx_ * ny_), 0);
  link_.assign(inside_.size(), 0);
  parallel_for(static_cast<std::size_t>(ny_), [&](std::size_t row) {
    const long j = static_cast<long>(row);
    for (long i = 0; i < nx_; ++i)
      if (point_in_polygon(poly_, node_point(i, j)) != Location::Outside) inside_[j * nx_ + i] = 1;
  });
  n_nodes_ = static_cast<std::size_t>(std::count(inside_.begin(), inside_.end(), 1));
  // forward directions 0..3 are stored on the node, 4..7 on the neighbour
  parallel_for(static_cast<std::size_t>(ny_), [&](std::size_t row) {
    const long j = static_cast<long>(row);
    for (long i = 0; i < nx_; ++i) {
      if (!inside_[j * nx_ + i]) continue;
      for (int k = 0; k < 4; ++k) {
        const long ni = i + kDx[k], nj = j + kDy[k];
        if (ni < 0 || nj < 0 || ni >= nx_ || nj >= ny_ || !inside_[nj * nx_ + ni]) continue;
        if (segment_in_polygon(poly_, node_point(i, j), node_point(ni, nj))) link_[j * nx_ + i] |= 1u << k;
      }
    }
  });
}

long DenseGridOracle::snap(Point p) const {
  const long ci = std::lround((p.x - lo_.x) / pitch_);
  const long cj = std::lround((p.y - lo_.y) / pitch_);
  std::vector<std::pair<double, long>> cand;
  for (long j = cj - 3; j <= cj + 3; ++j)
    for (long i = ci - 3; i <= ci + 3; ++i)
      if (i >= 0 && j >= 0 && i < nx_ && j < ny_ && inside_[j * nx_ + i])
        cand.push_back({dist(p, node_point(i, j)), j * nx_ + i});
  std::sort(cand.begin(), cand.end());
  for (auto [_, id] : cand)
    if (segment_in_polygon(poly_, p, node_point(id % nx_, id / nx_))) return id;
  throw InvalidQuery("grid oracle: no visible node near query point");
}

double DenseGridOracle::distance(Point a, Point b) const {
  if (a == b) return 0.0;
  const long s = snap(a), t = snap(b);
  const double legs = dist(a, node_point(s % nx_, s / nx_)) + dist(b, node_point(t % nx_, t / nx_));
  std::vector<double> d(inside_.size(), kInf);
  using Item = std::pair<double, long>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[s] = 0;
  pq.push({0, s});
  const double diag = pitch_ * std::sqrt(2.0);
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (du > d[u]) continue;
    if (u == t) return du + legs;
    const long i = u % nx_, j = u / nx_;
    for (int k = 0; k < 8; ++k) {
      const long ni = i + kDx[k], nj = j + kDy[k];
      if (ni < 0 || nj < 0 || ni >= nx_ || nj >= ny_) continue;
      const long v = nj * nx_ + ni;
      const bool linked = k < 4 ? (link_[u] >> k) & 1u : (link_[v] >> (k - 4)) & 1u;
      if (!linked) continue;
      const double nd = du + ((k & 1) ? diag : pitch_);
      if (nd < d[v]) {
        d[v] = nd;
        pq.push({nd, v});
      }
    }
  }
  throw InvalidQuery("grid oracle: query points are disconnected");
}

double oracle_distance(const DenseGridOracle& o, Point a, Point b) { return o.distance(a, b); }

PairResult brute_closest_pair(const GeodesicEngine& engine, const std::vector<Point>& Q) {
  if (Q.size() < 2) throw InvalidQuery("brute_closest_pair needs at least two points");
  PairResult best{0, 1, kInf};
  for (std::size_t i = 0; i < Q.size(); ++i)
    for (std::size_t j = i + 1; j < Q.size(); ++j) {
      const double d = engine.distance(Q[i], Q[j]);
      if (d < best.distance) best = {i, j, d};
    }
  return best;
}

Neighbor brute_furthest(const GeodesicEngine& engine, Point q, const std::vector<Point>& S) {
  if (S.empty()) throw InvalidQuery("brute_furthest: empty set");
  Neighbor best{0, S[0], engine.distance(q, S[0])};
  for (std::size_t i = 1; i < S.size(); ++i) {
    const double d = engine.distance(q, S[i]);
    if (d > best.distance) best = {i, S[i], d};
  }
  return best;
}

std::vector<ConvexityViolation> geodesic_convexity_check(const GeodesicEngine& engine, const Ring& region,
                                                         int n_pairs, std::uint64_t seed) {
  if (region.size() < 3) throw InvalidQuery("convexity check needs a region with area");
  const Bbox box = bounding_box(region);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
  auto draw = [&] {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      const Point p{ux(rng), uy(rng)};
      if (locate_in_ring(region, p) == Location::Inside && engine.contains(p)) return p;
    }
    throw InvalidQuery("convexity check: could not sample inside the region");
  };
  std::vector<ConvexityViolation> out;
  for (int k = 0; k < n_pairs; ++k) {
    const Point a = draw(), b = draw();
    const GeodesicPath path = engine.shortest_path(a, b);
    const auto& w = path.waypoints;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Point probe[2] = {w[i], i + 1 < w.size() ? (w[i] + w[i + 1]) * 0.5 : w[i]};
      const auto bad = std::find_if(std::begin(probe), std::end(probe),
                                    [&](Point x) { return locate_in_ring(region, x) == Location::Outside; });
      if (bad != std::end(probe)) {
        out.push_back({a, b, *bad});
        break;
      }
    }
  }
  return out;
}

double max_stretch(const SpannerGraph& g, const std::vector<double>& D) {
  const std::size_t m = g.nodes.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(m);
  for (const SpannerEdge& e : g.edges) {
    adj[e.i].push_back({e.j, e.weight});
    adj[e.j].push_back({e.i, e.weight});
  }
  double worst = 1.0;
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<double> d(m, kInf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > d[u]) continue;
      for (auto [v, w] : adj[u])
        if (du + w < d[v]) {
          d[v] = du + w;
          pq.push({d[v], v});
        }
    }
    for (std::size_t t = s + 1; t < m; ++t) {
      const double ref = D[s * m + t];
      if (ref > 0) worst = std::max(worst, d[t] / ref);
      else if (d[t] > 0) worst = kInf;
    }
  }
  return worst;
}

}  // namespace geofat
