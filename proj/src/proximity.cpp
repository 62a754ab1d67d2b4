#include "geofat/proximity.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "geofat/parallel.hpp"

namespace geofat {

namespace {

void require_points(const GeodesicEngine& engine, const std::vector<Point>& pts, const char* what) {
  for (Point p : pts)
    if (!is_finite(p) || !engine.contains(p)) throw InvalidQuery(std::string(what) + ": point outside polygon");
}

void rebuild(GridState& grid, const std::vector<Point>& Q, std::span<const std::size_t> processed) {
  grid.cells.clear();
  grid.cell_side = grid.delta / (2 * grid.M);
  for (std::size_t idx : processed) grid.cells[grid.key(Q[idx])].push_back(idx);
}

}  // namespace

ClosestPairResult closest_pair(const GeodesicEngine& engine, const std::vector<Point>& Q, double M,
                               std::uint64_t seed, const GridObserver& observer) {
  if (Q.size() < 2) throw InvalidQuery("closest_pair needs at least two points");
  if (!(M >= 1)) throw InvalidQuery("closest_pair needs M >= 1");
  require_points(engine, Q, "closest_pair");

  std::vector<std::size_t> order(Q.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  ClosestPairResult res;
  auto measure = [&](std::size_t i, std::size_t j) {
    ++res.n_distance_queries;
    return engine.distance(Q[i], Q[j]);
  };
  auto set_pair = [&](std::size_t i, std::size_t j, double d) {
    res.i = std::min(i, j);
    res.j = std::max(i, j);
    res.a = Q[res.i];
    res.b = Q[res.j];
    res.distance = d;
  };
  set_pair(order[0], order[1], measure(order[0], order[1]));
  if (res.distance == 0) return res;

  GridState grid;
  grid.M = M;
  grid.delta = res.distance;
  rebuild(grid, Q, std::span(order).first(2));
  if (observer) observer(grid, std::span(order).first(2), res);

  const auto reach = static_cast<std::int64_t>(std::ceil(2 * M)) + 1;
  for (std::size_t n = 2; n < order.size(); ++n) {
    const std::size_t qi = order[n];
    const CellKey c = grid.key(Q[qi]);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    auto scan = [&](const std::vector<std::size_t>& bucket) {
      for (std::size_t k : bucket) {
        const double d = measure(k, qi);
        if (d < best) {
          best = d;
          best_k = k;
        }
      }
    };
    const auto side = 2 * reach + 1;
    if (static_cast<std::size_t>(side * side) <= grid.cells.size()) {
      for (std::int64_t dy = -reach; dy <= reach; ++dy)
        for (std::int64_t dx = -reach; dx <= reach; ++dx) {
          const auto it = grid.cells.find({c.x + dx, c.y + dy});
          if (it != grid.cells.end()) scan(it->second);
        }
    } else {
      // fewer occupied cells than neighbourhood cells: walk the occupied ones
      std::vector<CellKey> keys;
      for (const auto& [k, _] : grid.cells)
        if (std::abs(k.x - c.x) <= reach && std::abs(k.y - c.y) <= reach) keys.push_back(k);
      std::sort(keys.begin(), keys.end(), [](CellKey a, CellKey b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
      for (CellKey k : keys) scan(grid.cells.at(k));
    }

    const auto processed = std::span(order).first(n + 1);
    if (best < grid.delta) {
      set_pair(best_k, qi, best);
      if (best == 0) return res;
      grid.delta = best;
      rebuild(grid, Q, processed);
      ++res.n_rebuilds;
    } else {
      grid.cells[c].push_back(qi);
    }
    if (observer) observer(grid, processed, res);
  }
  return res;
}

Coreset coreset_furthest(const GeodesicEngine& engine, const std::vector<Point>& S, double epsilon,
                         std::optional<double> nu) {
  if (S.empty()) throw InvalidQuery("coreset_furthest: empty point set");
  if (!(epsilon > 0) || epsilon > 1) throw InvalidQuery("coreset_furthest: epsilon must lie in (0, 1]");
  require_points(engine, S, "coreset_furthest");
  Coreset out;
  out.epsilon = epsilon;
  const RelativeHull hull = relative_convex_hull(engine, S);
  out.hull_perimeter = hull.perimeter;
  if (nu) {
    if (!(*nu > 0)) throw InvalidQuery("coreset_furthest: nu must be positive");
    out.nu = *nu;
  } else {
    const double diam = euclidean_diameter(hull.boundary);
    out.nu = diam > 0 ? 1.25 * hull.perimeter / diam : 1.0;
  }
  out.spacing = epsilon / (2 * out.nu) * hull.perimeter;

  auto index_of = [&](Point p) {
    return static_cast<std::size_t>(std::find(S.begin(), S.end(), p) - S.begin());
  };
  auto select = [&](std::size_t anchor) {
    const Point p = hull.anchors[anchor];
    out.points.push_back(p);
    out.indices.push_back(index_of(p));
  };
  if (hull.anchors.size() == 1 || hull.perimeter == 0) {
    select(0);
    return out;
  }

  // arc-length position of each anchor along the closed hull boundary
  const auto& B = hull.boundary;
  std::vector<double> cum(B.size() + 1, 0.0);
  for (std::size_t k = 0; k < B.size(); ++k) cum[k + 1] = cum[k] + dist(B[k], B[(k + 1) % B.size()]);
  const double per = cum.back();
  std::vector<double> pos;
  for (std::size_t a : hull.anchor_pos) pos.push_back(cum[a]);

  // Greedy cover of the anchors by boundary arcs of half-width `spacing`
  // centred at selected anchors; the first anchor is always selected.
  const double T = out.spacing;
  const std::size_t n = pos.size();
  select(0);
  double covered_to = pos[0] + T;
  const double wrap_from = per - T;  // anchors past here are covered by anchor 0
  std::size_t k = 1;
  while (k < n) {
    if (pos[k] <= covered_to || pos[k] >= wrap_from) {
      ++k;
      continue;
    }
    std::size_t c = k;
    while (c + 1 < n && pos[c + 1] <= pos[k] + T) ++c;
    select(c);
    covered_to = pos[c] + T;
    k = c + 1;
  }
  return out;
}

Neighbor furthest_neighbor(const GeodesicEngine& engine, Point q, const std::vector<Point>& C) {
  if (C.empty()) throw InvalidQuery("furthest_neighbor: empty candidate set");
  Neighbor best{0, C[0], -1.0};
  for (std::size_t i = 0; i < C.size(); ++i) {
    const double d = engine.distance(q, C[i]);
    if (d > best.distance) best = {i, C[i], d};
  }
  return best;
}

std::vector<double> distance_matrix(const GeodesicEngine& engine, const std::vector<Point>& S) {
  const std::size_t m = S.size();
  std::vector<double> D(m * m, 0.0);
  parallel_for(m, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < m; ++j) D[i * m + j] = engine.distance(S[i], S[j]);
  });
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) D[j * m + i] = D[i * m + j];
  return D;
}

SpannerGraph greedy_spanner(const std::vector<Point>& S, const std::vector<double>& D, double epsilon) {
  if (!(epsilon > 0)) throw InvalidQuery("greedy_spanner: epsilon must be positive");
  const std::size_t m = S.size();
  SpannerGraph g;
  g.nodes = S;
  g.epsilon = epsilon;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.push_back({i, j});
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](auto a, auto b) { return D[a.first * m + a.second] < D[b.first * m + b.second]; });

  std::vector<std::vector<std::pair<std::size_t, double>>> adj(m);
  std::vector<double> dg(m, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> touched;
  for (auto [i, j] : pairs) {
    const double w = D[i * m + j];
    const double limit = (1 + epsilon) * w;
    // Dijkstra from i, pruned at the stretch limit
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::size_t t : touched) dg[t] = std::numeric_limits<double>::infinity();
    touched.clear();
    dg[i] = 0;
    touched.push_back(i);
    pq.push({0, i});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > dg[u]) continue;
      if (u == j || du > limit) break;
      for (auto [v, wv] : adj[u]) {
        const double nd = du + wv;
        if (nd < dg[v] && nd <= limit) {
          if (dg[v] == std::numeric_limits<double>::infinity()) touched.push_back(v);
          dg[v] = nd;
          pq.push({nd, v});
        }
      }
    }
    if (dg[j] > limit) {
      adj[i].push_back({j, w});
      adj[j].push_back({i, w});
      g.edges.push_back({i, j, w});
    }
  }
  return g;
}

SpannerGraph greedy_spanner(const GeodesicEngine& engine, const std::vector<Point>& S, double epsilon) {
  if (S.empty()) throw InvalidQuery("greedy_spanner: empty point set");
  require_points(engine, S, "greedy_spanner");
  return greedy_spanner(S, distance_matrix(engine, S), epsilon);
}

double perimeter_ratio(const GeodesicEngine& engine, const std::vector<Point>& S) {
  if (S.size() < 2) throw InvalidQuery("perimeter_ratio needs at least two points");
  const RelativeHull hull = relative_convex_hull(engine, S);
  const double diam = euclidean_diameter(hull.boundary);
  if (diam == 0) throw InvalidQuery("perimeter_ratio: relative hull has zero diameter");
  return hull.perimeter / diam;
}

}  // namespace geofat
