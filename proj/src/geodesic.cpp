#include "geofat/geodesic.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <queue>

#include "geofat/parallel.hpp"

namespace geofat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Polygon checked(Polygon poly) {
  const auto rep = validate(poly);
  if (!rep.ok()) {
    const Defect& d = rep.defects.front();
    std::string msg = std::string("invalid polygon: ") + to_string(d.kind);
    if (d.ring >= 0) msg += " (ring " + std::to_string(d.ring) + ")";
    throw InvalidPolygon(msg);
  }
  return poly;
}

}  // namespace

GeodesicEngine::GeodesicEngine(Polygon poly)
    : poly_(checked(std::move(poly))), index_(poly_), verts_(all_vertices(poly_)) {
  build_routing();
}

bool GeodesicEngine::tangent_at(Point x, int v) const {
  const RoutingVertex& rv = routing_[v];
  const int o1 = static_cast<int>(orientation(x, rv.p, rv.prev));
  const int o2 = static_cast<int>(orientation(x, rv.p, rv.next));
  return o1 * o2 >= 0;
}

void GeodesicEngine::require_inside(Point p) const {
  if (!is_finite(p)) throw InvalidQuery("query point is not finite");
  if (locate(p) == Location::Outside)
    throw InvalidQuery("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is outside the polygon");
}

void GeodesicEngine::build_routing() {
  for (std::size_t r = 0; r < poly_.ring_count(); ++r) {
    const Ring& ring = poly_.ring(r);
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i)
      if (is_reflex(ring, i)) routing_.push_back({ring[i], ring[(i + n - 1) % n], ring[(i + 1) % n]});
  }
  const std::size_t R = routing_.size();
  std::vector<std::vector<std::pair<int, double>>> higher(R);
  parallel_for(R, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < R; ++j) {
      const Point a = routing_[i].p, b = routing_[j].p;
      if (!tangent_at(b, static_cast<int>(i)) || !tangent_at(a, static_cast<int>(j))) continue;
      if (index_.visible(a, b)) higher[i].push_back({static_cast<int>(j), dist(a, b)});
    }
  });
  std::vector<std::vector<std::pair<int, double>>> adj(R);
  for (std::size_t i = 0; i < R; ++i)
    for (auto [j, w] : higher[i]) {
      adj[i].push_back({j, w});
      adj[j].push_back({static_cast<int>(i), w});
    }

  apsp_.assign(R * R, kInf);
  pred_.assign(R * R, -1);
  parallel_for(R, [&](std::size_t s) {
    double* d = &apsp_[s * R];
    int* pr = &pred_[s * R];
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0.0;
    pr[s] = static_cast<int>(s);
    pq.push({0.0, static_cast<int>(s)});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > d[u]) continue;
      for (auto [v, w] : adj[u]) {
        if (du + w < d[v]) {
          d[v] = du + w;
          pr[v] = u;
          pq.push({d[v], v});
        }
      }
    }
  });
  for (std::size_t s = 0; s < R; ++s)
    for (std::size_t t = s + 1; t < R; ++t) {
      const double m = std::min(apsp_[s * R + t], apsp_[t * R + s]);
      apsp_[s * R + t] = apsp_[t * R + s] = m;
    }
}

const GeodesicEngine::Adjacency& GeodesicEngine::visibility_graph() const {
  std::call_once(vis_once_, [this] {
    const std::size_t n = verts_.size();
    std::vector<std::vector<std::pair<int, double>>> higher(n);
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j)
        if (index_.visible(verts_[i], verts_[j]))
          higher[i].push_back({static_cast<int>(j), dist(verts_[i], verts_[j])});
    });
    vis_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
      for (auto [j, w] : higher[i]) {
        vis_[i].push_back({j, w});
        vis_[j].push_back({static_cast<int>(i), w});
      }
    for (auto& row : vis_) std::sort(row.begin(), row.end());
  });
  return vis_;
}

SourceField::SourceField(const GeodesicEngine& engine, Point source) : engine_(&engine), source_(source) {
  engine.require_inside(source);
  const std::size_t R = engine.routing_.size();
  dist_.assign(R, kInf);
  entry_.assign(R, -1);
  for (std::size_t v = 0; v < R; ++v) {
    const Point pv = engine.routing_[v].p;
    if (!engine.tangent_at(source, static_cast<int>(v)) || !engine.visible(source, pv)) continue;
    const double d0 = dist(source, pv);
    const double* row = &engine.apsp_[v * R];
    for (std::size_t w = 0; w < R; ++w) {
      const double d = d0 + row[w];
      if (d < dist_[w]) {
        dist_[w] = d;
        entry_[w] = static_cast<int>(v);
      }
    }
  }
}

int SourceField::last_hop(Point q, double& length) const {
  engine_->require_inside(q);
  if (engine_->visible(source_, q)) {
    length = dist(source_, q);
    return -1;
  }
  std::vector<std::pair<double, int>> cand;
  cand.reserve(64);
  for (std::size_t w = 0; w < dist_.size(); ++w) {
    if (dist_[w] == kInf || !engine_->tangent_at(q, static_cast<int>(w))) continue;
    cand.push_back({dist_[w] + dist(engine_->routing_[w].p, q), static_cast<int>(w)});
  }
  std::sort(cand.begin(), cand.end());
  for (auto [key, w] : cand) {
    if (engine_->visible(engine_->routing_[w].p, q)) {
      length = key;
      return w;
    }
  }
  length = kInf;
  return -2;
}

double SourceField::distance_to(Point q) const {
  double len;
  last_hop(q, len);
  return len;
}

GeodesicPath SourceField::path_to(Point q) const {
  double len;
  const int w = last_hop(q, len);
  if (w == -2) throw std::runtime_error("no path: target lies in a different component");
  std::vector<Point> pts{q};
  if (w >= 0) {
    const std::size_t R = dist_.size();
    const int v = entry_[w];
    for (int x = w; x != v; x = engine_->pred_[v * R + x]) pts.push_back(engine_->routing_[x].p);
    pts.push_back(engine_->routing_[v].p);
  }
  pts.push_back(source_);
  std::reverse(pts.begin(), pts.end());
  GeodesicPath path;
  for (Point p : pts)
    if (path.waypoints.empty() || path.waypoints.back() != p) path.waypoints.push_back(p);
  if (path.waypoints.size() == 1) path.waypoints.push_back(path.waypoints.front());
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i)
    path.length += dist(path.waypoints[i], path.waypoints[i + 1]);
  return path;
}

SourceField GeodesicEngine::field(Point source) const { return SourceField(*this, source); }

double GeodesicEngine::distance(Point a, Point b) const {
  if (lex_less(b, a)) std::swap(a, b);
  return field(a).distance_to(b);
}

GeodesicPath GeodesicEngine::shortest_path(Point a, Point b) const {
  const bool swapped = lex_less(b, a);
  if (swapped) std::swap(a, b);
  GeodesicPath path = field(a).path_to(b);
  if (swapped) std::reverse(path.waypoints.begin(), path.waypoints.end());
  return path;
}

GeodesicEngine build_engine(const Polygon& poly) { return GeodesicEngine(poly); }

GeodesicPath shortest_path(const GeodesicEngine& engine, Point a, Point b) { return engine.shortest_path(a, b); }

double geodesic_distance(const GeodesicEngine& engine, Point a, Point b) { return engine.distance(a, b); }

namespace {

// Shortest-path tree from one root, as a trie over path waypoints.
struct TreeNode {
  Point p;
  int parent = -1;
  bool in_set = false;
  std::vector<int> children;
};

double ccw_angle(Point from, Point to) {
  double a = std::atan2(cross(from, to), dot(from, to));
  if (a <= 0) a += 2 * std::numbers::pi;
  return a;
}

}  // namespace

RelativeHull relative_convex_hull(const GeodesicEngine& engine, const std::vector<Point>& S) {
  if (S.empty()) throw InvalidQuery("relative_convex_hull: empty point set");
  for (Point p : S)
    if (!engine.contains(p)) throw InvalidQuery("relative_convex_hull: point outside polygon");
  RelativeHull out;

  // The furthest point from any point of S is a vertex of the hull; root the
  // shortest-path tree there.
  std::size_t root_i = 0;
  {
    const SourceField f0 = engine.field(S[0]);
    double far = -1;
    for (std::size_t i = 0; i < S.size(); ++i) {
      const double d = f0.distance_to(S[i]);
      if (d > far) far = d, root_i = i;
    }
  }
  const Point root = S[root_i];
  std::vector<TreeNode> tree{{root, -1, true, {}}};
  const SourceField fr = engine.field(root);
  std::vector<Point> first_steps;
  for (Point s : S) {
    if (s == root) continue;
    const auto w = fr.path_to(s).waypoints;
    first_steps.push_back(w[1] - root);
    int cur = 0;
    for (std::size_t k = 1; k < w.size();) {
      // a child in the same direction shares the first part of this step:
      // descend into it, or split its edge at w[k]
      int next = -1;
      for (int c : tree[cur].children) {
        const Point u = tree[cur].p, q = tree[c].p;
        if (q == w[k] || (orientation(u, q, w[k]) == Orientation::Collinear && dot(q - u, w[k] - u) > 0)) {
          next = c;
          break;
        }
      }
      if (next >= 0 && tree[next].p == w[k]) {
        cur = next;
        ++k;
      } else if (next >= 0 && dist(tree[cur].p, tree[next].p) < dist(tree[cur].p, w[k])) {
        cur = next;
      } else {
        const int mid = static_cast<int>(tree.size());
        tree.push_back({w[k], cur, false, {}});
        if (next >= 0) {
          std::replace(tree[cur].children.begin(), tree[cur].children.end(), next, mid);
          tree[next].parent = mid;
          tree[mid].children.push_back(next);
        } else {
          tree[cur].children.push_back(mid);
        }
        cur = mid;
        ++k;
      }
    }
    tree[cur].in_set = true;
  }
  if (first_steps.empty()) {
    out.boundary = {root};
    out.anchors = {root};
    out.anchor_pos = {0};
    return out;
  }

  // Exterior direction at the root: bisector of the widest gap between the
  // first steps of the tree paths.
  std::vector<double> ang;
  for (Point d : first_steps) ang.push_back(std::atan2(d.y, d.x));
  std::sort(ang.begin(), ang.end());
  double gap = -1, outward = 0;
  for (std::size_t i = 0; i < ang.size(); ++i) {
    const double next = i + 1 < ang.size() ? ang[i + 1] : ang[0] + 2 * std::numbers::pi;
    if (next - ang[i] > gap) gap = next - ang[i], outward = ang[i] + gap / 2;
  }

  // Walk around the tree with the tree on the left; at each node the
  // children are taken counterclockwise from the way back.
  std::vector<Point> order;
  std::vector<std::pair<int, Point>> todo{{0, Point{std::cos(outward), std::sin(outward)}}};
  while (!todo.empty()) {
    auto [u, back] = todo.back();
    todo.pop_back();
    if (tree[u].in_set) order.push_back(tree[u].p);
    auto kids = tree[u].children;
    const Point up = tree[u].p;
    std::sort(kids.begin(), kids.end(), [&](int a, int b) {
      const double aa = ccw_angle(back, tree[a].p - up), ab = ccw_angle(back, tree[b].p - up);
      if (aa != ab) return aa < ab;
      return dist(up, tree[a].p) < dist(up, tree[b].p);
    });
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) todo.push_back({*it, up - tree[*it].p});
  }

  // Graham scan with geodesic edges: drop a point where the boundary would
  // turn clockwise or run straight through it.
  auto drop = [&](Point a, Point t, Point b) {
    const auto in = engine.shortest_path(a, t).waypoints;
    const auto outp = engine.shortest_path(t, b).waypoints;
    const Point prev = in[in.size() - 2], next = outp[1];
    const Orientation o = orientation(prev, t, next);
    if (o == Orientation::CW) return true;
    return o == Orientation::Collinear && dot(t - prev, next - t) > 0;
  };
  std::vector<Point> st{order[0]};
  for (std::size_t k = 1; k < order.size(); ++k) {
    while (st.size() >= 2 && drop(st[st.size() - 2], st.back(), order[k])) st.pop_back();
    st.push_back(order[k]);
  }
  while (st.size() >= 3 && drop(st[st.size() - 2], st.back(), st[0])) st.pop_back();

  out.anchors = st;
  for (std::size_t i = 0; i < st.size(); ++i) {
    out.anchor_pos.push_back(out.boundary.size());
    const GeodesicPath path = engine.shortest_path(st[i], st[(i + 1) % st.size()]);
    // the final waypoint is the first point of the next piece
    for (std::size_t k = 0; k + 1 < path.waypoints.size(); ++k) out.boundary.push_back(path.waypoints[k]);
    out.perimeter += path.length;
  }
  return out;
}

std::vector<Point> geodesic_disk_sample(const GeodesicEngine& engine, Point p, double r, double density) {
  if (!(r >= 0) || !(density > 0)) throw InvalidQuery("geodesic_disk_sample: need r >= 0 and density > 0");
  const SourceField field = engine.field(p);
  const Bbox box = bounding_box(engine.polygon());
  const auto lo_i = static_cast<long>(std::ceil((std::max(box.lo.x, p.x - r) - p.x) / density));
  const auto hi_i = static_cast<long>(std::floor((std::min(box.hi.x, p.x + r) - p.x) / density));
  const auto lo_j = static_cast<long>(std::ceil((std::max(box.lo.y, p.y - r) - p.y) / density));
  const auto hi_j = static_cast<long>(std::floor((std::min(box.hi.y, p.y + r) - p.y) / density));
  if (hi_j < lo_j || hi_i < lo_i) return {};
  std::vector<std::vector<Point>> rows(static_cast<std::size_t>(hi_j - lo_j + 1));
  parallel_for(rows.size(), [&](std::size_t rj) {
    const double y = p.y + static_cast<double>(lo_j + static_cast<long>(rj)) * density;
    for (long i = lo_i; i <= hi_i; ++i) {
      const Point q{p.x + static_cast<double>(i) * density, y};
      if (dist(p, q) > r || !engine.contains(q)) continue;
      if (field.distance_to(q) <= r) rows[rj].push_back(q);
    }
  });
  std::vector<Point> out;
  for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace geofat
