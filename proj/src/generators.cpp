#include "geofat/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace geofat {

namespace {

constexpr double kSnap = 1e-12;

// x' = a x + b y + tx, y' = c x + d y + ty
struct Affine {
  double a = 1, b = 0, c = 0, d = 1, tx = 0, ty = 0;

  Point operator()(Point p) const { return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty}; }

  Affine then_inner(const Affine& in) const {
    return {a * in.a + b * in.c, a * in.b + b * in.d, c * in.a + d * in.c, c * in.b + d * in.d,
            a * in.tx + b * in.ty + tx, c * in.tx + d * in.ty + ty};
  }

  Rect operator()(const Rect& r) const {
    const Point p = (*this)(Point{r.x0, r.y0});
    const Point q = (*this)(Point{r.x1, r.y1});
    return {std::min(p.x, q.x), std::min(p.y, q.y), std::max(p.x, q.x), std::max(p.y, q.y)};
  }
};

// Quadrant placements of the half-size copies. The south-west copy is turned
// clockwise and the south-east copy counterclockwise, so that the copies'
// start/end corners chain (0,0) -> (0,1/2) -> (1/2,1/2) -> (1,1/2) -> (1,0).
const Affine kSW{0, 0.5, -0.5, 0, 0, 0.5};
const Affine kNW{0.5, 0, 0, 0.5, 0, 0.5};
const Affine kNE{0.5, 0, 0, 0.5, 0.5, 0.5};
const Affine kSE{0, -0.5, 0.5, 0, 1.0, 0};

void p1_rects(double e, const Affine& T, std::vector<Rect>& out) {
  out.push_back(T(Rect{e, 0.5 - e / 2, 1 - e, 0.5 + e / 2}));
  out.push_back(T(Rect{0.5 - e / 2, 0, 0.5 + e / 2, 0.5}));
  out.push_back(T(Rect{0.5 - e / 2, 0.5 + e, 0.5 + e / 2, 1}));
}

void walls_rec(int m, double e, const Affine& T, std::vector<Rect>& out) {
  p1_rects(e, T, out);
  if (m == 1) return;
  for (const Affine* q : {&kSW, &kNW, &kNE, &kSE}) walls_rec(m - 1, 2 * e, T.then_inner(*q), out);
}

class Coords {
 public:
  explicit Coords(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    for (double x : v)
      if (reps_.empty() || x - reps_.back() > kSnap) reps_.push_back(x);
  }
  int index(double x) const {
    const auto it = std::lower_bound(reps_.begin(), reps_.end(), x - kSnap);
    return static_cast<int>(it - reps_.begin());
  }
  double operator[](int i) const { return reps_[i]; }
  int size() const { return static_cast<int>(reps_.size()); }

 private:
  std::vector<double> reps_;
};

// Drops vertices whose neighbours are collinear with them, and repeated
// vertices, until none remain.
Ring simplify(Ring ring) {
  bool changed = true;
  while (changed && ring.size() > 3) {
    changed = false;
    Ring out;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point prev = out.empty() ? ring[(i + n - 1) % n] : out.back();
      const Point next = ring[(i + 1) % n];
      if (ring[i] == prev || orientation(prev, ring[i], next) == Orientation::Collinear) {
        changed = true;
        continue;
      }
      out.push_back(ring[i]);
    }
    ring = std::move(out);
  }
  return ring;
}

MarkedPolygon finish(Polygon poly, std::map<std::string, Point> marks) {
  const auto rep = validate(poly);
  if (!rep.ok()) throw std::logic_error(std::string("generated polygon is invalid: ") + to_string(rep.defects[0].kind));
  for (const auto& [name, p] : marks)
    if (point_in_polygon(poly, p) == Location::Outside)
      throw std::logic_error("generated mark " + name + " lies outside the polygon");
  return {std::move(poly), std::move(marks)};
}

}  // namespace

std::vector<Polygon> trace_free_region(const std::vector<Rect>& free, const std::vector<Rect>& walls) {
  std::vector<double> xv, yv;
  for (const auto* set : {&free, &walls})
    for (const Rect& r : *set) {
      xv.insert(xv.end(), {r.x0, r.x1});
      yv.insert(yv.end(), {r.y0, r.y1});
    }
  const Coords xs(std::move(xv)), ys(std::move(yv));
  const int nx = xs.size() - 1, ny = ys.size() - 1;
  if (nx <= 0 || ny <= 0) return {};

  std::vector<char> cell(static_cast<std::size_t>(nx) * ny, 0);
  auto paint = [&](const Rect& r, char value) {
    const int i0 = xs.index(r.x0), i1 = xs.index(r.x1);
    const int j0 = ys.index(r.y0), j1 = ys.index(r.y1);
    for (int j = j0; j < j1; ++j)
      for (int i = i0; i < i1; ++i) cell[static_cast<std::size_t>(j) * nx + i] = value;
  };
  for (const Rect& r : free) paint(r, 1);
  for (const Rect& r : walls) paint(r, 0);
  auto is_free = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < nx && j < ny && cell[static_cast<std::size_t>(j) * nx + i];
  };

  // Directed boundary edges with the free side on the left; one outgoing
  // edge per grid vertex unless two free cells touch diagonally.
  const int vx = nx + 1;
  std::vector<int> out(static_cast<std::size_t>(vx) * (ny + 1), -1);
  auto vid = [&](int i, int j) { return j * vx + i; };
  auto add = [&](int from, int to) {
    if (out[from] != -1) throw std::logic_error("free region is pinched at a single corner");
    out[from] = to;
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const bool l = is_free(i - 1, j), r = is_free(i, j);
      if (l == r) continue;
      if (r) add(vid(i, j + 1), vid(i, j));
      else add(vid(i, j), vid(i, j + 1));
    }
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const bool below = is_free(i, j - 1), above = is_free(i, j);
      if (below == above) continue;
      if (above) add(vid(i, j), vid(i + 1, j));
      else add(vid(i + 1, j), vid(i, j));
    }

  std::vector<char> used(out.size(), 0);
  std::vector<Ring> outers, holes;
  for (int start = 0; start < static_cast<int>(out.size()); ++start) {
    if (out[start] == -1 || used[start]) continue;
    Ring ring;
    for (int v = start; !used[v]; v = out[v]) {
      used[v] = 1;
      ring.push_back({xs[v % vx], ys[v / vx]});
    }
    ring = simplify(std::move(ring));
    (signed_area(ring) > 0 ? outers : holes).push_back(std::move(ring));
  }

  std::vector<Polygon> polys;
  for (auto& o : outers) polys.push_back({std::move(o), {}});
  for (auto& h : holes) {
    int best = -1;
    for (int k = 0; k < static_cast<int>(polys.size()); ++k) {
      if (locate_in_ring(polys[k].outer, h.front()) != Location::Inside &&
          locate_in_ring(polys[k].outer, h.front()) != Location::Boundary)
        continue;
      if (best < 0 || signed_area(polys[k].outer) < signed_area(polys[best].outer)) best = k;
    }
    if (best < 0) throw std::logic_error("traced hole has no enclosing boundary");
    polys[best].holes.push_back(std::move(h));
  }
  return polys;
}

void check_family_params(int m, double eps) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (m > 8) throw std::invalid_argument("m > 8 is not supported");
  if (!(eps > 0) || !(eps < std::ldexp(1.0, -(m + 3))))
    throw std::invalid_argument("corridor width must satisfy 0 < eps < 2^-(m+3) = " +
                                std::to_string(std::ldexp(1.0, -(m + 3))));
}

std::vector<Rect> pm_walls(int m, double eps) {
  check_family_params(m, eps);
  std::vector<Rect> out;
  walls_rec(m, eps, Affine{}, out);
  return out;
}

Rect pm_opening_plug(int which, int m, double eps) {
  check_family_params(m, eps);
  const double e = eps;
  switch (which) {
    case 0: return {0, 0.5 - e / 2, e, 0.5 + e / 2};
    case 1: return {0.5 - e / 2, 0.5 + e / 2, 0.5 + e / 2, 0.5 + e};
    case 2: return {1 - e, 0.5 - e / 2, 1, 0.5 + e / 2};
  }
  throw std::invalid_argument("opening index must be 0, 1 or 2");
}

MarkedPolygon gen_Pm(int m, double eps) {
  auto polys = trace_free_region({{0, 0, 1, 1}}, pm_walls(m, eps));
  if (polys.size() != 1 || !polys[0].holes.empty())
    throw std::logic_error("P_m construction did not produce a single simple polygon");
  return finish(std::move(polys[0]), {{"start", {0, 0}}, {"end", {1, 0}}});
}

MarkedPolygon gen_P1(double eps) {
  if (!(eps > 0) || !(eps < 1.0 / 16)) throw std::invalid_argument("P_1 needs 0 < eps < 1/16");
  return gen_Pm(1, eps);
}

MarkedPolygon gen_Pstar(int m, double eps) {
  check_family_params(m, eps);
  const int k = 1 << m;
  const double h = 1.0 / k;
  const double local = eps / h;
  if (!(local < std::ldexp(1.0, -(m + 3))))
    throw std::invalid_argument("corridor width too large for 2^m scaled copies: need eps < 2^-(2m+3)");

  std::vector<Rect> walls;
  const auto copy_walls = pm_walls(m, local);
  for (int i = 0; i < k; ++i) {
    const Affine T{h, 0, 0, h, i * h, 0};
    for (const Rect& r : copy_walls) walls.push_back(T(r));
  }
  for (int i = 1; i < k; ++i) walls.push_back({i * h - eps / 2, 0, i * h + eps / 2, h});
  // Floor under the chain, pierced by one opening at the lower-left corner of
  // each copy. It sits below y = 0 so that corridors running along a copy's
  // bottom edge stay open.
  double x = eps;
  for (int i = 1; i < k; ++i) {
    walls.push_back({x, -eps, i * h + eps / 2, 0});
    x = i * h + 1.5 * eps;
  }
  walls.push_back({x, -eps, 1, 0});

  // A scratch row below the floor makes all openings one region; its two
  // lower corners are then replaced by the triangle u, c, v.
  const double t = h;
  auto polys = trace_free_region({{0, -eps - t, 1, h}}, walls);
  if (polys.size() != 1 || !polys[0].holes.empty())
    throw std::logic_error("P*_m construction did not produce a single simple polygon");
  const Point u{0, -eps}, v{1, -eps}, c = u + Point{0.5, -std::sqrt(3.0) / 2};
  Ring ring;
  for (Point p : polys[0].outer) {
    if (p == Point{0, -eps - t}) {
      ring.push_back(u);
      ring.push_back(c);
    } else if (p == Point{1, -eps - t}) {
      ring.push_back(v);
    } else {
      ring.push_back(p);
    }
  }
  Polygon poly{simplify(std::move(ring)), {}};

  std::map<std::string, Point> marks{{"c", c}, {"u", u}, {"v", v}};
  for (int i = 1; i <= k; ++i) marks["p_" + std::to_string(i)] = i < k ? Point{i * h - eps / 2, 0} : Point{1, 0};
  return finish(std::move(poly), std::move(marks));
}

MarkedPolygon gen_comb(int n_teeth, double tooth_width, double tooth_depth) {
  constexpr double R = 0.5;
  if (n_teeth < 2) throw std::invalid_argument("comb needs at least 2 teeth");
  if (!(tooth_width > 0) || !(tooth_depth > 0)) throw std::invalid_argument("tooth width and depth must be positive");
  if (R + tooth_depth > 1.0) throw std::invalid_argument("teeth must stay inside the unit disk");
  if (tooth_width >= 2 * R) throw std::invalid_argument("tooth wider than the body");
  const double half = std::asin(tooth_width / (2 * R));
  const double pitch = 2 * std::numbers::pi / n_teeth;
  if (2 * half >= 0.8 * pitch) throw std::invalid_argument("teeth overlap: tooth width too large for n_teeth");

  Ring ring;
  auto on_circle = [](double r, double a) { return Point{r * std::cos(a), r * std::sin(a)}; };
  for (int i = 0; i < n_teeth; ++i) {
    const double a = i * pitch;
    ring.push_back(on_circle(R, a - half));
    ring.push_back(on_circle(R + tooth_depth, a));
    ring.push_back(on_circle(R, a + half));
    // body arc up to the next tooth
    const double gap = pitch - 2 * half;
    const int steps = std::max(1, static_cast<int>(std::ceil(gap / (2 * std::numbers::pi / 96))));
    for (int s = 1; s < steps; ++s) ring.push_back(on_circle(R, a + half + gap * s / steps));
  }
  std::map<std::string, Point> marks{{"center", {0, 0}}};
  for (int i = 0; i < n_teeth; ++i) marks["tip_" + std::to_string(i + 1)] = on_circle(R + tooth_depth, i * pitch);
  return finish({std::move(ring), {}}, std::move(marks));
}

Polygon gen_random_convex(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("convex polygon needs n >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (;;) {
    // random-directions construction: split sorted coordinates into two
    // monotone chains, pair the resulting x and y steps randomly, sort by angle
    auto steps = [&](std::vector<double>& out) {
      std::vector<double> v(n);
      for (double& x : v) x = U(rng);
      std::sort(v.begin(), v.end());
      double lo = v.front(), hi = v.front();
      for (int i = 1; i + 1 < n; ++i) {
        if (U(rng) < 0.5) {
          out.push_back(v[i] - lo);
          lo = v[i];
        } else {
          out.push_back(hi - v[i]);
          hi = v[i];
        }
      }
      out.push_back(v.back() - lo);
      out.push_back(hi - v.back());
    };
    std::vector<double> dx, dy;
    steps(dx);
    steps(dy);
    std::shuffle(dy.begin(), dy.end(), rng);
    std::vector<Point> vec(n);
    for (int i = 0; i < n; ++i) vec[i] = {dx[i], dy[i]};
    std::sort(vec.begin(), vec.end(), [](Point a, Point b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });
    Ring ring;
    Point p{0, 0};
    for (Point d : vec) {
      ring.push_back(p);
      p = p + d;
    }
    // fit into the unit square
    const Bbox box = bounding_box(ring);
    const double s = 1.0 / std::max(box.width(), box.height());
    for (Point& q : ring) q = (q - box.lo) * s;
    Polygon poly{std::move(ring), {}};
    if (validate(poly).ok()) return poly;
  }
}

Polygon gen_fat_blob(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("blob needs n >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (;;) {
    double a[3], phi[3], sum = 0;
    for (int k = 0; k < 3; ++k) {
      a[k] = 0.2 + U(rng);
      phi[k] = 2 * std::numbers::pi * U(rng);
      sum += a[k];
    }
    // total amplitude 0.3 keeps the radius in [0.7, 1.3]
    for (double& x : a) x *= 0.3 / sum;
    Ring ring;
    for (int i = 0; i < n; ++i) {
      const double th = 2 * std::numbers::pi * i / n;
      double r = 1.0;
      for (int k = 0; k < 3; ++k) r += a[k] * std::cos((k + 1) * th + phi[k]);
      ring.push_back({r * std::cos(th), r * std::sin(th)});
    }
    Polygon poly{std::move(ring), {}};
    if (validate(poly).ok()) return poly;
  }
}

}  // namespace geofat
