#include "geofat/doubling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "geofat/generators.hpp"
#include "geofat/parallel.hpp"

namespace geofat {

namespace {

// Rows of grid points, x0 + i*pitch for i in [0, n), that lie in the
// polygon: even-odd spans of the horizontal line through each row.
std::vector<char> inside_grid(const GeodesicEngine& engine, Point origin, double pitch, long n) {
  const auto& edges = engine.index().edges();
  std::vector<char> flag(static_cast<std::size_t>(n) * n, 0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
    const Point row{origin.x, origin.y + static_cast<double>(j) * pitch};
    std::vector<double> xs;
    for (const Segment& e : edges) {
      double xc;
      if (detail::ray_crossing(row, e, xc)) xs.push_back(xc);
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const long i0 = std::max(0L, static_cast<long>(std::ceil((xs[k] - origin.x) / pitch)));
      const long i1 = std::min(n - 1, static_cast<long>(std::floor((xs[k + 1] - origin.x) / pitch)));
      for (long i = i0; i <= i1; ++i) flag[j * n + i] = 1;
    }
  });
  return flag;
}

}  // namespace

CoverResult grid_cover(const GeodesicEngine& engine, Point p, double r, const FatnessParams& params,
                       double sample_density) {
  if (!engine.contains(p)) throw InvalidQuery("grid_cover: center outside polygon");
  if (!(r > 0)) throw InvalidQuery("grid_cover: radius must be positive");
  const long g = doubling_bound_formula(params).g;
  const long n = g + 1;
  const double pitch = 3 * r / static_cast<double>(g);
  const Point origin = p - Point{1.5 * r, 1.5 * r};
  const auto flag = inside_grid(engine, origin, pitch, n);

  CoverResult res;
  res.center = p;
  res.radius = r;
  res.grid = g;
  res.cover_radius = r / 2;
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i)
      if (flag[j * n + i]) res.cover_centers.push_back(origin + Point{i * pitch, j * pitch});

  const auto samples = geodesic_disk_sample(engine, p, r, sample_density);
  res.samples = samples.size();
  const double half = r / 2;
  auto grid_point = [&](long i, long j) { return origin + Point{i * pitch, j * pitch}; };
  auto usable = [&](long i, long j) { return i >= 0 && j >= 0 && i < n && j < n && flag[j * n + i]; };

  std::vector<char> covered(samples.size(), 0);
  parallel_for(samples.size(), [&](std::size_t s) {
    const Point q = samples[s];
    const long ci = std::lround((q.x - origin.x) / pitch);
    const long cj = std::lround((q.y - origin.y) / pitch);
    // nearby centers that see q directly: geodesic = Euclidean distance
    constexpr long kNear = 8;
    for (long k = 0; k <= kNear; ++k) {
      for (long j = cj - k; j <= cj + k; ++j)
        for (long i = ci - k; i <= ci + k; ++i) {
          if (std::max(std::abs(i - ci), std::abs(j - cj)) != k || !usable(i, j)) continue;
          const Point c = grid_point(i, j);
          if (dist(c, q) <= half && engine.visible(c, q)) {
            covered[s] = 1;
            return;
          }
        }
    }
    // otherwise measure geodesic distances from q to a wider ring of centers
    const SourceField fq = engine.field(q);
    const long reach = std::min<long>(64, static_cast<long>(std::ceil(half / pitch)));
    for (long k = kNear + 1; k <= reach; ++k)
      for (long j = cj - k; j <= cj + k; ++j)
        for (long i = ci - k; i <= ci + k; ++i) {
          if (std::max(std::abs(i - ci), std::abs(j - cj)) != k || !usable(i, j)) continue;
          const Point c = grid_point(i, j);
          if (dist(c, q) <= half && fq.distance_to(c) <= half) {
            covered[s] = 1;
            return;
          }
        }
  });
  for (std::size_t s = 0; s < samples.size(); ++s)
    if (!covered[s]) res.uncovered.push_back(samples[s]);
  return res;
}

std::vector<Point> seven_disk_cover(Point c, double r) {
  std::vector<Point> out{c};
  const double d = r * std::sqrt(3.0) / 2;
  for (int k = 0; k < 6; ++k) {
    const double a = std::numbers::pi * (2 * k + 1) / 6;
    out.push_back(c + Point{d * std::cos(a), d * std::sin(a)});
  }
  return out;
}

PackingResult packing_lower_bound(const GeodesicEngine& engine, Point p, double r, double sample_density) {
  if (!engine.contains(p)) throw InvalidQuery("packing_lower_bound: center outside polygon");
  if (!(r > 0)) throw InvalidQuery("packing_lower_bound: radius must be positive");
  PackingResult res;
  res.center = p;
  res.radius = r;
  res.separation = r;
  const auto samples = geodesic_disk_sample(engine, p, r, sample_density);
  res.samples = samples.size();
  if (samples.empty()) return res;

  std::vector<double> key(samples.size());
  {
    const SourceField fp = engine.field(p);
    parallel_for(samples.size(), [&](std::size_t s) { key[s] = fp.distance_to(samples[s]); });
  }
  auto argmax = [&] {
    std::size_t best = 0;
    for (std::size_t s = 1; s < key.size(); ++s)
      if (key[s] > key[best]) best = s;
    return best;
  };
  // first witness: the sample farthest from the center
  std::size_t pick = argmax();
  std::fill(key.begin(), key.end(), std::numeric_limits<double>::infinity());
  for (;;) {
    res.witnesses.push_back(samples[pick]);
    const SourceField fw = engine.field(samples[pick]);
    parallel_for(samples.size(), [&](std::size_t s) {
      if (key[s] > res.separation) key[s] = std::min(key[s], fw.distance_to(samples[s]));
    });
    pick = argmax();
    if (!(key[pick] > res.separation)) break;
  }

  // independent re-check of the separation claim
  for (std::size_t i = 0; i < res.witnesses.size(); ++i)
    for (std::size_t j = i + 1; j < res.witnesses.size(); ++j)
      if (!(engine.distance(res.witnesses[i], res.witnesses[j]) > res.separation))
        throw std::logic_error("packing witnesses violate the separation bound");
  return res;
}

GrowthTable doubling_growth_experiment(int m_lo, int m_hi, double eps, double sample_density) {
  GrowthTable table;
  for (int m = m_lo; m <= m_hi; ++m) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto mp = gen_Pstar(m, eps);
      const GeodesicEngine engine(mp.polygon);
      const auto pack = packing_lower_bound(engine, mp.marks.at("c"), 2.0, sample_density);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      table.rows.push_back({m, mp.polygon.vertex_count(), pack.witnesses.size(), secs});
    } catch (const std::exception& e) {
      table.complete = false;
      table.error = "m=" + std::to_string(m) + ": " + e.what();
      break;
    }
  }
  return table;
}

}  // namespace geofat
