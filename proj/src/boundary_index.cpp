#include "geofat/boundary_index.hpp"

#include <algorithm>

namespace geofat {

namespace {
constexpr double kBucketSlack = 1e-10;
}

BoundaryIndex::BoundaryIndex(const Polygon& poly) : edges_(boundary_edges(poly)), box_(bounding_box(poly)) {
  const double w = std::max(box_.width(), 1e-12);
  const double h = std::max(box_.height(), 1e-12);
  const double target = 4.0 * static_cast<double>(edges_.size());
  const double side = std::sqrt(w * h / target);
  nx_ = std::clamp(static_cast<int>(std::ceil(w / side)), 1, 4096);
  ny_ = std::clamp(static_cast<int>(std::ceil(h / side)), 1, 4096);
  cw_ = w / nx_;
  ch_ = h / ny_;

  // two passes: count, then fill (CSR layout)
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
  auto bucket = [&](auto&& sink) {
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
      const Segment& e = edges_[i];
      const int r0 = row(std::min(e.a.y, e.b.y) - kBucketSlack);
      const int r1 = row(std::max(e.a.y, e.b.y) + kBucketSlack);
      for (int r = r0; r <= r1; ++r) {
        const double y0 = box_.lo.y + r * ch_ - kBucketSlack;
        const double y1 = box_.lo.y + (r + 1) * ch_ + kBucketSlack;
        double xa, xb;
        if (e.a.y == e.b.y) {
          xa = std::min(e.a.x, e.b.x);
          xb = std::max(e.a.x, e.b.x);
        } else {
          double t0 = (y0 - e.a.y) / (e.b.y - e.a.y);
          double t1 = (y1 - e.a.y) / (e.b.y - e.a.y);
          if (t0 > t1) std::swap(t0, t1);
          t0 = std::clamp(t0, 0.0, 1.0);
          t1 = std::clamp(t1, 0.0, 1.0);
          const double x0 = e.a.x + t0 * (e.b.x - e.a.x);
          const double x1 = e.a.x + t1 * (e.b.x - e.a.x);
          xa = std::min(x0, x1);
          xb = std::max(x0, x1);
        }
        const int c0 = col(xa - kBucketSlack);
        const int c1 = col(xb + kBucketSlack);
        for (int c = c0; c <= c1; ++c) sink(static_cast<std::size_t>(r) * nx_ + c, i);
      }
    }
  };
  bucket([&](std::size_t cell, std::uint32_t) { ++counts[cell + 1]; });
  for (std::size_t k = 1; k < counts.size(); ++k) counts[k] += counts[k - 1];
  cells_ = counts;
  items_.resize(cells_.back());
  bucket([&](std::size_t cell, std::uint32_t i) { items_[counts[cell]++] = i; });
}

int BoundaryIndex::col(double x) const {
  return std::clamp(static_cast<int>(std::floor((x - box_.lo.x) / cw_)), 0, nx_ - 1);
}

int BoundaryIndex::row(double y) const {
  return std::clamp(static_cast<int>(std::floor((y - box_.lo.y) / ch_)), 0, ny_ - 1);
}

template <class F>
bool BoundaryIndex::visit_cell(int cx, int cy, F&& f) const {
  const std::size_t cell = static_cast<std::size_t>(cy) * nx_ + cx;
  for (std::uint32_t k = cells_[cell]; k < cells_[cell + 1]; ++k)
    if (!f(items_[k])) return false;
  return true;
}

template <class F>
bool BoundaryIndex::visit_along(Point a, Point b, double slack, F&& f) const {
  const int r0 = row(std::min(a.y, b.y) - slack);
  const int r1 = row(std::max(a.y, b.y) + slack);
  for (int r = r0; r <= r1; ++r) {
    const double y0 = box_.lo.y + r * ch_ - slack;
    const double y1 = box_.lo.y + (r + 1) * ch_ + slack;
    double xa, xb;
    if (a.y == b.y) {
      xa = std::min(a.x, b.x);
      xb = std::max(a.x, b.x);
    } else {
      double t0 = (y0 - a.y) / (b.y - a.y);
      double t1 = (y1 - a.y) / (b.y - a.y);
      if (t0 > t1) std::swap(t0, t1);
      t0 = std::clamp(t0, 0.0, 1.0);
      t1 = std::clamp(t1, 0.0, 1.0);
      const double x0 = a.x + t0 * (b.x - a.x);
      const double x1 = a.x + t1 * (b.x - a.x);
      xa = std::min(x0, x1);
      xb = std::max(x0, x1);
    }
    const int c0 = col(xa - slack);
    const int c1 = col(xb + slack);
    for (int c = c0; c <= c1; ++c)
      if (!visit_cell(c, r, f)) return false;
  }
  return true;
}

bool BoundaryIndex::near_boundary(Point p) const {
  bool hit = false;
  const int c0 = col(p.x - kBoundaryTol), c1 = col(p.x + kBoundaryTol);
  const int r0 = row(p.y - kBoundaryTol), r1 = row(p.y + kBoundaryTol);
  for (int r = r0; r <= r1 && !hit; ++r)
    for (int c = c0; c <= c1 && !hit; ++c)
      visit_cell(c, r, [&](std::uint32_t i) {
        const Segment& e = edges_[i];
        hit = point_segment_distance(p, e.a, e.b) <= kBoundaryTol;
        return !hit;
      });
  return hit;
}

// Each crossing edge is counted only in the cell that owns its crossing
// abscissa, so edges spanning several cells are never counted twice.
bool BoundaryIndex::inside_by_ray(Point p) const {
  bool inside = false;
  const int r = row(p.y);
  for (int c = col(p.x); c < nx_; ++c) {
    visit_cell(c, r, [&](std::uint32_t i) {
      double xc;
      if (detail::ray_crossing(p, edges_[i], xc) && xc > p.x && col(xc) == c) inside = !inside;
      return true;
    });
  }
  return inside;
}

Location BoundaryIndex::locate(Point p) const {
  if (p.x < box_.lo.x - kBoundaryTol || p.x > box_.hi.x + kBoundaryTol || p.y < box_.lo.y - kBoundaryTol ||
      p.y > box_.hi.y + kBoundaryTol)
    return Location::Outside;
  if (near_boundary(p)) return Location::Boundary;
  return inside_by_ray(p) ? Location::Inside : Location::Outside;
}

bool BoundaryIndex::visible(Point a, Point b) const {
  if (a == b) return true;
  double ts_buf[64];
  std::vector<double> ts_big;
  int nts = 0;
  ts_buf[nts++] = 0.0;
  ts_buf[nts++] = 1.0;
  const bool clear = visit_along(a, b, kBucketSlack, [&](std::uint32_t i) {
    const auto c = detail::edge_contact(a, b, edges_[i]);
    if (c.proper) return false;
    for (int k = 0; k < c.n_touch; ++k) {
      if (nts < 64) ts_buf[nts++] = c.t[k];
      else ts_big.push_back(c.t[k]);
    }
    return true;
  });
  if (!clear) return false;
  if (nts == 2) {
    // no boundary contact strictly between the endpoints
    return locate(a + (b - a) * 0.5) != Location::Outside;
  }
  std::vector<double> ts(ts_buf, ts_buf + nts);
  ts.insert(ts.end(), ts_big.begin(), ts_big.end());
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] <= 1e-15) continue;
    const Point mid = a + (b - a) * (0.5 * (ts[i] + ts[i + 1]));
    if (locate(mid) == Location::Outside) return false;
  }
  return true;
}

bool BoundaryIndex::segment_inside(Point a, Point b) const {
  if (locate(a) == Location::Outside || locate(b) == Location::Outside)
    throw InvalidQuery("segment_in_polygon: endpoint outside polygon");
  return visible(a, b);
}

}  // namespace geofat
