#include "rconvex/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

namespace rconvex::geometry {
namespace {

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  const double scale = std::abs(b - a) * std::abs(c - a);
  if (std::abs(v) <= 1e-14 * scale) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

double polyline_distance(const SampledCurve& c, Point z) {
  double best = kInfinity;
  const std::size_t n = c.points.size();
  for (std::size_t k = 0; k < c.segment_count(); ++k)
    best = std::min(best, point_segment_distance(z, c.points[k], c.points[(k + 1) % n]));
  return best;
}

void check_margin(const CompactSet& e, const Bbox& grid_box, double margin, const char* msg) {
  const Bbox need = e.bbox().expanded(margin);
  const double slack = 1e-9 * (1.0 + std::max(grid_box.width(), grid_box.height()));
  const bool ok = grid_box.lo.real() <= need.lo.real() + slack &&
                  grid_box.lo.imag() <= need.lo.imag() + slack &&
                  grid_box.hi.real() >= need.hi.real() - slack &&
                  grid_box.hi.imag() >= need.hi.imag() - slack;
  require(ok, ErrorKind::Precondition, msg);
}

}  // namespace

double distance_to_set(Point z, const CompactSet& e) { return e.distance(z); }

GridField distance_field(const CompactSet& e, const GridSpec& spec) {
  GridField d = spec.make<double>(0.0);
  for (int j = 0; j < d.ny(); ++j)
    for (int i = 0; i < d.nx(); ++i) d(i, j) = e.distance(d.node(i, j));
  return d;
}

std::optional<double> circumradius(const Triangle& t) {
  const Point d12 = t.a - t.b;
  const Point d23 = t.b - t.c;
  const Point d13 = t.a - t.c;
  require(d12 != 0.0 && d23 != 0.0 && d13 != 0.0, ErrorKind::InvalidArgument,
          "triangle has coincident vertices");
  const double im = (d12 * std::conj(d23)).imag();
  const double l12 = std::abs(d12), l23 = std::abs(d23), l13 = std::abs(d13);
  if (std::abs(im) <= 1e-12 * l12 * l23) return std::nullopt;
  return l12 * l23 * l13 / (2.0 * std::abs(im));
}

CurvatureRadius global_curvature_radius(const CompactSet& e) {
  require(e.get_if<FinitePoints>() || e.get_if<SampledCurve>(), ErrorKind::InvalidArgument,
          "global curvature radius needs a finite point set or a sampled curve");
  const std::vector<Point> pts = e.sample_points();
  const std::size_t n = pts.size();
  require(n >= 3, ErrorKind::InvalidArgument, "global curvature radius needs at least 3 points");

  CurvatureRadius best;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // R(abc) >= |a - b| / 2 for every third vertex.
      if (0.5 * std::abs(pts[i] - pts[j]) >= best.value) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        const Triangle tri{pts[i], pts[j], pts[k]};
        if (pts[k] == pts[i] || pts[k] == pts[j]) continue;
        const auto r = circumradius(tri);
        if (r && *r < best.value) {
          best.value = *r;
          best.witness = tri;
        }
      }
    }
  }
  return best;
}

double curvature_at(const SampledCurve& curve, int index) {
  const int n = static_cast<int>(curve.points.size());
  require(index >= 0 && index < n, ErrorKind::InvalidArgument, "curve index out of range");
  if (curve.closed) {
    require(n >= 5, ErrorKind::InvalidArgument, "closed curve needs at least 5 samples");
  } else {
    require(index >= 2 && index <= n - 3, ErrorKind::InvalidArgument,
            "curvature index needs two neighbours on each side");
  }
  auto at = [&](int k) { return curve.points[static_cast<std::size_t>(((index + k) % n + n) % n)]; };
  const Point m2 = at(-2), m1 = at(-1), c0 = at(0), p1 = at(1), p2 = at(2);
  const Point d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / 12.0;
  const Point d2 = (-p2 + 16.0 * p1 - 30.0 * c0 + 16.0 * m1 - m2) / 12.0;
  const double speed = std::abs(d1);
  require(speed > 0.0, ErrorKind::Numerical, "zero tangent at curve sample");
  return std::abs(d2.imag() * d1.real() - d2.real() * d1.imag()) / (speed * speed * speed);
}

InscribedDisk max_inscribed_disk(Point z, const CompactSet& e, double r_cap) {
  require(r_cap > 0.0, ErrorKind::InvalidArgument, "r_cap must be positive");
  const double dz = e.distance(z);
  require(dz > 1e-12 * (1.0 + std::abs(z)), ErrorKind::Precondition, "point lies in E");

  // Feasible centres x satisfy |x - z| < d(x); the disk at x has radius d(x).
  auto score = [&](Point x) {
    const double d = e.distance(x);
    return std::abs(x - z) < d ? d : -1.0;
  };

  constexpr int kSeeds = 41;
  const double span = r_cap;
  struct Cand {
    double value;
    Point x;
  };
  std::vector<Cand> cands{{dz, z}};
  for (int a = 0; a < kSeeds; ++a) {
    for (int b = 0; b < kSeeds; ++b) {
      const Point x = z + Point(-span + 2.0 * span * a / (kSeeds - 1),
                                -span + 2.0 * span * b / (kSeeds - 1));
      const double s = score(x);
      if (s >= r_cap) return {true, {}};
      if (s > 0.0) cands.push_back({s, x});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) { return l.value > r.value; });
  cands.resize(std::min<std::size_t>(cands.size(), 8));

  static const std::array<Point, 8> dirs = {Point(1, 0),  Point(-1, 0), Point(0, 1),
                                            Point(0, -1), Point(1, 1),  Point(1, -1),
                                            Point(-1, 1), Point(-1, -1)};
  Cand best = cands.front();
  for (Cand c : cands) {
    double step = 2.0 * span / (kSeeds - 1);
    while (step > 1e-10 * (1.0 + span)) {
      bool moved = false;
      for (Point dir : dirs) {
        const Point x = c.x + step * dir / std::abs(dir);
        const double s = score(x);
        if (s >= r_cap) return {true, {}};
        if (s > c.value) {
          c = {s, x};
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (c.value > best.value) best = c;
  }
  return {false, Disk{best.x, best.value}};
}

OmegaComponents omega_t_components(const GridField& dist, double t) {
  OmegaComponents out;
  out.labels = dist.like<int>(0);
  const int nx = dist.nx(), ny = dist.ny();
  std::queue<std::pair<int, int>> queue;
  int next = 0;
  for (int j0 = 0; j0 < ny; ++j0) {
    for (int i0 = 0; i0 < nx; ++i0) {
      if (dist(i0, j0) <= t || out.labels(i0, j0) != 0) continue;
      const int label = ++next;
      bool touches_frame = false;
      out.labels(i0, j0) = label;
      queue.emplace(i0, j0);
      while (!queue.empty()) {
        const auto [i, j] = queue.front();
        queue.pop();
        touches_frame = touches_frame || dist.on_frame(i, j);
        const std::array<std::pair<int, int>, 4> nb = {
            std::pair{i + 1, j}, std::pair{i - 1, j}, std::pair{i, j + 1}, std::pair{i, j - 1}};
        for (auto [a, b] : nb) {
          if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
          if (dist(a, b) <= t || out.labels(a, b) != 0) continue;
          out.labels(a, b) = label;
          queue.emplace(a, b);
        }
      }
      if (touches_frame && out.unbounded_label == 0) out.unbounded_label = label;
    }
  }
  out.count = next;
  return out;
}

OmegaComponents omega_t_components(const CompactSet& e, double t, const GridSpec& grid) {
  require(t >= 0.0, ErrorKind::InvalidArgument, "t must be nonnegative");
  check_margin(e, grid.bbox(), 2.0 * t + 2.0 * grid.h,
               "grid bbox must contain E with a margin above 2t + 2h");
  return omega_t_components(distance_field(e, grid), t);
}

double separation(const FinitePoints& pts) {
  require(pts.points.size() >= 2, ErrorKind::InvalidArgument, "separation needs two points");
  double best = kInfinity;
  for (std::size_t i = 0; i < pts.points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) best = std::min(best, std::abs(pts.points[i] - pts.points[j]));
  return best;
}

T0Estimate t0_estimate(const CompactSet& e, const GridSpec& grid, double t_max,
                       std::optional<double> r) {
  require(t_max > 0.0, ErrorKind::InvalidArgument, "t_max must be positive");
  T0Estimate out;
  if (r) out.quarter_radius_bound = *r / 4.0;
  if (const auto* f = e.get_if<FinitePoints>()) {
    out.t0 = f->points.size() >= 2 ? 0.5 * separation(*f) : t_max;
    out.exact = true;
    return out;
  }
  check_margin(e, grid.bbox(), 2.0 * t_max + 2.0 * grid.h,
               "grid bbox must contain E with a margin above 2 t_max + 2h");
  const GridField dist = distance_field(e, grid);
  // At grid resolution Omega_0 excludes the nodes that make up E's raster.
  const double raster_radius = grid.h / std::sqrt(2.0);
  require(omega_t_components(dist, raster_radius).count == 1, ErrorKind::Precondition,
          "E splits the plane at this resolution");
  auto connected = [&](double t) { return omega_t_components(dist, t).count == 1; };
  if (connected(t_max)) {
    out.t0 = t_max;
    return out;
  }
  double lo = raster_radius, hi = t_max;
  while (hi - lo > 1e-3 * grid.h) {
    const double mid = 0.5 * (lo + hi);
    (connected(mid) ? lo : hi) = mid;
  }
  out.t0 = lo;
  return out;
}

bool self_intersects(const SampledCurve& curve) {
  const std::size_t n = curve.points.size();
  const std::size_t m = curve.segment_count();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const bool adjacent = b == a + 1 || (curve.closed && a == 0 && b == m - 1);
      if (adjacent) continue;
      if (segments_intersect(curve.points[a], curve.points[(a + 1) % n], curve.points[b],
                             curve.points[(b + 1) % n]))
        return true;
    }
  }
  return false;
}

BallCheck uniform_ball_check(const SampledCurve& curve, double r, std::optional<double> eps) {
  require(r > 0.0, ErrorKind::InvalidArgument, "r must be positive");
  require(curve.closed && curve.points.size() >= 3, ErrorKind::InvalidArgument,
          "uniform ball check needs a closed curve with at least 3 samples");
  require(!self_intersects(curve), ErrorKind::InvalidArgument, "self-intersecting polyline");

  const auto& p = curve.points;
  const std::size_t n = p.size();
  double area2 = 0.0;
  double max_edge = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    area2 += cross(p[k], p[(k + 1) % n]);
    max_edge = std::max(max_edge, std::abs(p[(k + 1) % n] - p[k]));
  }
  const double tol = eps.value_or(max_edge);
  // Inward normal is the left normal for counter-clockwise orientation.
  const Point to_inner = area2 > 0.0 ? Point(0, 1) : Point(0, -1);

  BallCheck out;
  out.inner_pass = true;
  out.outer_pass = true;
  out.worst_slack = kInfinity;
  for (std::size_t k = 0; k < n; ++k) {
    const Point tangent = p[(k + 1) % n] - p[(k + n - 1) % n];
    const Point normal = to_inner * tangent / std::abs(tangent);
    for (int side : {1, -1}) {
      const Point center = p[k] + double(side) * r * normal;
      const double slack = polyline_distance(curve, center) - r;
      const bool ok = slack >= -tol;
      if (!ok) (side == 1 ? out.inner_pass : out.outer_pass) = false;
      if (slack < out.worst_slack) {
        out.worst_slack = slack;
        out.worst_index = static_cast<int>(k);
        out.worst_point = p[k];
      }
    }
  }
  out.pass = out.inner_pass && out.outer_pass;
  return out;
}

}  // namespace rconvex::geometry
