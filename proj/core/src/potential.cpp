#include "rconvex/potential.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rconvex/errors.hpp"
#include "rconvex/geometry.hpp"

namespace rconvex::potential {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct BoundaryPoint {
  Point b;       // point of the boundary of Theta_t
  Point normal;  // outward unit normal (away from E)
  double depth;  // source sits at b - depth * normal
};

bool inside_polygon(const std::vector<Point>& poly, Point z) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[i], b = poly[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (z.real() < x) in = !in;
    }
  }
  return in;
}

void add_circle(std::vector<BoundaryPoint>& out, Point c, double radius, double depth,
                double spacing, double phase) {
  const int n = std::max(8, static_cast<int>(std::ceil(kTwoPi * radius / spacing)));
  for (int k = 0; k < n; ++k) {
    const Point u = std::polar(1.0, kTwoPi * (k + phase) / n);
    out.push_back({c + radius * u, u, depth});
  }
}

void add_offset_segment(std::vector<BoundaryPoint>& out, Point a, Point b, double t,
                        double spacing, double phase) {
  const Point dir = (b - a) / std::abs(b - a);
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / spacing)));
  for (const Point nu : {dir * Point(0, 1), dir * Point(0, -1)}) {
    for (int k = 0; k < n; ++k) {
      const Point p = a + (b - a) * ((k + phase) / n);
      out.push_back({p + t * nu, nu, 0.5 * t});
    }
  }
}

std::vector<BoundaryPoint> polyline_candidates(const std::vector<Point>& pts, bool closed, double t,
                                               double spacing, double phase) {
  std::vector<BoundaryPoint> out;
  const std::size_t n = pts.size();
  const std::size_t segs = closed ? n : n - 1;
  for (std::size_t k = 0; k < segs; ++k)
    add_offset_segment(out, pts[k], pts[(k + 1) % n], t, spacing, phase);
  for (Point v : pts) add_circle(out, v, t, 0.5 * t, spacing, phase);
  return out;
}

/// Samples of a closed polyline itself (t = 0) spaced by arc length, normals
/// taken from the centroid.
std::vector<BoundaryPoint> closed_curve_sheet(const std::vector<Point>& pts, double spacing,
                                              double phase) {
  Point c = 0.0;
  for (Point p : pts) c += p;
  c /= static_cast<double>(pts.size());
  const std::size_t n = pts.size();
  double length = 0.0;
  for (std::size_t k = 0; k < n; ++k) length += std::abs(pts[(k + 1) % n] - pts[k]);
  const int m = std::max(8, static_cast<int>(std::ceil(length / spacing)));
  const double step = length / m;
  std::vector<BoundaryPoint> out;
  std::size_t seg = 0;
  double seg_start = 0.0;
  for (int s = 0; s < m; ++s) {
    const double at = (s + phase) * step;
    while (seg + 1 < n && seg_start + std::abs(pts[(seg + 1) % n] - pts[seg]) < at) {
      seg_start += std::abs(pts[(seg + 1) % n] - pts[seg]);
      ++seg;
    }
    const Point a = pts[seg], b = pts[(seg + 1) % n];
    const Point p = a + (b - a) * ((at - seg_start) / std::abs(b - a));
    const double r = std::abs(p - c);
    require(r > 0.0, ErrorKind::Precondition, "curve passes through its centroid");
    out.push_back({p, (p - c) / r, 0.5 * r});
  }
  return out;
}

std::vector<BoundaryPoint> boundary_points(const CompactSet& e, double t, double spacing,
                                           double phase, bool outer_only) {
  const double keep = t * (1.0 - 1e-9);
  std::vector<BoundaryPoint> cand;
  const std::vector<Point>* polygon = nullptr;

  if (const auto* f = e.get_if<FinitePoints>()) {
    require(t > 0.0, ErrorKind::Precondition, "finite sets need t > 0 (zero capacity)");
    for (Point p : f->points) add_circle(cand, p, t, 0.5 * t, spacing, phase);
  } else if (const auto* s = e.get_if<Segment>()) {
    require(t > 0.0, ErrorKind::Precondition, "a segment needs t > 0 for collocation");
    cand = polyline_candidates({s->a, s->b}, false, t, spacing, phase);
  } else if (const auto* c = e.get_if<SampledCurve>()) {
    if (c->closed) polygon = &c->points;
    if (t == 0.0) {
      require(c->closed, ErrorKind::Precondition, "an open curve needs t > 0 for collocation");
      return closed_curve_sheet(c->points, spacing, phase);
    }
    cand = polyline_candidates(c->points, c->closed, t, spacing, phase);
  } else if (const auto* u = e.get_if<DiskUnion>()) {
    std::vector<BoundaryPoint> out;
    for (const Disk& d : u->disks) {
      std::vector<BoundaryPoint> ring;
      add_circle(ring, d.center, d.radius + t, t + 0.5 * d.radius, spacing, phase);
      for (const auto& p : ring) {
        bool covered = false;
        for (const Disk& o : u->disks)
          covered = covered || (&o != &d && std::abs(p.b - o.center) < (o.radius + t) * (1.0 - 1e-9));
        if (!covered) out.push_back(p);
      }
    }
    return out;
  } else if (const auto* m = e.get_if<RasterMask>()) {
    require(t > 0.0, ErrorKind::Precondition, "a raster needs t > 0 for collocation");
    const MaskGrid& g = m->mask;
    const double step = std::min(spacing, g.h());
    const auto spec = GridSpec::covering(e.bbox().expanded(t + 2.0 * step),
                                         static_cast<int>(std::ceil(
                                             (std::max(e.bbox().width(), e.bbox().height()) + 2 * t) /
                                             step)) + 5);
    const GridField dist = geometry::distance_field(e, spec);
    for (int j = 0; j < dist.ny(); ++j)
      for (int i = 0; i < dist.nx(); ++i) {
        if (dist(i, j) <= t) continue;
        const bool edge = (i > 0 && dist(i - 1, j) <= t) || (i + 1 < dist.nx() && dist(i + 1, j) <= t) ||
                          (j > 0 && dist(i, j - 1) <= t) || (j + 1 < dist.ny() && dist(i, j + 1) <= t);
        if (!edge) continue;
        const Point w = dist.node(i, j);
        const Point a = e.nearest_point(w);
        const Point u = (w - a) / std::abs(w - a);
        cand.push_back({a + t * u, u, 0.5 * t});
      }
    return cand;
  }

  std::vector<BoundaryPoint> out;
  out.reserve(cand.size());
  for (const auto& p : cand) {
    if (e.distance(p.b) < keep) continue;
    if (outer_only && polygon && inside_polygon(*polygon, p.b)) continue;
    out.push_back(p);
  }
  return out;
}

void check_connected(const CompactSet& e, double t, bool outer_only) {
  if (outer_only) return;
  const Bbox box = e.bbox();
  const double extent = std::max({box.width(), box.height(), 1e-3});
  const double scale = t > 0.0 ? t : 0.05 * extent;
  const int n = std::clamp(static_cast<int>(std::ceil(3.0 * (extent + 6.0 * scale) / scale)), 128, 768);
  const double h_est = (extent + 6.0 * scale) / (n - 1);
  const auto grid = GridSpec::covering(box.expanded(2.0 * t + 4.0 * h_est + 0.05 * extent), n);
  const auto comps = geometry::omega_t_components(e, t, grid);
  require(comps.count == 1, ErrorKind::Precondition, "domain disconnected");
}

double boundary_length(const std::vector<BoundaryPoint>& pts, double spacing) {
  return static_cast<double>(pts.size()) * spacing;
}

}  // namespace

std::string to_string(GreenMethod m) {
  switch (m) {
    case GreenMethod::ClosedFormDisk: return "ClosedFormDisk";
    case GreenMethod::ClosedFormExteriorDisk: return "ClosedFormExteriorDisk";
    case GreenMethod::FiniteSetLowerBound: return "FiniteSetLowerBound";
    case GreenMethod::Collocation: return "Collocation";
  }
  return "Unknown";
}

double GreenEstimate::evaluate(Point z) const {
  double v = constant;
  for (const auto& [s, c] : sources) v += c * std::log(std::abs(z - s));
  return v;
}

double green_disk_center_pole(const Disk& disk, Point v) {
  require(disk.radius > 0.0, ErrorKind::InvalidArgument, "disk radius must be positive");
  const double r = std::abs(v - disk.center);
  require(r <= disk.radius * (1.0 + 1e-12), ErrorKind::InvalidArgument, "v outside the closed disk");
  if (r == 0.0) return kInf;
  return std::max(0.0, std::log(disk.radius / r));
}

double green_exterior_disk(double R, Point z) {
  require(R > 0.0, ErrorKind::InvalidArgument, "R must be positive");
  const double a = std::abs(z);
  require(a >= R * (1.0 - 1e-12), ErrorKind::InvalidArgument, "|z| < R");
  return std::max(0.0, std::log(a) - std::log(R));
}

GreenEstimate exterior_disk_estimate(const Disk& disk) {
  require(disk.radius > 0.0, ErrorKind::InvalidArgument, "disk radius must be positive");
  GreenEstimate g;
  g.method = GreenMethod::ClosedFormExteriorDisk;
  g.constant = -std::log(disk.radius);
  g.sources = {{disk.center, 1.0}};
  return g;
}

FiniteSetConstants finite_set_constants(const FinitePoints& e) {
  const std::size_t n = e.points.size();
  require(n >= 2, ErrorKind::InvalidArgument, "need at least two points");
  FiniteSetConstants out;
  out.N = static_cast<int>(n);
  out.m.assign(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) {
        const double d = std::abs(e.points[i] - e.points[j]);
        require(d > 0.0, ErrorKind::InvalidArgument, "duplicate points");
        out.m[j] *= d;
      }
  out.C = std::ldexp(*std::max_element(out.m.begin(), out.m.end()), out.N - 1);
  out.delta = geometry::separation(e);
  out.t1 = 0.5 * out.delta;
  out.k = 1.0 + 2.0 * out.C * std::pow(2.0 / out.delta, out.N - 1);
  return out;
}

double vt_lower_bound(const FinitePoints& e, double t, Point z) {
  const auto k = finite_set_constants(e);
  require(t > 0.0, ErrorKind::InvalidArgument, "t must be positive");
  require(t <= k.t1 * (1.0 + 1e-12), ErrorKind::Precondition, "outside validity range");
  double s = 0.0;
  for (Point p : e.points) {
    const double d = std::abs(z - p);
    if (d == 0.0) return -kInf;
    s += std::log(d);
  }
  return (s - std::log(t) - std::log(k.C)) / k.N;
}

std::vector<std::pair<Point, Point>> theta_boundary(const CompactSet& e, double t, double spacing,
                                                    bool outer_only) {
  require(t >= 0.0, ErrorKind::InvalidArgument, "t must be nonnegative");
  require(spacing > 0.0, ErrorKind::InvalidArgument, "spacing must be positive");
  std::vector<std::pair<Point, Point>> out;
  for (const auto& p : boundary_points(e, t, spacing, 0.5, outer_only)) out.emplace_back(p.b, p.normal);
  return out;
}

GreenEstimate green_collocation(const CompactSet& e, double t, const std::vector<Point>& queries,
                                const CollocationOptions& opts) {
  require(t >= 0.0, ErrorKind::InvalidArgument, "t must be nonnegative");
  require(opts.n_sources >= 0 && opts.n_collocation >= 0, ErrorKind::InvalidArgument,
          "counts must be nonnegative");
  require(opts.density > 0.0, ErrorKind::InvalidArgument, "density must be positive");
  const std::vector<Point>* polygon = nullptr;
  if (const auto* c = e.get_if<SampledCurve>(); c && c->closed && opts.outer_only) polygon = &c->points;
  for (Point z : queries) {
    const bool in_domain = e.distance(z) > t * (1.0 - 1e-9) && !(polygon && inside_polygon(*polygon, z));
    require(in_domain, ErrorKind::InvalidArgument, "query outside the domain");
  }
  check_connected(e, t, opts.outer_only);

  // Estimate the boundary length and typical source depth from a fine pass.
  const double extent = std::max({e.bbox().width(), e.bbox().height(), t});
  const double fine = t > 0.0 ? t / 8.0 : extent / 400.0;
  const auto probe = boundary_points(e, t, fine, 0.5, opts.outer_only);
  require(!probe.empty(), ErrorKind::Numerical, "no boundary points found");
  const double length = boundary_length(probe, fine);
  double depth = 0.0;
  for (const auto& p : probe) depth += p.depth;
  depth /= static_cast<double>(probe.size());

  const int n_src = opts.n_sources > 0
                        ? opts.n_sources
                        : std::clamp(static_cast<int>(std::ceil(opts.density * length / depth)), 16, 3000);
  const int n_col = opts.n_collocation > 0 ? opts.n_collocation : 2 * n_src;

  const auto src_pts = boundary_points(e, t, length / n_src, 0.25, opts.outer_only);
  const auto col_pts = boundary_points(e, t, length / n_col, 0.0, opts.outer_only);
  const auto chk_pts = boundary_points(e, t, length / n_col, 0.5, opts.outer_only);
  const std::size_t m = src_pts.size();
  const std::size_t rows = col_pts.size();
  require(m >= 1, ErrorKind::Numerical, "no sources placed");

  std::vector<Point> src(m);
  for (std::size_t j = 0; j < m; ++j) src[j] = src_pts[j].b - src_pts[j].depth * src_pts[j].normal;

  // Unknowns: c0 and c_j for j >= 1 multiplying log|z - s_j| - log|z - s_0|;
  // the coefficient of log|z - s_0| is 1 - sum c_j.
  const std::size_t cols = m;
  if (rows < cols) {
    std::ostringstream msg;
    msg << "rank-deficient collocation system: " << rows << " rows for " << cols << " unknowns";
    fail(ErrorKind::Numerical, msg.str());
  }
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const Point b = col_pts[i].b;
    const double l0 = std::log(std::abs(b - src[0]));
    A(i, 0) = 1.0;
    for (std::size_t j = 1; j < m; ++j) A(i, j) = std::log(std::abs(b - src[j])) - l0;
    rhs(i) = -l0;
  }
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j)
    if (scale(j) == 0.0) scale(j) = 1.0;
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cut = opts.sv_threshold * sv(0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  if (rank == 0) {
    std::ostringstream msg;
    msg << "rank-deficient collocation system: condition number "
        << (sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : kInf);
    fail(ErrorKind::Numerical, msg.str());
  }
  const Eigen::VectorXd utb = svd.matrixU().leftCols(rank).transpose() * rhs;
  const Eigen::VectorXd y = svd.matrixV().leftCols(rank) * utb.cwiseQuotient(sv.head(rank));
  const Eigen::VectorXd x = y.cwiseQuotient(scale);

  GreenEstimate out;
  out.method = GreenMethod::Collocation;
  out.rank = static_cast<int>(rank);
  out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : kInf;
  out.constant = x(0);
  double lead = 1.0;
  for (std::size_t j = 1; j < m; ++j) lead -= x(static_cast<Eigen::Index>(j));
  out.sources.emplace_back(src[0], lead);
  for (std::size_t j = 1; j < m; ++j) out.sources.emplace_back(src[j], x(static_cast<Eigen::Index>(j)));

  double residual = 0.0;
  for (const auto* set : {&col_pts, &chk_pts})
    for (const auto& p : *set) residual = std::max(residual, std::abs(out.evaluate(p.b)));
  out.boundary_residual = residual;

  out.queries = queries;
  out.values.reserve(queries.size());
  for (Point z : queries) {
    double v = out.evaluate(z);
    if (v < 0.0) {
      if (v >= -residual) {
        v = 0.0;
        ++out.clamped;
      } else {
        ++out.negative;
      }
    }
    out.values.push_back(v);
  }
  return out;
}

LemmaRatio lemma_l1_ratio(const CompactSet& e, double t, const std::vector<Point>& samples,
                          const CollocationOptions& opts) {
  require(t >= 0.0, ErrorKind::InvalidArgument, "t must be nonnegative");
  require(!samples.empty(), ErrorKind::InvalidArgument, "no sample points");
  for (Point z : samples)
    require(e.distance(z) > t, ErrorKind::InvalidArgument, "sample outside Omega_t");
  const GreenEstimate g = green_collocation(e, t / 5.0, samples, opts);
  require(g.negative == 0, ErrorKind::Numerical, "collocation failure");
  LemmaRatio out;
  out.residual = g.boundary_residual;
  out.infimum = kInf;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Point z = samples[k];
    const double ratio = g.values[k] * (std::abs(z) + 1.0) / e.distance(z);
    out.ratios.push_back(ratio);
    if (ratio < out.infimum) {
      out.infimum = ratio;
      out.argmin = z;
    }
  }
  require(out.infimum > 0.0, ErrorKind::Numerical, "collocation failure");
  return out;
}

}  // namespace rconvex::potential
