#include "rconvex/compact_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rconvex/distance_transform.hpp"

namespace rconvex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(Point z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Bbox bbox_of(const std::vector<Point>& pts) {
  Bbox b{pts.front(), pts.front()};
  for (Point p : pts) {
    b.lo = {std::min(b.lo.real(), p.real()), std::min(b.lo.imag(), p.imag())};
    b.hi = {std::max(b.hi.real(), p.real()), std::max(b.hi.imag(), p.imag())};
  }
  return b;
}

}  // namespace

struct CompactSet::RasterCache {
  DistanceTransform edt;
};

double point_segment_distance(Point z, Point a, Point b) {
  return std::abs(z - point_segment_nearest(z, a, b));
}

Point point_segment_nearest(Point z, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return a;
  const double s = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return a + s * ab;
}

CompactSet::CompactSet(FinitePoints v) : data_(std::move(v)) {
  const auto& pts = std::get<FinitePoints>(data_).points;
  require(!pts.empty(), ErrorKind::InvalidArgument, "empty set");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    require(finite(pts[i]), ErrorKind::InvalidArgument, "non-finite point coordinate");
    for (std::size_t j = 0; j < i; ++j)
      require(pts[i] != pts[j], ErrorKind::InvalidArgument, "finite point set has duplicate points");
  }
}

CompactSet::CompactSet(Segment v) : data_(v) {
  require(finite(v.a) && finite(v.b), ErrorKind::InvalidArgument, "non-finite segment endpoint");
}

CompactSet::CompactSet(SampledCurve v) : data_(std::move(v)) {
  const auto& c = std::get<SampledCurve>(data_);
  require(!c.points.empty(), ErrorKind::InvalidArgument, "empty set");
  require(c.points.size() >= 2, ErrorKind::InvalidArgument, "sampled curve needs at least 2 points");
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    require(finite(c.points[i]), ErrorKind::InvalidArgument, "non-finite curve sample");
    if (i > 0)
      require(c.points[i] != c.points[i - 1], ErrorKind::InvalidArgument,
              "sampled curve has repeated consecutive points");
  }
  if (c.closed)
    require(c.points.front() != c.points.back(), ErrorKind::InvalidArgument,
            "closed curve must not repeat its first sample at the end");
}

CompactSet::CompactSet(DiskUnion v) : data_(std::move(v)) {
  const auto& d = std::get<DiskUnion>(data_);
  require(!d.disks.empty(), ErrorKind::InvalidArgument, "empty set");
  for (const auto& disk : d.disks) {
    require(finite(disk.center) && std::isfinite(disk.radius), ErrorKind::InvalidArgument,
            "non-finite disk");
    require(disk.radius > 0.0, ErrorKind::InvalidArgument, "disk radius must be positive");
  }
}

CompactSet::CompactSet(RasterMask v) : data_(std::move(v)) {
  const auto& m = std::get<RasterMask>(data_).mask;
  require(std::any_of(m.values().begin(), m.values().end(), [](auto x) { return x != 0; }),
          ErrorKind::InvalidArgument, "empty set");
  build_raster_cache();
}

void CompactSet::build_raster_cache() {
  auto cache = std::make_shared<RasterCache>();
  cache->edt = euclidean_distance_transform(std::get<RasterMask>(data_).mask);
  raster_ = std::move(cache);
}

std::string_view CompactSet::type_name() const {
  return std::visit(overloaded{[](const FinitePoints&) { return std::string_view("finite"); },
                               [](const Segment&) { return std::string_view("segment"); },
                               [](const SampledCurve&) { return std::string_view("curve"); },
                               [](const DiskUnion&) { return std::string_view("disks"); },
                               [](const RasterMask&) { return std::string_view("mask"); }},
                    data_);
}

Point CompactSet::nearest_point(Point z) const {
  return std::visit(
      overloaded{
          [&](const FinitePoints& f) {
            Point best = f.points.front();
            double bd = kInf;
            for (Point p : f.points) {
              const double d = std::norm(z - p);
              if (d < bd) {
                bd = d;
                best = p;
              }
            }
            return best;
          },
          [&](const Segment& s) { return point_segment_nearest(z, s.a, s.b); },
          [&](const SampledCurve& c) {
            Point best = c.points.front();
            double bd = kInf;
            const std::size_t n = c.points.size();
            for (std::size_t k = 0; k < c.segment_count(); ++k) {
              const Point q = point_segment_nearest(z, c.points[k], c.points[(k + 1) % n]);
              const double d = std::norm(z - q);
              if (d < bd) {
                bd = d;
                best = q;
              }
            }
            return best;
          },
          [&](const DiskUnion& u) {
            Point best{};
            double bd = kInf;
            for (const auto& disk : u.disks) {
              const double r = std::abs(z - disk.center);
              const double d = std::max(0.0, r - disk.radius);
              if (d < bd) {
                bd = d;
                best = r <= disk.radius ? z : disk.center + (z - disk.center) * (disk.radius / r);
              }
            }
            return best;
          },
          [&](const RasterMask& m) {
            const auto& g = m.mask;
            const Point clamped(std::clamp(z.real(), g.lo().real(), g.hi().real()),
                                std::clamp(z.imag(), g.lo().imag(), g.hi().imag()));
            const auto node = g.nearest_node(clamped);
            const std::int64_t site = raster_->edt.nearest_site[g.index(node->first, node->second)];
            const int si = static_cast<int>(site % g.nx());
            const int sj = static_cast<int>(site / g.nx());
            return g.node(si, sj);
          }},
      data_);
}

double CompactSet::distance(Point z) const {
  return std::visit(
      overloaded{[&](const FinitePoints& f) {
                   double bd = kInf;
                   for (Point p : f.points) bd = std::min(bd, std::norm(z - p));
                   return std::sqrt(bd);
                 },
                 [&](const Segment& s) { return point_segment_distance(z, s.a, s.b); },
                 [&](const SampledCurve& c) {
                   double bd = kInf;
                   const std::size_t n = c.points.size();
                   for (std::size_t k = 0; k < c.segment_count(); ++k)
                     bd = std::min(bd, std::norm(z - point_segment_nearest(z, c.points[k],
                                                                           c.points[(k + 1) % n])));
                   return std::sqrt(bd);
                 },
                 [&](const DiskUnion& u) {
                   double bd = kInf;
                   for (const auto& disk : u.disks)
                     bd = std::min(bd, std::max(0.0, std::abs(z - disk.center) - disk.radius));
                   return bd;
                 },
                 [&](const RasterMask&) { return std::abs(z - nearest_point(z)); }},
      data_);
}

Bbox CompactSet::bbox() const {
  return std::visit(overloaded{[](const FinitePoints& f) { return bbox_of(f.points); },
                               [](const Segment& s) { return bbox_of({s.a, s.b}); },
                               [](const SampledCurve& c) { return bbox_of(c.points); },
                               [](const DiskUnion& u) {
                                 Bbox b{u.disks.front().center, u.disks.front().center};
                                 for (const auto& d : u.disks) {
                                   const Point r(d.radius, d.radius);
                                   const Bbox db{d.center - r, d.center + r};
                                   b = bbox_of({b.lo, b.hi, db.lo, db.hi});
                                 }
                                 return b;
                               },
                               [this](const RasterMask&) { return bbox_of(sample_points()); }},
                    data_);
}

double CompactSet::max_modulus() const {
  if (const auto* u = get_if<DiskUnion>()) {
    double s = 0.0;
    for (const auto& d : u->disks) s = std::max(s, std::abs(d.center) + d.radius);
    return s;
  }
  double s = 0.0;
  for (Point p : sample_points()) s = std::max(s, std::abs(p));
  return s;
}

double CompactSet::diameter() const {
  if (const auto* u = get_if<DiskUnion>()) {
    double s = 0.0;
    for (const auto& a : u->disks)
      for (const auto& b : u->disks)
        s = std::max(s, std::abs(a.center - b.center) + a.radius + b.radius);
    return s;
  }
  const auto pts = sample_points();
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) s = std::max(s, std::abs(pts[i] - pts[j]));
  return s;
}

std::vector<Point> CompactSet::sample_points() const {
  return std::visit(overloaded{[](const FinitePoints& f) { return f.points; },
                               [](const Segment& s) { return std::vector<Point>{s.a, s.b}; },
                               [](const SampledCurve& c) { return c.points; },
                               [](const DiskUnion& u) {
                                 std::vector<Point> pts;
                                 for (const auto& d : u.disks) {
                                   auto ring = circle_samples(d.center, d.radius, 64);
                                   pts.insert(pts.end(), ring.begin(), ring.end());
                                 }
                                 return pts;
                               },
                               [](const RasterMask& m) {
                                 std::vector<Point> pts;
                                 const auto& g = m.mask;
                                 for (int j = 0; j < g.ny(); ++j)
                                   for (int i = 0; i < g.nx(); ++i)
                                     if (g(i, j)) pts.push_back(g.node(i, j));
                                 return pts;
                               }},
                    data_);
}

CompactSet make_finite(std::vector<Point> pts) { return CompactSet(FinitePoints{std::move(pts)}); }
CompactSet make_segment(Point a, Point b) { return CompactSet(Segment{a, b}); }
CompactSet make_curve(std::vector<Point> pts, bool closed) {
  return CompactSet(SampledCurve{std::move(pts), closed});
}
CompactSet make_disks(std::vector<Disk> disks) { return CompactSet(DiskUnion{std::move(disks)}); }
CompactSet make_mask(MaskGrid mask) { return CompactSet(RasterMask{std::move(mask)}); }

MaskGrid rasterize(const CompactSet& e, const MaskGrid& tmpl, double tol) {
  MaskGrid out = tmpl.like<std::uint8_t>(0);
  for (int j = 0; j < out.ny(); ++j)
    for (int i = 0; i < out.nx(); ++i) out(i, j) = e.distance(out.node(i, j)) <= tol ? 1 : 0;
  return out;
}

std::vector<Point> circle_samples(Point center, double radius, int n) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k)
    pts.push_back(center + std::polar(radius, 2.0 * std::numbers::pi * k / n));
  return pts;
}

std::vector<Point> arc_samples(Point center, double radius, double theta0, double theta1, int n) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k)
    pts.push_back(center + std::polar(radius, theta0 + (theta1 - theta0) * k / (n - 1)));
  return pts;
}

}  // namespace rconvex
