#pragma once

#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "rconvex/grid.hpp"

namespace rconvex {

/// Open disk B(center, radius); DiskUnion treats its members as closed.
struct Disk {
  Point center;
  double radius = 0.0;
};

struct Triangle {
  Point a, b, c;
};

struct FinitePoints {
  std::vector<Point> points;
};

struct Segment {
  Point a, b;
};

/// Ordered polyline samples; when `closed` the last sample connects back to the first.
struct SampledCurve {
  std::vector<Point> points;
  bool closed = false;

  std::size_t segment_count() const {
    return points.size() < 2 ? 0 : (closed ? points.size() : points.size() - 1);
  }
};

struct DiskUnion {
  std::vector<Disk> disks;
};

/// Raster membership: nodes with nonzero value belong to the set.
struct RasterMask {
  MaskGrid mask;
};

/// A planar compact set in one of its concrete representations. Construction
/// validates the representation; queries are exact for the analytic variants
/// and accurate to one grid spacing for RasterMask.
class CompactSet {
 public:
  using Variant = std::variant<FinitePoints, Segment, SampledCurve, DiskUnion, RasterMask>;

  explicit CompactSet(FinitePoints v);
  explicit CompactSet(Segment v);
  explicit CompactSet(SampledCurve v);
  explicit CompactSet(DiskUnion v);
  explicit CompactSet(RasterMask v);

  const Variant& variant() const { return data_; }
  std::string_view type_name() const;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&data_);
  }

  double distance(Point z) const;
  /// A point of E realising distance(z).
  Point nearest_point(Point z) const;
  Bbox bbox() const;
  /// max |zeta| over E.
  double max_modulus() const;
  double diameter() const;

  /// Representative points of E: the points, curve samples, segment endpoints,
  /// or raster nodes. Used as the vertex pool for triangle searches.
  std::vector<Point> sample_points() const;

 private:
  struct RasterCache;
  void build_raster_cache();

  Variant data_;
  std::shared_ptr<const RasterCache> raster_;
};

CompactSet make_finite(std::vector<Point> pts);
CompactSet make_segment(Point a, Point b);
CompactSet make_curve(std::vector<Point> pts, bool closed);
CompactSet make_disks(std::vector<Disk> disks);
CompactSet make_mask(MaskGrid mask);

/// Rasterises E onto `tmpl`: a node is set when dist(node, E) <= tol.
MaskGrid rasterize(const CompactSet& e, const MaskGrid& tmpl, double tol);

/// Samples of the circle |z - center| = radius starting at angle 0.
std::vector<Point> circle_samples(Point center, double radius, int n);
/// Samples of the arc center + radius*exp(i theta), theta0 <= theta <= theta1, endpoints included.
std::vector<Point> arc_samples(Point center, double radius, double theta0, double theta1, int n);

double point_segment_distance(Point z, Point a, Point b);
Point point_segment_nearest(Point z, Point a, Point b);

}  // namespace rconvex
