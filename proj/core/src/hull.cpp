#include <cmath>

#include "rconvex/distance_transform.hpp"
#include "rconvex/geometry.hpp"

namespace rconvex::geometry {
namespace {

void check_hull_margin(const CompactSet& e, const Bbox& grid_box, double r) {
  const Bbox need = e.bbox().expanded(2.0 * r);
  const double slack = 1e-9 * (1.0 + std::max(grid_box.width(), grid_box.height()));
  const bool ok = grid_box.lo.real() <= need.lo.real() + slack &&
                  grid_box.lo.imag() <= need.lo.imag() + slack &&
                  grid_box.hi.real() >= need.hi.real() - slack &&
                  grid_box.hi.imag() >= need.hi.imag() - slack;
  require(ok, ErrorKind::Precondition, "bbox must contain E with 2r margin");
}

}  // namespace

HullResult r_convex_hull(const CompactSet& e, double r, const GridSpec& grid) {
  require(r > 0.0, ErrorKind::InvalidArgument, "r must be positive");
  check_hull_margin(e, grid.bbox(), r);
  return r_convex_hull(e, r, distance_field(e, grid));
}

HullResult r_convex_hull(const CompactSet& e, double r, const GridField& dist) {
  require(r > 0.0, ErrorKind::InvalidArgument, "r must be positive");
  check_hull_margin(e, dist.bbox(), r);

  // Feasible centres: nodes whose distance to E is at least r. Every such node s
  // carries the empty disk B(s, d(s)), itself a union of r-disks avoiding E.
  MaskGrid centres = dist.like<std::uint8_t>(0);
  for (std::size_t k = 0; k < dist.size(); ++k) centres[k] = dist[k] >= r ? 1 : 0;
  const DistanceTransform edt = euclidean_distance_transform(centres);

  // Nodes within half a cell diagonal of E stand for E's raster and always stay.
  const double raster_radius = dist.h() / std::sqrt(2.0);
  HullResult out{dist.like<std::uint8_t>(1), r, 0.0};
  const int nx = dist.nx(), ny = dist.ny();
  auto covered_by = [&](std::size_t k, std::int64_t s) {
    if (s < 0) return false;
    const auto su = static_cast<std::size_t>(s);
    const double dx = static_cast<double>(static_cast<int>(k % nx) - static_cast<int>(su % nx));
    const double dy = static_cast<double>(static_cast<int>(k / nx) - static_cast<int>(su / nx));
    return std::hypot(dx, dy) * dist.h() < dist[su];
  };
  for (std::size_t k = 0; k < dist.size(); ++k) {
    bool covered = covered_by(k, edt.nearest_site[k]);
    // Fall back to the nearest centres of the eight neighbours.
    const int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
    for (int dj = -1; dj <= 1 && !covered; ++dj)
      for (int di = -1; di <= 1 && !covered; ++di) {
        const int a = i + di, b = j + dj;
        if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
        covered = covered_by(k, edt.nearest_site[static_cast<std::size_t>(b) * nx + a]);
      }
    if (covered && dist[k] > raster_radius) out.mask[k] = 0;
    if (!covered) out.hausdorff_excess = std::max(out.hausdorff_excess, dist[k]);
  }
  return out;
}

RadiusOfConvexity radius_of_convexity(const CompactSet& e, const GridSpec& grid, double r_lo,
                                      double r_hi, double tol) {
  require(r_lo > 0.0 && r_lo < r_hi, ErrorKind::InvalidArgument, "need 0 < r_lo < r_hi");
  require(tol > 0.0, ErrorKind::InvalidArgument, "tol must be positive");
  check_hull_margin(e, grid.bbox(), r_hi);

  const GridField dist = distance_field(e, grid);
  const double threshold = 2.0 * grid.h;
  auto excess = [&](double r) { return r_convex_hull(e, r, dist).hausdorff_excess; };

  const double base = excess(r_lo);
  require(base <= threshold, ErrorKind::Precondition, "E not r_lo-convex at grid resolution");
  // Bisection threshold: the excess at r_lo plus h/2, capped at 2h.
  const double tight = std::min(threshold, base + 0.5 * grid.h);
  auto convex_at = [&](double r) { return excess(r) <= tight; };
  RadiusOfConvexity out;
  if (excess(r_hi) <= threshold) {
    out.lo = out.hi = out.value = r_hi;
    out.unbounded = true;
    return out;
  }
  double lo = r_lo, hi = r_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (convex_at(mid) ? lo : hi) = mid;
  }
  out.lo = lo;
  out.hi = hi;
  out.value = 0.5 * (lo + hi);
  return out;
}

}  // namespace rconvex::geometry
