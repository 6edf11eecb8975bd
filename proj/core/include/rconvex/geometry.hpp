#pragma once

#include <limits>
#include <optional>

#include "rconvex/compact_set.hpp"
#include "rconvex/grid.hpp"

namespace rconvex::geometry {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// dist(z, E).
double distance_to_set(Point z, const CompactSet& e);

/// dist(node, E) at every node of `spec`.
GridField distance_field(const CompactSet& e, const GridSpec& spec);

/// Circumradius from the three pairwise differences; nullopt marks a degenerate
/// (collinear) triangle. Coincident vertices are an error.
std::optional<double> circumradius(const Triangle& t);

struct CurvatureRadius {
  double value = kInfinity;          // r_g(E); infinity when every triple is collinear
  std::optional<Triangle> witness;   // a minimising triangle when value is finite
};

/// Infimum of circumradii over triangles with vertices in the sample pool of E.
CurvatureRadius global_curvature_radius(const CompactSet& e);

/// Curvature |y''x' - x''y'| / |z'|^3 of a sampled C^2 curve at sample `index`,
/// using five-point differences in the sample parameter.
double curvature_at(const SampledCurve& curve, int index);

struct InscribedDisk {
  bool unbounded = false;
  Disk disk;  // valid when !unbounded
};

/// The largest disk B(x, rho) with z in B and B inside the complement of E,
/// capped at r_cap.
InscribedDisk max_inscribed_disk(Point z, const CompactSet& e, double r_cap);

struct HullResult {
  MaskGrid mask;             // membership in conv_r(E)
  double r = 0.0;
  double hausdorff_excess = 0.0;  // max dist(w, E) over hull nodes not covered by any disk
};

/// r-convex hull on a grid. A node w lies outside the hull when it lies in the
/// open disk B(s, d(s)) of its nearest node s with d(s) >= r.
HullResult r_convex_hull(const CompactSet& e, double r, const GridSpec& grid);
/// Variant reusing a precomputed distance field on the same grid.
HullResult r_convex_hull(const CompactSet& e, double r, const GridField& dist);

struct RadiusOfConvexity {
  double value = 0.0;   // midpoint of the final bracket
  double lo = 0.0;      // largest radius found r-convex
  double hi = 0.0;      // smallest radius found not r-convex
  bool unbounded = false;  // still r-convex at r_hi
};

/// Bisection on r of hausdorff_excess(conv_r(E)) <= 2h.
RadiusOfConvexity radius_of_convexity(const CompactSet& e, const GridSpec& grid, double r_lo,
                                      double r_hi, double tol);

struct OmegaComponents {
  int count = 0;
  Grid<int> labels;          // 0 outside Omega_t, components numbered from 1
  int unbounded_label = 0;   // label of the component touching the frame (Theta_t)
};

/// Connected components (4-neighbour) of {nodes : d > t}.
OmegaComponents omega_t_components(const CompactSet& e, double t, const GridSpec& grid);
OmegaComponents omega_t_components(const GridField& dist, double t);

struct T0Estimate {
  double t0 = 0.0;
  /// r/4 when a convexity radius was supplied; NaN otherwise.
  double quarter_radius_bound = std::numeric_limits<double>::quiet_NaN();
  bool exact = false;  // closed form delta(E)/2 for finite sets
};

T0Estimate t0_estimate(const CompactSet& e, const GridSpec& grid, double t_max,
                       std::optional<double> r = std::nullopt);

/// min_{i != k} |zeta_i - zeta_k|.
double separation(const FinitePoints& pts);

struct BallCheck {
  bool pass = false;
  bool inner_pass = false;
  bool outer_pass = false;
  int worst_index = -1;
  Point worst_point{};
  double worst_slack = 0.0;  // min over samples and sides of dist(center, curve) - r
};

/// Tangent-disk test at every sample of a closed Jordan polyline. `eps`
/// defaults to the longest polyline edge.
BallCheck uniform_ball_check(const SampledCurve& curve, double r,
                             std::optional<double> eps = std::nullopt);

/// True when two non-adjacent edges of the polyline intersect.
bool self_intersects(const SampledCurve& curve);

}  // namespace rconvex::geometry
