#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rconvex/compact_set.hpp"

namespace rconvex::potential {

enum class GreenMethod { ClosedFormDisk, ClosedFormExteriorDisk, FiniteSetLowerBound, Collocation };

std::string to_string(GreenMethod m);

struct GreenEstimate {
  std::vector<Point> queries;
  std::vector<double> values;
  double boundary_residual = 0.0;  // max |G| over collocation and check points
  GreenMethod method = GreenMethod::Collocation;
  double constant = 0.0;           // c0
  std::vector<std::pair<Point, double>> sources;  // coefficients sum to 1
  int clamped = 0;                 // values in [-residual, 0) reported as 0
  int negative = 0;                // values below -residual, kept as computed
  int rank = 0;                    // retained singular values
  double condition = 0.0;          // ratio of extreme singular values of the scaled system

  /// c0 + sum_j c_j log|z - s_j|, unclamped.
  double evaluate(Point z) const;
};

struct FiniteSetConstants {
  std::vector<double> m;
  double C = 0.0;
  double delta = 0.0;
  double t1 = 0.0;
  double k = 0.0;
  int N = 0;
};

/// log(radius / |v - center|); +infinity at the centre.
double green_disk_center_pole(const Disk& disk, Point v);

/// log|z| - log R for |z| >= R.
double green_exterior_disk(double R, Point z);

/// Exact estimate log|z - c| - log R for the exterior of a disk, as a GreenEstimate.
GreenEstimate exterior_disk_estimate(const Disk& disk);

FiniteSetConstants finite_set_constants(const FinitePoints& e);

/// (1/N)(sum_j log|z - zeta_j| - log t - log C); -infinity at a point of E.
double vt_lower_bound(const FinitePoints& e, double t, Point z);

struct CollocationOptions {
  int n_sources = 0;        // 0 picks density * length / depth (about 4 * length / t)
  double density = 2.0;     // sources per source depth of boundary length
  int n_collocation = 0;    // 0 picks twice the source count
  bool outer_only = false;  // closed curves: keep only the exterior sheet
  double sv_threshold = 1e-12;
};

/// Method-of-fundamental-solutions estimate of G_{Theta_t}(z, infinity) at
/// `queries`, where Theta_t is the unbounded component of {d > t}.
GreenEstimate green_collocation(const CompactSet& e, double t, const std::vector<Point>& queries,
                                const CollocationOptions& opts = {});

struct LemmaRatio {
  double infimum = 0.0;
  Point argmin{};
  double residual = 0.0;
  std::vector<double> ratios;
};

/// inf over samples of G_{t/5}(z, infinity) (|z| + 1) / d(z).
LemmaRatio lemma_l1_ratio(const CompactSet& e, double t, const std::vector<Point>& samples,
                          const CollocationOptions& opts = {});

/// Boundary points of Theta_t with their outward unit normals, spaced about
/// `spacing` apart. Exposed for tests and oracles.
std::vector<std::pair<Point, Point>> theta_boundary(const CompactSet& e, double t, double spacing,
                                                    bool outer_only = false);

}  // namespace rconvex::potential
