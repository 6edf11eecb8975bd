#pragma once

// Shared sets and seeded generators for the test suites.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rconvex/compact_set.hpp"
#include "rconvex/spectra.hpp"

namespace rconvex::fixtures {

inline constexpr double kPi = std::numbers::pi;

/// Quarter circle of radius 2 centred at the origin, endpoints 2 and 2i.
inline CompactSet quarter_arc(int samples = 200) {
  return make_curve(arc_samples(0.0, 2.0, 0.0, kPi / 2, samples), false);
}

/// A 2x2 room with a neck made of two parallel walls 0.2 apart leading out to
/// the right. The room seals off once t reaches half the neck width.
inline CompactSet bottle(int per_unit = 100) {
  std::vector<Point> corners = {{1.0, 0.1},   {1.0, 1.0},  {-1.0, 1.0}, {-1.0, -1.0},
                                {1.0, -1.0},  {1.0, -0.1}, {1.6, -0.1}};
  std::vector<Point> pts;
  Point prev = {1.6, 0.1};
  pts.push_back(prev);
  for (Point c : corners) {
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(c - prev) * per_unit)));
    for (int k = 1; k <= steps; ++k) pts.push_back(prev + (c - prev) * (double(k) / steps));
    prev = c;
  }
  return make_curve(pts, false);
}

inline std::vector<Point> ellipse_samples(double a, double b, int n) {
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * k / n;
    pts.emplace_back(a * std::cos(th), b * std::sin(th));
  }
  return pts;
}

/// Triangle with all angles in [20, 130] degrees and longest side about 1,
/// placed near the origin.
inline std::vector<Point> random_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (true) {
    std::vector<Point> t = {{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    bool ok = true;
    for (int k = 0; k < 3 && ok; ++k) {
      const Point a = t[(k + 1) % 3] - t[k], b = t[(k + 2) % 3] - t[k];
      if (std::abs(a) < 0.3 || std::abs(b) < 0.3) ok = false;
      else {
        const double ang = std::abs(std::arg(b / a)) * 180.0 / kPi;
        if (ang < 20.0 || ang > 130.0) ok = false;
      }
    }
    if (ok) return t;
  }
}

/// n points in the unit square with pairwise distance >= min_sep and every
/// triangle at least 10 degrees away from collinear.
inline std::vector<Point> random_general_position(std::mt19937_64& rng, int n, double min_sep) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Point p(u(rng), u(rng));
    bool ok = true;
    for (Point q : pts) ok = ok && std::abs(p - q) >= min_sep;
    for (std::size_t i = 0; i < pts.size() && ok; ++i)
      for (std::size_t j = 0; j < i && ok; ++j) {
        const double s = std::abs(std::sin(std::arg((pts[i] - p) / (pts[j] - p))));
        const double s2 = std::abs(std::sin(std::arg((p - pts[i]) / (pts[j] - pts[i]))));
        ok = s > std::sin(10.0 * kPi / 180) && s2 > std::sin(10.0 * kPi / 180);
      }
    if (ok) pts.push_back(p);
  }
  return pts;
}

/// Up to `max_zeros` zeros in [-1.5, 2.5] x [-1.5, 1.5] at distance >= 0.05
/// from the unit segment; about one in eight is a repeat of an earlier zero.
inline std::vector<Point> random_zeros(std::mt19937_64& rng, int max_zeros) {
  std::uniform_real_distribution<double> x(-1.5, 2.5), y(-1.5, 1.5), u(0.0, 1.0);
  const int n = 1 + static_cast<int>(u(rng) * max_zeros) % max_zeros;
  const CompactSet seg = make_segment(0.0, 1.0);
  std::vector<Point> zs;
  while (static_cast<int>(zs.size()) < n) {
    if (!zs.empty() && u(rng) < 0.125) {
      zs.push_back(zs[static_cast<std::size_t>(u(rng) * zs.size())]);
      continue;
    }
    const Point z(x(rng), y(rng));
    if (seg.distance(z) >= 0.05) zs.push_back(z);
  }
  return zs;
}

inline spectra::Matrix random_gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  spectra::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Point(g(rng), g(rng));
  return m;
}

/// Hermitian matrix scaled to the given Hilbert-Schmidt norm.
inline spectra::Matrix random_hermitian(std::mt19937_64& rng, int n, double s2_norm) {
  const spectra::Matrix g = random_gaussian(rng, n);
  const spectra::Matrix h = (g + g.adjoint()) / 2.0;
  return h * (s2_norm / h.norm());
}

inline spectra::Matrix random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<spectra::Matrix> qr(random_gaussian(rng, n));
  return qr.householderQ() * spectra::Matrix::Identity(n, n);
}

/// Normal matrix with eigenvalues uniform in the unit disk.
inline spectra::Matrix random_normal(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const spectra::Matrix q = random_unitary(rng, n);
  spectra::Vector d(n);
  for (int k = 0; k < n; ++k) d(k) = std::polar(std::sqrt(u(rng)), 2 * kPi * u(rng));
  return q * d.asDiagonal() * q.adjoint();
}

}  // namespace rconvex::fixtures
