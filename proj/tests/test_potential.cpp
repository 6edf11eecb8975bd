#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "rconvex/potential.hpp"

using namespace rconvex;
using namespace rconvex::potential;

namespace {

std::vector<Point> samples_in_omega(const CompactSet& e, double t, double radius, int n,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < n) {
    const Point z(u(rng), u(rng));
    if (std::abs(z) < radius && e.distance(z) > t) out.push_back(z);
  }
  return out;
}

/// Walk-on-spheres estimate of the probability that Brownian motion started at
/// z leaves {d > t} ∩ B(0, R) through the outer circle.
struct WosResult {
  double mean;
  double stderr_;
};

WosResult walk_on_spheres(const CompactSet& e, double t, double R, Point z, int walks, double eps,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  int hits = 0;
  for (int w = 0; w < walks; ++w) {
    Point x = z;
    while (true) {
      const double inner = e.distance(x) - t;
      const double outer = R - std::abs(x);
      if (inner < eps) break;
      if (outer < eps) {
        ++hits;
        break;
      }
      x += std::polar(std::min(inner, outer), angle(rng));
    }
  }
  const double p = static_cast<double>(hits) / walks;
  return {p, std::sqrt(p * (1 - p) / walks)};
}

}  // namespace

TEST_CASE("Green function of a disk with pole at the centre") {
  CHECK(green_disk_center_pole({0.0, 1.0}, 0.5) == doctest::Approx(std::log(2.0)));
  CHECK(green_disk_center_pole({0.0, 1.0}, std::polar(1.0, 0.3)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(green_disk_center_pole({2.0, 4.0}, Point(2, 2)) == doctest::Approx(std::log(2.0)));
  CHECK(std::isinf(green_disk_center_pole({0.0, 1.0}, 0.0)));
  CHECK_THROWS_AS(green_disk_center_pole({0.0, 1.0}, 1.5), Error);
}

TEST_CASE("Green function of the exterior of a disk") {
  CHECK(green_exterior_disk(1.0, std::numbers::e) == doctest::Approx(1.0));
  CHECK(green_exterior_disk(1.0, std::polar(1.0, 2.0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(green_exterior_disk(2.0, 3.0) == doctest::Approx(std::log(1.5)));
  CHECK_THROWS_AS(green_exterior_disk(1.0, 0.5), Error);
}

TEST_CASE("exterior Green functions decrease as the domain shrinks") {
  for (double R1 : {0.5, 1.0, 2.0})
    for (double R2 : {R1 + 0.1, 2 * R1, 5 * R1})
      for (double r : {R2, 1.5 * R2, 10 * R2})
        CHECK(green_exterior_disk(R2, std::polar(r, 0.7)) <= green_exterior_disk(R1, std::polar(r, 0.7)));
}

TEST_CASE("finite set constants") {
  // Independent evaluation: m_j = prod |z_i - z_j|, C = 2^(N-1) max m_j,
  // k = 1 + 2 C (2 / delta)^(N-1).
  auto oracle = [](const std::vector<Point>& pts) {
    FiniteSetConstants c;
    c.N = static_cast<int>(pts.size());
    double delta = INFINITY;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      double m = 1;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (i != j) {
          m *= std::abs(pts[i] - pts[j]);
          delta = std::min(delta, std::abs(pts[i] - pts[j]));
        }
      c.m.push_back(m);
      c.C = std::max(c.C, m);
    }
    c.C *= std::pow(2.0, c.N - 1);
    c.delta = delta;
    c.t1 = delta / 2;
    c.k = 1 + 2 * c.C * std::pow(2 / delta, c.N - 1);
    return c;
  };

  const auto a = finite_set_constants({{0.0, 1.0}});
  CHECK(a.m == std::vector<double>{1, 1});
  CHECK(a.C == 2);
  CHECK(a.delta == 1);
  CHECK(a.t1 == 0.5);
  CHECK(a.k == 9);
  CHECK(a.N == 2);

  const auto b = finite_set_constants({{0.0, 2.0}});
  CHECK(b.m == std::vector<double>{2, 2});
  CHECK(b.C == 4);
  CHECK(b.t1 == 1);
  CHECK(b.k == 9);

  const auto c = finite_set_constants({{0.0, 1.0, 2.0}});
  CHECK(c.m == std::vector<double>{2, 1, 2});
  CHECK(c.C == 8);
  CHECK(c.t1 == 0.5);
  CHECK(c.k == 65);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = fixtures::random_general_position(rng, 2 + trial % 5, 0.05);
    const auto got = finite_set_constants({pts});
    const auto want = oracle(pts);
    for (std::size_t j = 0; j < pts.size(); ++j) CHECK(got.m[j] == doctest::Approx(want.m[j]));
    CHECK(got.C == doctest::Approx(want.C));
    CHECK(got.delta == doctest::Approx(want.delta));
    CHECK(got.t1 == doctest::Approx(want.t1));
    CHECK(got.k == doctest::Approx(want.k));
  }

  CHECK_THROWS_AS(finite_set_constants({{0.0}}), Error);
}

TEST_CASE("explicit lower bound v_t") {
  const FinitePoints e{{0.0, 1.0}};
  CHECK(vt_lower_bound(e, 0.1, 3.0) == doctest::Approx(0.5 * std::log(30.0)));
  CHECK(vt_lower_bound(e, 0.1, std::polar(0.1, 2.5)) <= 1e-12);
  CHECK(vt_lower_bound(e, 0.05, Point(0.5, 0.46)) > std::log(2.0) / 2);
  CHECK(std::isinf(vt_lower_bound(e, 0.1, 1.0)));
  CHECK_THROWS_WITH_AS(vt_lower_bound(e, 0.6, 3.0), "outside validity range", Error);
}

TEST_CASE("collocation reproduces the exterior of the unit circle") {
  CollocationOptions opts;
  opts.outer_only = true;
  const auto circle = make_curve(circle_samples(0.0, 1.0, 4096), true);
  const std::vector<Point> q = {1.5, Point(0, 2), std::polar(std::numbers::e, 1.0)};
  const auto g = green_collocation(circle, 0.0, q, opts);
  for (std::size_t k = 0; k < q.size(); ++k) CHECK(std::abs(g.values[k] - std::log(std::abs(q[k]))) <= 1e-6);

  const auto disk = green_collocation(make_disks({{0.0, 1.0}}), 0.0, q);
  for (std::size_t k = 0; k < q.size(); ++k)
    CHECK(std::abs(disk.values[k] - std::log(std::abs(q[k]))) <= 1e-6);
  CHECK(disk.boundary_residual <= 1e-6);

  double total = 0;
  for (const auto& s : g.sources) total += s.second;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("collocation dominates v_t for finite sets") {
  const auto e = make_finite({0.0, 1.0});
  for (double t : {0.02, 0.05, 0.1}) {
    const auto q = samples_in_omega(e, t, 4.0, 60, 17);
    const auto g = green_collocation(e, t, q);
    CHECK(g.boundary_residual <= 1e-6);
    for (std::size_t k = 0; k < q.size(); ++k)
      CHECK(g.values[k] >= vt_lower_bound({{0.0, 1.0}}, t, q[k]) - g.boundary_residual);
  }
  const auto g3 = green_collocation(e, 0.1, {3.0});
  CHECK(g3.values[0] >= vt_lower_bound({{0.0, 1.0}}, 0.1, 3.0) - g3.boundary_residual);
}

TEST_CASE("collocation matches a walk-on-spheres estimate") {
  const auto seg = make_segment(0.0, 1.0);
  const double t = 0.2, R = 1000.0;
  const auto g = green_collocation(seg, t, {2.0});
  std::vector<Point> ring;
  for (int k = 0; k < 256; ++k) ring.push_back(std::polar(R, 2 * std::numbers::pi * k / 256));
  double g_ring = 0;
  for (Point p : ring) g_ring += g.evaluate(p);
  g_ring /= static_cast<double>(ring.size());

  const auto wos = walk_on_spheres(seg, t, R, 2.0, 40000, 1e-4, 2024);
  const double predicted = g.values[0] / g_ring;
  CHECK(std::abs(predicted - wos.mean) <= 3 * wos.stderr_);
}

TEST_CASE("collocation invariants") {
  const auto seg = make_segment(0.0, 1.0);
  const auto arc = fixtures::quarter_arc(100);

  SUBCASE("positivity") {
    for (const auto* e : {&seg, &arc}) {
      const auto q = samples_in_omega(*e, 0.1, 5.0, 100, 3);
      const auto g = green_collocation(*e, 0.1, q);
      CHECK(g.negative == 0);
      for (double v : g.values) CHECK(v >= 0.0);
    }
  }

  SUBCASE("domain monotonicity in t") {
    const auto q = samples_in_omega(seg, 0.2, 5.0, 50, 9);
    const auto small = green_collocation(seg, 0.1, q);
    const auto large = green_collocation(seg, 0.2, q);
    for (std::size_t k = 0; k < q.size(); ++k)
      CHECK(large.values[k] <= small.values[k] + 2 * (small.boundary_residual + large.boundary_residual));
  }

  SUBCASE("logarithmic growth at infinity") {
    // G(z) - log|z| = const + O(1/|z|); the O(1/|z|) dipole term is about
    // |centroid| / |z|, so successive decades shrink by a factor of ten.
    for (const auto* e : {&seg, &arc}) {
      const auto g = green_collocation(*e, 0.1, {100.0, 1000.0, 10000.0, 100000.0, Point(0, 100000)});
      std::vector<double> c;
      for (std::size_t k = 0; k < 4; ++k) c.push_back(g.values[k] - std::log(std::abs(g.queries[k])));
      const double d1 = std::abs(c[1] - c[0]), d2 = std::abs(c[2] - c[1]), d3 = std::abs(c[3] - c[2]);
      CHECK(d3 <= 1e-3);
      CHECK(d2 <= 0.15 * d1);
      CHECK(d3 <= 0.15 * d2 + 1e-9);
      CHECK(std::abs(g.values[4] - g.values[3]) <= 1e-3);
    }
  }
}

TEST_CASE("collocation preconditions") {
  const auto ring = make_curve(circle_samples(0.0, 1.0, 400), true);
  CHECK_THROWS_WITH_AS(green_collocation(ring, 0.1, {3.0}), "domain disconnected", Error);
  CHECK_THROWS_AS(green_collocation(make_segment(0.0, 1.0), 0.2, {0.5}), Error);
  CHECK_THROWS_AS(green_collocation(make_finite({0.0, 1.0}), 0.0, {3.0}), Error);
}

TEST_CASE("Theta_t boundary points sit at distance t") {
  const auto arc = fixtures::quarter_arc(100);
  for (const auto& [b, n] : theta_boundary(arc, 0.1, 0.01)) {
    CHECK(arc.distance(b) == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(std::abs(n) == doctest::Approx(1.0));
  }
}

TEST_CASE("Green ratio infimum is positive") {
  const auto seg = make_segment(0.0, 1.0);
  const auto s = samples_in_omega(seg, 0.1, 5.0, 200, 21);
  const auto r = lemma_l1_ratio(seg, 0.1, s);
  CHECK(r.infimum > 0.0);
  CHECK(seg.distance(r.argmin) > 0.1);

  CollocationOptions opts;
  opts.outer_only = true;
  const auto circle = make_curve(circle_samples(0.0, 1.0, 2048), true);
  std::vector<Point> outside;
  for (Point z : samples_in_omega(circle, 0.0, 5.0, 400, 4))
    if (std::abs(z) > 1.2) outside.push_back(z);
  const auto rc = lemma_l1_ratio(circle, 0.0, outside, opts);
  CHECK(rc.infimum > 0.0);
  for (std::size_t k = 0; k < outside.size(); ++k) {
    const double a = std::abs(outside[k]);
    CHECK(rc.ratios[k] == doctest::Approx(std::log(a) * (a + 1) / (a - 1)).epsilon(1e-4));
  }

  const auto pair = make_finite({0.0, 1.0});
  const auto q = samples_in_omega(pair, 9 * 0.05, 4.0, 100, 8);
  const auto g = green_collocation(pair, 0.05, q);
  for (double v : g.values) CHECK(v > std::log(2.0) / 2);
}
