#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "rconvex/geometry.hpp"

using namespace rconvex;
using namespace rconvex::geometry;
using fixtures::kPi;

namespace {

GridSpec grid_around(const CompactSet& e, double margin, int n) {
  return GridSpec::covering(e.bbox().expanded(margin), n);
}

bool point_in_triangle(Point p, Point a, Point b, Point c) {
  auto s = [](Point u, Point v, Point w) { return ((v - u) * std::conj(w - u)).imag(); };
  const double d1 = s(p, a, b), d2 = s(p, b, c), d3 = s(p, c, a);
  return (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0);
}

}  // namespace

TEST_CASE("distance_to_set closed forms") {
  CHECK(distance_to_set(3.0, make_segment(0.0, 1.0)) == doctest::Approx(2.0));
  CHECK(distance_to_set(Point(0, 1), make_finite({0.0, 1.0})) == doctest::Approx(1.0));
  CHECK(distance_to_set(Point(0.5, 0.3), make_segment(0.0, 1.0)) == doctest::Approx(0.3));
  CHECK(distance_to_set(Point(3, 4), make_disks({{0.0, 2.0}})) == doctest::Approx(3.0));
  CHECK(distance_to_set(Point(0.5, 0.2), make_disks({{0.0, 2.0}})) == 0.0);
  CHECK_THROWS_WITH_AS(make_finite({}), "empty set", Error);
  CHECK_THROWS_AS(make_finite({1.0, 1.0}), Error);
  CHECK_THROWS_AS(make_curve({0.0, 1.0, 1.0}, false), Error);
}

TEST_CASE("distance_to_set on a raster is within one spacing") {
  const auto tmpl = MaskGrid::covering({{-2, -2}, {2, 2}}, 201);
  const auto circle = make_curve(circle_samples(0.0, 1.0, 400), true);
  const auto raster = make_mask(rasterize(circle, tmpl, tmpl.h()));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.8, 1.8);
  for (int k = 0; k < 200; ++k) {
    const Point z(u(rng), u(rng));
    CHECK(std::abs(raster.distance(z) - circle.distance(z)) <= 2.0 * tmpl.h());
  }
}

TEST_CASE("distance_to_set is 1-Lipschitz") {
  const std::vector<CompactSet> sets = {make_finite({0.0, 1.0, Point(0, 1)}),
                                        make_segment(0.0, 1.0), fixtures::quarter_arc(50),
                                        make_disks({{0.0, 0.5}, {Point(2, 0), 0.3}})};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& e : sets) {
    for (int k = 0; k < 500; ++k) {
      const Point a(u(rng), u(rng)), b(u(rng), u(rng));
      CHECK(std::abs(e.distance(a) - e.distance(b)) <= std::abs(a - b) * (1 + 1e-12));
    }
  }
}

TEST_CASE("circumradius examples") {
  CHECK(*circumradius({0.0, 4.0, Point(0, 3)}) == doctest::Approx(2.5));
  CHECK(*circumradius({0.0, 1.0, std::polar(1.0, kPi / 3)}) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK_FALSE(circumradius({0.0, 1.0, 2.0}).has_value());
  CHECK_THROWS_AS(circumradius({0.0, 0.0, 1.0}), Error);
}

TEST_CASE("circumradius is similarity equivariant and permutation invariant") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 300; ++k) {
    const Triangle t{{n01(rng), n01(rng)}, {n01(rng), n01(rng)}, {n01(rng), n01(rng)}};
    const auto r = circumradius(t);
    if (!r) continue;
    const Point lam(n01(rng), n01(rng)), mu(n01(rng), n01(rng));
    const auto rs = circumradius({lam * t.a + mu, lam * t.b + mu, lam * t.c + mu});
    REQUIRE(rs.has_value());
    CHECK(std::abs(*rs - std::abs(lam) * *r) <= 1e-9 * std::abs(lam) * *r);
    for (const Triangle& p : {Triangle{t.b, t.a, t.c}, Triangle{t.c, t.b, t.a}, Triangle{t.b, t.c, t.a}})
      CHECK(std::abs(*circumradius(p) - *r) <= 1e-12 * *r);
  }
}

TEST_CASE("global curvature radius") {
  const auto octagon = make_finite(circle_samples(0.0, 2.0, 8));
  const auto g = global_curvature_radius(octagon);
  CHECK(g.value == doctest::Approx(2.0));
  REQUIRE(g.witness.has_value());
  CHECK(*circumradius(*g.witness) == doctest::Approx(2.0));

  CHECK(global_curvature_radius(make_finite({0.0, 1.0, Point(0, 1)})).value ==
        doctest::Approx(std::sqrt(2.0) / 2));

  std::vector<Point> line;
  for (int k = 0; k < 50; ++k) line.emplace_back(k / 49.0, 0.0);
  const auto flat = global_curvature_radius(make_finite(line));
  CHECK(std::isinf(flat.value));
  CHECK_FALSE(flat.witness.has_value());

  CHECK_THROWS_AS(global_curvature_radius(make_finite({0.0, 1.0})), Error);
  CHECK_THROWS_AS(global_curvature_radius(make_segment(0.0, 1.0)), Error);
}

TEST_CASE("curvature_at") {
  const SampledCurve circle{circle_samples(0.0, 2.0, 720), true};
  for (int idx : {0, 100, 719}) CHECK(std::abs(curvature_at(circle, idx) - 0.5) <= 1e-3);

  SampledCurve line;
  for (int k = 0; k < 20; ++k) line.points.emplace_back(0.1 * k, 0.05 * k);
  CHECK(curvature_at(line, 10) == doctest::Approx(0.0).epsilon(1e-12));

  // Closed-form curvature of y = x^2 is 2 / (1 + 4x^2)^(3/2).
  SampledCurve parabola;
  const double step = 1e-3;
  for (int k = -50; k <= 50; ++k) parabola.points.emplace_back(k * step, k * step * k * step);
  auto exact = [](double x) { return 2.0 / std::pow(1.0 + 4 * x * x, 1.5); };
  CHECK(std::abs(curvature_at(parabola, 50) - exact(0.0)) <= 1e-2);
  CHECK(std::abs(curvature_at(parabola, 80) - exact(30 * step)) <= 1e-2);

  CHECK_THROWS_AS(curvature_at(line, 1), Error);
  CHECK_THROWS_AS(curvature_at(line, 18), Error);
}

TEST_CASE("max_inscribed_disk") {
  const auto circle = make_curve(circle_samples(0.0, 1.0, 720), true);
  const auto d1 = max_inscribed_disk(0.5, circle, 10.0);
  REQUIRE_FALSE(d1.unbounded);
  CHECK(std::abs(d1.disk.radius - 1.0) <= 0.02);
  CHECK(std::abs(d1.disk.center) <= 0.05);

  const auto tmpl = MaskGrid::covering({{-3.5, -3.5}, {3.5, 3.5}}, 401);
  const auto c1 = make_curve(circle_samples(0.0, 1.0, 800), true);
  const auto c3 = make_curve(circle_samples(0.0, 3.0, 2400), true);
  MaskGrid rings = rasterize(c1, tmpl, 0.6 * tmpl.h());
  const MaskGrid outer = rasterize(c3, tmpl, 0.6 * tmpl.h());
  for (std::size_t k = 0; k < rings.size(); ++k) rings[k] = rings[k] | outer[k];
  const auto annulus = make_mask(rings);
  const auto d2 = max_inscribed_disk(2.0, annulus, 10.0);
  REQUIRE_FALSE(d2.unbounded);
  CHECK(std::abs(d2.disk.radius - 1.0) <= 0.02);

  CHECK(max_inscribed_disk(1.0, make_finite({0.0, 2.0}), 100.0).unbounded);
  CHECK_THROWS_AS(max_inscribed_disk(0.0, make_finite({0.0, 2.0}), 100.0), Error);
}

TEST_CASE("r-convex hull of three points") {
  const auto e = make_finite({0.0, 1.0, Point(0, 1)});
  const auto grid = grid_around(e, 2.0, 256);

  const auto small = r_convex_hull(e, 0.5, grid);
  CHECK(small.hausdorff_excess <= 2 * grid.h);
  // The raster of E itself is covered.
  for (Point p : {Point(0), Point(1), Point(0, 1)}) {
    const auto node = small.mask.nearest_node(p);
    CHECK(small.mask(node->first, node->second) == 1);
  }

  const auto big = r_convex_hull(e, 1.0, grid);
  CHECK(big.hausdorff_excess > 2 * grid.h);
  bool meets_triangle = false;
  for (int j = 0; j < big.mask.ny(); ++j)
    for (int i = 0; i < big.mask.nx(); ++i)
      if (big.mask(i, j) && e.distance(big.mask.node(i, j)) > 2 * grid.h &&
          point_in_triangle(big.mask.node(i, j), 0.0, 1.0, Point(0, 1)))
        meets_triangle = true;
  CHECK(meets_triangle);

  CHECK_THROWS_WITH_AS(r_convex_hull(e, 3.0, grid), "bbox must contain E with 2r margin", Error);
}

TEST_CASE("closed subsets of a line are r-convex for every r") {
  const auto e = make_segment(0.0, 1.0);
  for (double r : {0.1, 1.0, 10.0}) {
    const auto grid = grid_around(e, 2 * r, 256);
    CHECK(r_convex_hull(e, r, grid).hausdorff_excess <= 2 * grid.h);
  }
}

TEST_CASE("hull monotonicity, nesting and idempotence") {
  const auto e1 = make_finite({0.0, 1.0, Point(0, 1)});
  const auto e2 = make_finite({0.0, 1.0, Point(0, 1), Point(1, 1)});
  const auto grid = grid_around(e2, 3.0, 200);
  const auto d1 = distance_field(e1, grid);
  const auto d2 = distance_field(e2, grid);

  for (double r : {0.6, 0.8, 1.2}) {
    const auto h1 = r_convex_hull(e1, r, d1);
    const auto h2 = r_convex_hull(e2, r, d2);
    for (std::size_t k = 0; k < h1.mask.size(); ++k) CHECK_FALSE((h1.mask[k] && !h2.mask[k]));
  }

  const auto lo = r_convex_hull(e1, 0.8, d1);
  const auto hi = r_convex_hull(e1, 1.3, d1);
  for (std::size_t k = 0; k < lo.mask.size(); ++k) CHECK_FALSE((lo.mask[k] && !hi.mask[k]));

  // conv_r(conv_r(E)) = conv_r(E) within one grid cell.
  const auto once = r_convex_hull(e1, 1.3, d1);
  const auto again = r_convex_hull(make_mask(once.mask), 1.3, grid);
  for (int j = 1; j + 1 < grid.ny; ++j)
    for (int i = 1; i + 1 < grid.nx; ++i) {
      if (!again.mask(i, j) || once.mask(i, j)) continue;
      bool near = false;
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) near = near || once.mask(i + a, j + b);
      CHECK(near);
    }
}

TEST_CASE("rasterised convex polygons are fixed points") {
  const auto tmpl = MaskGrid::covering({{-7, -7}, {8, 8}}, 300);
  const auto square_boundary =
      make_curve({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true);
  MaskGrid filled = tmpl.like<std::uint8_t>(0);
  for (int j = 0; j < filled.ny(); ++j)
    for (int i = 0; i < filled.nx(); ++i) {
      const Point p = filled.node(i, j);
      filled(i, j) = (p.real() >= 0 && p.real() <= 1 && p.imag() >= 0 && p.imag() <= 1) ||
                     square_boundary.distance(p) <= 0.5 * tmpl.h();
    }
  const auto square = make_mask(filled);
  for (double r : {0.2, 1.0, 3.0}) {
    const auto hull = r_convex_hull(square, r, GridSpec::of(tmpl));
    CHECK(hull.hausdorff_excess <= 2 * tmpl.h());
  }
}

TEST_CASE("radius_of_convexity") {
  {
    const auto e = make_finite({0.0, 1.0, Point(0, 1)});
    const auto grid = grid_around(e, 2 * 1.5, 400);
    const auto r0 = radius_of_convexity(e, grid, 0.1, 1.5, 1e-3);
    CHECK_FALSE(r0.unbounded);
    CHECK(std::abs(r0.value - std::sqrt(2.0) / 2) <= std::max(1e-3, 2 * grid.h));
  }
  {
    const auto e = make_finite(circle_samples(0.0, 1.5, 12));
    const auto grid = grid_around(e, 2 * 2.5, 400);
    const auto r0 = radius_of_convexity(e, grid, 0.2, 2.5, 1e-3);
    CHECK(std::abs(r0.value - 1.5) <= std::max(1e-3, 2 * grid.h));
  }
  {
    const auto e = fixtures::quarter_arc(200);
    const auto grid = grid_around(e, 2 * 3.0, 512);
    const auto r0 = radius_of_convexity(e, grid, 0.3, 3.0, 1e-3);
    CHECK(std::abs(r0.value - 2.0) <= std::max(1e-3, 2 * grid.h));
  }
  {
    const auto e = make_segment(0.0, 1.0);
    const auto grid = grid_around(e, 2 * 4.0, 200);
    CHECK(radius_of_convexity(e, grid, 0.1, 4.0, 1e-3).unbounded);
  }
  {
    const auto e = make_finite({0.0, 1.0, Point(0, 1)});
    const auto grid = grid_around(e, 2 * 1.5, 200);
    CHECK_THROWS_WITH_AS(radius_of_convexity(e, grid, 1.2, 1.5, 1e-3),
                         "E not r_lo-convex at grid resolution", Error);
  }
}

TEST_CASE("omega_t components") {
  const auto seg = make_segment(0.0, 1.0);
  CHECK(omega_t_components(seg, 0.3, grid_around(seg, 1.0, 200)).count == 1);

  const auto tmpl = MaskGrid::covering({{-1.6, -1.6}, {1.6, 1.6}}, 321);
  const auto ring = make_mask(
      rasterize(make_curve(circle_samples(0.0, 1.0, 1000), true), tmpl, 0.6 * tmpl.h()));
  const auto split = omega_t_components(ring, 0.1, GridSpec::of(tmpl));
  CHECK(split.count == 2);
  CHECK(split.unbounded_label != 0);

  const auto pair = make_finite({0.0, 1.0});
  CHECK(omega_t_components(pair, 0.4, grid_around(pair, 1.5, 200)).count == 1);

  CHECK_THROWS_AS(omega_t_components(pair, 2.0, grid_around(pair, 1.5, 200)), Error);
}

TEST_CASE("unbounded component shrinks as t grows") {
  const auto e = fixtures::bottle();
  const auto grid = grid_around(e, 1.0, 240);
  const auto dist = distance_field(e, grid);
  const std::vector<double> ts = {0.0, 0.05, 0.09, 0.12, 0.2};
  for (std::size_t a = 0; a + 1 < ts.size(); ++a) {
    const auto small_t = omega_t_components(dist, ts[a]);
    const auto large_t = omega_t_components(dist, ts[a + 1]);
    for (std::size_t k = 0; k < dist.size(); ++k)
      if (large_t.labels[k] == large_t.unbounded_label)
        CHECK(small_t.labels[k] == small_t.unbounded_label);
  }
}

TEST_CASE("t0 estimate") {
  const auto pts = make_finite({0.0, 1.0, 5.0});
  const auto t = t0_estimate(pts, grid_around(pts, 1.0, 100), 2.0);
  CHECK(t.exact);
  CHECK(t.t0 == doctest::Approx(0.5));

  const auto seg = make_segment(0.0, 1.0);
  CHECK(t0_estimate(seg, grid_around(seg, 2.5, 150), 1.0).t0 == doctest::Approx(1.0));

  const auto bottle = fixtures::bottle();
  const auto grid = grid_around(bottle, 1.0, 400);
  const auto tb = t0_estimate(bottle, grid, 0.4, 1.0);
  CHECK(std::abs(tb.t0 - 0.1) <= 2 * grid.h);
  CHECK(tb.quarter_radius_bound == doctest::Approx(0.25));

  const auto circle = make_curve(circle_samples(0.0, 1.0, 200), true);
  CHECK_THROWS_WITH_AS(t0_estimate(circle, grid_around(circle, 1.0, 100), 0.3),
                       "E splits the plane at this resolution", Error);
}

TEST_CASE("uniform ball check") {
  const SampledCurve circle{circle_samples(0.0, 2.0, 400), true};
  CHECK(uniform_ball_check(circle, 1.9).pass);
  const auto fail = uniform_ball_check(circle, 2.1);
  CHECK_FALSE(fail.pass);
  CHECK_FALSE(fail.inner_pass);
  CHECK(fail.outer_pass);

  // Minimal osculating radius of the (2, 1) ellipse is b^2/a = 0.5.
  const SampledCurve ellipse{fixtures::ellipse_samples(2.0, 1.0, 800), true};
  CHECK(uniform_ball_check(ellipse, 0.45).pass);
  CHECK_FALSE(uniform_ball_check(ellipse, 0.6).pass);

  const SampledCurve bowtie{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}, true};
  CHECK(self_intersects(bowtie));
  CHECK_THROWS_WITH_AS(uniform_ball_check(bowtie, 0.1), "self-intersecting polyline", Error);
}
