#include "rconvex/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rconvex/errors.hpp"

namespace rconvex::riesz {
namespace {

using quadrature::CompensatedSum;
using quadrature::IntegralStatus;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_exponents(double q, double eps) {
  require(q > 0.0, ErrorKind::InvalidArgument, "q must be positive");
  require(eps >= 0.0, ErrorKind::InvalidArgument, "eps must be nonnegative");
  require(eps < q, ErrorKind::InvalidArgument, "eps must be below q (far-field exponent nonpositive)");
}

/// φ = x^a on (0, 1], x^b beyond; ψ = t^-q.
WeightPair piecewise_power(std::string name, double q, double eps, double a, double b) {
  WeightPair w;
  w.name = std::move(name);
  w.q = q;
  w.eps = eps;
  w.psi = [q](double t) { return std::pow(t, -q); };
  w.phi = [a, b](double x) { return x <= 1.0 ? std::pow(x, a) : std::pow(x, b); };
  w.phi1 = [a, b](double x) { return x <= 1.0 ? std::pow(x, a - 1.0) : std::pow(x, b - 1.0); };
  w.dphi = [a, b](double x) { return x <= 1.0 ? a * std::pow(x, a - 1.0) : b * std::pow(x, b - 1.0); };
  w.dphi1 = [a, b](double x) {
    return x <= 1.0 ? (a - 1.0) * std::pow(x, a - 2.0) : (b - 1.0) * std::pow(x, b - 2.0);
  };
  if (a - 1.0 < 0.0)
    w.x_star = 0.0;
  else
    w.x_star = b - 1.0 >= 0.0 ? kInf : 1.0;
  return w;
}

Condition311 combine(const quadrature::ImproperIntegral& near, const quadrature::ImproperIntegral& far) {
  Condition311 c;
  c.near = near.value;
  c.far = far.value;
  if (near.status == IntegralStatus::Infinite || far.status == IntegralStatus::Infinite) {
    c.status = IntegralStatus::Infinite;
    c.value = kInf;
  } else if (near.status == IntegralStatus::Unknown || far.status == IntegralStatus::Unknown) {
    c.status = IntegralStatus::Unknown;
    c.value = near.value + far.value;
  } else {
    c.status = IntegralStatus::Finite;
    c.value = near.value + far.value;
  }
  return c;
}

GridSpec shell_grid(const Bbox& box, double h) {
  GridSpec g;
  g.lo = box.lo;
  g.h = h;
  g.nx = static_cast<int>(std::ceil(box.width() / h)) + 1;
  g.ny = static_cast<int>(std::ceil(box.height() / h)) + 1;
  require(static_cast<double>(g.nx) * g.ny <= 2.5e7, ErrorKind::InvalidArgument, "shell grid too large");
  return g;
}

}  // namespace

Condition311 condition311(const WeightPair& w) {
  const auto near = quadrature::integrate_to_zero([&](double t) { return w.dphi1(t) * w.psi(t / 5.0); }, 1.0);
  const auto far = quadrature::integrate_to_infinity([&](double t) { return w.dphi(t) * w.psi(t / 3.0); }, 1.0);
  return combine(near, far);
}

WeightPair weight_corollary1(double q, double eps) {
  check_exponents(q, eps);
  WeightPair w = piecewise_power("two_exponent", q, eps, q + 1.0 + eps, q - eps);
  w.condition311 = condition311(w);
  return w;
}

WeightPair weight_t3(double q, double eps) {
  check_exponents(q, eps);
  WeightPair w = piecewise_power("t3", q, eps, q + eps, q - eps);
  w.condition311 = condition311(w);
  const auto near = quadrature::integrate_to_zero([&](double t) { return w.dphi(t) * w.psi(t); }, 1.0);
  const auto far = quadrature::integrate_to_infinity([&](double t) { return w.dphi(t) * w.psi(t); }, 1.0);
  w.condition_finite_set = combine(near, far);
  return w;
}

WeightPair weight_power(double p) {
  require(p > 0.0, ErrorKind::InvalidArgument, "exponent must be positive");
  WeightPair w = piecewise_power("power", p, 0.0, p, p);
  w.condition311 = condition311(w);
  return w;
}

double riesz_density_segment(Point z) {
  const double x = z.real(), y = z.imag();
  if (x < 0.0) return 4.0 / std::pow(std::norm(z), 2) / kTwoPi;
  if (x > 1.0) return 4.0 / std::pow(std::norm(z - 1.0), 2) / kTwoPi;
  require(y != 0.0, ErrorKind::InvalidArgument, "z lies on the segment");
  return 6.0 / std::pow(y, 4) / kTwoPi;
}

void RieszMeasureGrid::for_each(const std::function<void(Point, double)>& f) const {
  const double area = density.h() * density.h();
  for (int j = 0; j < density.ny(); ++j)
    for (int i = 0; i < density.nx(); ++i)
      if (!mask(i, j)) f(density.node(i, j), density(i, j) * area);
  for (const auto& [p, m] : atoms) f(p, m);
}

MaskGrid exclusion_band(const CompactSet& e, const GridSpec& grid, double band) {
  MaskGrid m = grid.make<std::uint8_t>(0);
  for (int j = 0; j < m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i) m(i, j) = e.distance(m.node(i, j)) < band ? 1 : 0;
  return m;
}

RieszMeasureGrid discrete_riesz(const GridField& v, const MaskGrid& exclusion) {
  require(v.same_geometry(exclusion), ErrorKind::InvalidArgument, "mask and field grids differ");
  RieszMeasureGrid mu;
  mu.density = v.like<double>(0.0);
  mu.mask = v.like<std::uint8_t>(1);
  const double scale = 1.0 / (v.h() * v.h() * kTwoPi);
  auto usable = [&](int i, int j) { return !exclusion(i, j) && std::isfinite(v(i, j)); };
  CompensatedSum mass;
  for (int j = 1; j + 1 < v.ny(); ++j)
    for (int i = 1; i + 1 < v.nx(); ++i) {
      if (!usable(i, j) || !usable(i + 1, j) || !usable(i - 1, j) || !usable(i, j + 1) || !usable(i, j - 1))
        continue;
      const double lap = v(i + 1, j) + v(i - 1, j) + v(i, j + 1) + v(i, j - 1) - 4.0 * v(i, j);
      mu.density(i, j) = lap * scale;
      mu.mask(i, j) = 0;
      mass.add(mu.density(i, j) * v.h() * v.h());
    }
  mu.total_mass_truncated = mass.value();
  return mu;
}

RieszMeasureGrid atomic_measure(std::vector<std::pair<Point, double>> atoms) {
  RieszMeasureGrid mu;
  CompensatedSum mass;
  for (const auto& a : atoms) mass.add(a.second);
  mu.total_mass_truncated = mass.value();
  mu.atoms = std::move(atoms);
  return mu;
}

BlaschkeIntegral blaschke_integral(const RieszMeasureGrid& mu, const CompactSet& e, const WeightPair& w,
                                   double inner_cut, double outer_cut) {
  require(inner_cut > 0.0 && outer_cut > inner_cut, ErrorKind::InvalidArgument,
          "cuts must satisfy 0 < inner_cut < outer_cut");
  BlaschkeIntegral out;
  CompensatedSum value, outside;
  mu.for_each([&](Point p, double m) {
    const double d = e.distance(p);
    if (d > inner_cut && d < outer_cut) {
      value.add(w.phi(d) * m);
      ++out.cells;
    } else {
      outside.add(m);
    }
  });
  require(out.cells > 0, ErrorKind::Precondition, "empty integration region");
  out.value = value.value();
  out.mass_outside = outside.value();
  return out;
}

LayerCake layer_cake_check(const RieszMeasureGrid& mu, const CompactSet& e, const Fn& phi,
                           const std::vector<double>& t_grid) {
  require(t_grid.size() >= 2 && t_grid.front() == 0.0, ErrorKind::InvalidArgument,
          "t grid must start at 0 with at least two nodes");
  require(std::is_sorted(t_grid.begin(), t_grid.end()), ErrorKind::InvalidArgument, "t grid must increase");
  std::vector<std::pair<double, double>> dm;
  CompensatedSum direct, total;
  mu.for_each([&](Point p, double m) {
    const double d = e.distance(p);
    dm.emplace_back(d, m);
    direct.add(phi(d) * m);
    total.add(m);
  });
  std::sort(dm.begin(), dm.end());
  require(dm.empty() || dm.back().first <= t_grid.back(), ErrorKind::InvalidArgument,
          "t grid must reach the support of the measure");
  // suffix[k] = mass of entries k.. (distances >= dm[k].first).
  std::vector<double> suffix(dm.size() + 1, 0.0);
  for (std::size_t k = dm.size(); k-- > 0;) suffix[k] = suffix[k + 1] + dm[k].second;
  auto mass_above = [&](double t) {
    const auto it = std::upper_bound(dm.begin(), dm.end(), std::make_pair(t, kInf));
    return suffix[static_cast<std::size_t>(it - dm.begin())];
  };

  LayerCake out;
  CompensatedSum lc;
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const double a = t_grid[i], b = t_grid[i + 1];
    lc.add((phi(b) - phi(a)) * mass_above(0.5 * (a + b)));
  }
  const double phi0 = phi(0.0);
  if (phi0 != 0.0) {
    out.phi0_nonzero = true;
    lc.add(phi0 * total.value());
  }
  out.direct = direct.value();
  out.layer_cake = lc.value();
  const double scale = std::max(std::abs(out.direct), std::numeric_limits<double>::min());
  out.gap = std::abs(out.direct - out.layer_cake) / scale;
  return out;
}

GreenMass green_mass(const CompactSet& e, double t, const RieszMeasureGrid& mu,
                     const potential::GreenEstimate& green) {
  require(t >= 0.0, ErrorKind::InvalidArgument, "t must be nonnegative");
  GreenMass out;
  CompensatedSum sum;
  mu.for_each([&](Point p, double m) {
    if (e.distance(p) > t) sum.add(green.evaluate(p) * m);
  });
  out.value = sum.value();
  if (green.boundary_residual > 1e-3) out.warning = "Green residual above 1e-3";
  return out;
}

std::string to_string(Convergence c) {
  switch (c) {
    case Convergence::Convergent: return "Convergent";
    case Convergence::DivergentLog: return "Divergent(log)";
    case Convergence::DivergentPower: return "Divergent(power)";
    case Convergence::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

ProbeResult divergence_probe(const std::vector<double>& cuts, const std::vector<double>& values) {
  require(cuts.size() == values.size(), ErrorKind::InvalidArgument, "one value per cut");
  require(values.size() >= 4, ErrorKind::InvalidArgument, "fewer than 4 levels");
  for (double c : cuts) require(c > 0.0, ErrorKind::InvalidArgument, "cuts must be positive");
  ProbeResult out;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) out.contributions.push_back(values[k + 1] - values[k]);

  const auto& c = out.contributions;
  const double scale = std::max(std::abs(values.back()), std::numeric_limits<double>::min());
  if (std::abs(c.back()) <= 1e-14 * scale) {
    out.classification = Convergence::Convergent;
    return out;
  }
  // Growth per factor-2 refinement, averaged (geometrically) over the last ratios.
  double log_rho = 0.0;
  int used = 0;
  for (std::size_t k = c.size() - 1; k >= 1 && used < 3; --k, ++used) {
    const double f = std::abs(std::log(cuts[k + 1] / cuts[k]));
    require(f > 0.0, ErrorKind::InvalidArgument, "cuts must be distinct");
    if (c[k - 1] == 0.0 || c[k] / c[k - 1] <= 0.0) return out;
    log_rho += std::log(c[k] / c[k - 1]) * std::log(2.0) / f;
  }
  log_rho /= used;
  out.ratio = std::exp(log_rho);
  out.exponent = log_rho / std::log(2.0);
  if (out.ratio < 0.9)
    out.classification = Convergence::Convergent;
  else if (out.ratio <= 1.1)
    out.classification = Convergence::DivergentLog;
  else
    out.classification = Convergence::DivergentPower;
  return out;
}

ShellCoordinate distance_coordinate(const CompactSet& e) {
  return {[e](Point z) { return e.distance(z); }, [box = e.bbox()](double b) { return box.expanded(b); }};
}

ShellCoordinate modulus_coordinate() {
  return {[](Point z) { return std::abs(z); }, [](double b) { return Bbox{Point(-b, -b), Point(b, b)}; }};
}

ShellSeries shell_series(const CompactSet& e, const std::function<double(Point)>& v,
                         const ShellCoordinate& coord, const std::function<double(Point)>& integrand,
                         const std::vector<double>& cuts, int cells) {
  require(cuts.size() >= 2, ErrorKind::InvalidArgument, "need at least two cuts");
  require(cells >= 4, ErrorKind::InvalidArgument, "need at least 4 cells per shell width");
  ShellSeries out;
  out.cuts = cuts;
  CompensatedSum running;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = std::min(cuts[k], cuts[k + 1]), b = std::max(cuts[k], cuts[k + 1]);
    require(a > 0.0 && b > a, ErrorKind::InvalidArgument, "cuts must be positive and distinct");
    const double h = (b - a) / cells;
    const GridSpec spec = shell_grid(coord.box_of(b).expanded(2.0 * h), h);
    GridField vals = spec.make<double>(0.0);
    for (int j = 0; j < vals.ny(); ++j)
      for (int i = 0; i < vals.nx(); ++i) vals(i, j) = v(vals.node(i, j));
    const auto mu = discrete_riesz(vals, exclusion_band(e, spec, 5.0 * h));
    CompensatedSum shell;
    const double area = h * h;
    for (int j = 0; j < vals.ny(); ++j)
      for (int i = 0; i < vals.nx(); ++i) {
        if (mu.mask(i, j)) continue;
        const Point z = vals.node(i, j);
        const double r = coord.rho(z);
        if (r >= a && r < b) shell.add(integrand(z) * mu.density(i, j) * area);
      }
    out.contributions.push_back(shell.value());
    running.add(shell.value());
    out.partial.push_back(running.value());
  }
  out.extrapolated = out.partial.back();
  const std::size_t n = out.contributions.size();
  if (n >= 2 && out.contributions[n - 2] != 0.0) {
    const double ratio = out.contributions[n - 1] / out.contributions[n - 2];
    if (ratio > 0.0 && ratio < 0.9) out.extrapolated += out.contributions[n - 1] * ratio / (1.0 - ratio);
  }
  return out;
}

ShellSeries green_mass_shells(const CompactSet& e, double t, const potential::GreenEstimate& green,
                              const std::function<double(Point)>& v, int shells, int cells) {
  require(t > 0.0, ErrorKind::InvalidArgument, "t must be positive");
  require(shells >= 2, ErrorKind::InvalidArgument, "need at least two shells");
  std::vector<double> cuts;
  for (int k = 0; k <= shells; ++k) cuts.push_back(std::ldexp(t, k));
  return shell_series(e, v, distance_coordinate(e), [&](Point z) { return green.evaluate(z); }, cuts, cells);
}

}  // namespace rconvex::riesz
