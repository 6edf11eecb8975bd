#include "rconvex/products.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rconvex/quadrature.hpp"

namespace rconvex::products {
namespace {

using C = std::complex<double>;

C partial_log_series(C z, int p) {
  C sum = 0.0, power = 1.0;
  for (int k = 1; k <= p; ++k) {
    power *= z;
    sum += power / static_cast<double>(k);
  }
  return sum;
}

/// log|1 - z| without cancellation for small z.
double log_abs_one_minus(C z) { return 0.5 * std::log1p(std::norm(z) - 2.0 * z.real()); }

}  // namespace

C weierstrass_factor(C z, int p) {
  require(p >= 0, ErrorKind::InvalidArgument, "p must be nonnegative");
  return (1.0 - z) * std::exp(partial_log_series(z, p));
}

double log_abs_weierstrass(C z, int p) {
  require(p >= 0, ErrorKind::InvalidArgument, "p must be nonnegative");
  return log_abs_one_minus(z) + partial_log_series(z, p).real();
}

double factor_bound_Ap(int p) {
  require(p >= 0, ErrorKind::InvalidArgument, "p must be nonnegative");
  return 3.0 * std::numbers::e * (2.0 + std::log(p + 1.0));
}

int order_for(double q) {
  require(q >= 1.0 && std::isfinite(q), ErrorKind::InvalidArgument, "q must be at least 1");
  return static_cast<int>(std::ceil(q)) - 1;
}

ZeroData make_zero_data(const CompactSet& e, std::vector<Point> zeros, double q) {
  ZeroData z;
  z.q = q;
  z.p = order_for(q);
  quadrature::CompensatedSum k;
  for (Point zn : zeros) {
    const double d = e.distance(zn);
    require(d > 0.0, ErrorKind::Precondition, "zero lies in E");
    z.anchors.push_back(e.nearest_point(zn));
    k.add(std::pow(d, q));
  }
  z.zeros = std::move(zeros);
  z.K = k.value();
  return z;
}

void validate(const ZeroData& z, const CompactSet& e, double anchor_tol) {
  require(z.zeros.size() == z.anchors.size(), ErrorKind::InvalidArgument, "zeros and anchors differ in length");
  require(z.q >= 1.0, ErrorKind::InvalidArgument, "q must be at least 1");
  require(z.p >= z.q - 1.0 && z.p < z.q, ErrorKind::InvalidArgument, "p must satisfy q - 1 <= p < q");
  require(std::isfinite(z.K) && z.K >= 0.0, ErrorKind::InvalidArgument, "K must be finite");
  for (std::size_t n = 0; n < z.zeros.size(); ++n) {
    const double d = e.distance(z.zeros[n]);
    require(d > 0.0, ErrorKind::Precondition, "zero lies in E");
    require(e.distance(z.anchors[n]) <= anchor_tol, ErrorKind::InvalidArgument, "anchor is not a point of E");
    require(std::abs(std::abs(z.zeros[n] - z.anchors[n]) - d) <= anchor_tol, ErrorKind::InvalidArgument,
            "anchor is not nearest to its zero");
  }
}

Product::Product(const CompactSet& e, ZeroData zeros, double anchor_tol) : e_(&e), zeros_(std::move(zeros)) {
  validate(zeros_, e, anchor_tol);
}

ProductValue Product::evaluate(Point z) const {
  for (Point a : zeros_.anchors)
    require(z != a, ErrorKind::Precondition, "z is an anchor: pole of u_n");
  require(e_->distance(z) > 0.0, ErrorKind::Precondition, "z lies in E");

  ProductValue out;
  C inner = 1.0, outer_log = 0.0;
  quadrature::CompensatedSum log_in, log_out;
  bool vanishes = false;
  for (std::size_t n = 0; n < zeros_.zeros.size(); ++n) {
    const Point zn = zeros_.zeros[n], en = zeros_.anchors[n];
    const C u = (zn - en) / (z - en);
    // 1 - u_n = (z - z_n) / (z - e_n) vanishes exactly at z_n.
    const C one_minus = (z - zn) / (z - en);
    const C series = partial_log_series(u, zeros_.p);
    if (one_minus == 0.0) vanishes = true;
    if (std::abs(u) <= 1.0) {
      inner *= one_minus * std::exp(series);
      log_in.add(std::log(std::abs(one_minus)) + series.real());
    } else {
      ++out.outer_count;
      outer_log += std::log(one_minus) + series;
      log_out.add(std::log(std::abs(one_minus)) + series.real());
    }
  }
  out.log_abs_inner = log_in.value();
  out.log_abs_outer = log_out.value();
  if (vanishes) {
    out.value = 0.0;
    out.log_abs = -std::numeric_limits<double>::infinity();
  } else {
    out.value = inner * std::exp(outer_log);
    out.log_abs = out.log_abs_inner + out.log_abs_outer;
  }
  return out;
}

double Product::growth_ratio(Point z) const {
  require(zeros_.K > 0.0, ErrorKind::Precondition, "K is zero");
  return log_abs(z) * std::pow(e_->distance(z), zeros_.q) / zeros_.K;
}

GridField Product::sample_log_abs(const GridSpec& grid) const {
  GridField g = grid.make<double>(0.0);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const Point z = g.node(i, j);
      bool on_e = e_->distance(z) <= 0.0;
      for (Point a : zeros_.anchors) on_e = on_e || z == a;
      g(i, j) = on_e ? std::numeric_limits<double>::quiet_NaN() : log_abs(z);
    }
  return g;
}

}  // namespace rconvex::products
