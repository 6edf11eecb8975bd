#include "rconvex/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>

#include "rconvex/errors.hpp"

namespace rconvex::quadrature {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Sum of pieces plus a geometric tail fitted to the last two of the first `n`.
double extrapolate(const std::vector<double>& pieces, std::size_t n, double& ratio) {
  CompensatedSum s;
  for (std::size_t k = 0; k < n; ++k) s.add(pieces[k]);
  ratio = pieces[n - 2] != 0.0 ? pieces[n - 1] / pieces[n - 2] : 0.0;
  if (ratio <= 0.0 || ratio >= 1.0) return s.value();
  return s.value() + pieces[n - 1] * ratio / (1.0 - ratio);
}

ImproperIntegral classify(const std::vector<double>& pieces) {
  ImproperIntegral out;
  CompensatedSum s;
  for (double c : pieces) {
    if (!std::isfinite(c)) {
      out.status = IntegralStatus::Infinite;
      out.value = out.partial = kInf;
      return out;
    }
    s.add(c);
  }
  out.partial = s.value();
  const std::size_t n = pieces.size();
  double ratio = 0.0, early_ratio = 0.0;
  const double full = extrapolate(pieces, n, ratio);
  const double early = extrapolate(pieces, n - 3, early_ratio);
  out.tail_ratio = ratio;
  if (pieces[n - 1] == 0.0) {
    out.status = IntegralStatus::Finite;
    out.value = out.partial;
  } else if (ratio >= 1.0 - 1e-9) {
    out.status = IntegralStatus::Infinite;
    out.value = kInf;
  } else if (ratio <= 0.0 || std::abs(full - early) > 0.1 * std::abs(full)) {
    out.status = IntegralStatus::Unknown;
    out.value = full;
  } else {
    out.status = IntegralStatus::Finite;
    out.value = full;
  }
  return out;
}

}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}

ImproperIntegral integrate_to_zero(const std::function<double(double)>& f, double a, int pieces) {
  require(a > 0.0, ErrorKind::InvalidArgument, "interval end must be positive");
  require(pieces >= 6, ErrorKind::InvalidArgument, "need at least 6 pieces");
  std::vector<double> c;
  double hi = a;
  for (int k = 0; k < pieces; ++k, hi *= 0.5) c.push_back(gauss_legendre(f, 0.5 * hi, hi));
  return classify(c);
}

ImproperIntegral integrate_to_infinity(const std::function<double(double)>& f, double a, double upper) {
  require(a > 0.0 && upper > 16.0 * a, ErrorKind::InvalidArgument, "need 0 < a and upper > 16 a");
  std::vector<double> c;
  for (double lo = a; lo < upper; lo *= 2.0) c.push_back(gauss_legendre(f, lo, 2.0 * lo));
  return classify(c);
}

}  // namespace rconvex::quadrature
