#pragma once

#include <functional>
#include <vector>

namespace rconvex::quadrature {

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// 30-point Gauss-Legendre rule on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

enum class IntegralStatus { Finite, Infinite, Unknown };

struct ImproperIntegral {
  IntegralStatus status = IntegralStatus::Unknown;
  double value = 0.0;        // partial sum plus extrapolated tail when Finite
  double partial = 0.0;      // sum over the computed pieces
  double tail_ratio = 0.0;   // ratio of the last two piece contributions
};

/// Improper integral over dyadic pieces accumulating at an endpoint.
/// Toward zero: pieces [a 2^-(k+1), a 2^-k]; toward infinity: [a 2^k, a 2^(k+1)]
/// up to `upper`. The tail is extrapolated geometrically from the last piece
/// ratio; a ratio >= 1 marks divergence, and disagreement above 10% between
/// extrapolations started three pieces apart marks the result Unknown.
ImproperIntegral integrate_to_zero(const std::function<double(double)>& f, double a, int pieces = 48);
ImproperIntegral integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       double upper = 1e3);

}  // namespace rconvex::quadrature
