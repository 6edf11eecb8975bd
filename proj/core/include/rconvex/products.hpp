#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rconvex/compact_set.hpp"

namespace rconvex::products {

/// W(z, p) = (1 - z) exp(z + z^2/2 + ... + z^p/p).
std::complex<double> weierstrass_factor(std::complex<double> z, int p);

/// log|W(z, p)|, evaluated without forming the exponential.
double log_abs_weierstrass(std::complex<double> z, int p);

/// A_p = 3e (2 + log(p + 1)).
double factor_bound_Ap(int p);

/// The integer p with q - 1 <= p < q.
int order_for(double q);

struct ZeroData {
  std::vector<Point> zeros;    // repeated entries carry multiplicity
  std::vector<Point> anchors;  // e_n in E nearest to z_n
  double q = 1.0;
  int p = 0;
  double K = 0.0;                // sum of d^q(z_n)
  std::optional<double> k_tail;  // sum over zeros beyond the truncation, when known
};

/// Anchors from nearest points of E, p from q and K from the distances.
ZeroData make_zero_data(const CompactSet& e, std::vector<Point> zeros, double q);

/// Checks the anchor invariant |z_n - e_n| = d(z_n) within `anchor_tol`.
void validate(const ZeroData& z, const CompactSet& e, double anchor_tol = 1e-9);

struct ProductValue {
  std::complex<double> value;
  double log_abs = 0.0;
  double log_abs_inner = 0.0;  // factors with |u_n| <= 1
  double log_abs_outer = 0.0;  // factors with |u_n| > 1
  std::size_t outer_count = 0;
};

/// f(z) = prod W(u_n(z), p) with u_n(z) = (z_n - e_n) / (z - e_n).
class Product {
 public:
  Product(const CompactSet& e, ZeroData zeros, double anchor_tol = 1e-9);

  const ZeroData& data() const { return zeros_; }

  ProductValue evaluate(Point z) const;
  std::complex<double> operator()(Point z) const { return evaluate(z).value; }
  double log_abs(Point z) const { return evaluate(z).log_abs; }

  /// log|f(z)| d^q(z) / K, the quantity bounded by 1 + A_p.
  double growth_ratio(Point z) const;

  /// log|f| on every node; -inf at zeros and NaN on E.
  GridField sample_log_abs(const GridSpec& grid) const;

 private:
  const CompactSet* e_;
  ZeroData zeros_;
};

}  // namespace rconvex::products
