#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rconvex/compact_set.hpp"

namespace rconvex::spectra {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Tag { SelfAdjoint, Normal, Unitary, General };

std::string to_string(Tag t);

/// Dense square matrix with a structural tag checked on construction.
class MatrixOperator {
 public:
  MatrixOperator(Matrix entries, Tag tag);

  const Matrix& entries() const { return a_; }
  Tag tag() const { return tag_; }
  Eigen::Index size() const { return a_.rows(); }
  bool is_normal() const { return tag_ != Tag::General; }

 private:
  Matrix a_;
  Tag tag_;
};

/// (sum s_n^q)^(1/q) over the singular values. Requires q >= 1.
double schatten_norm(const Matrix& b, double q);
double operator_norm(const Matrix& b);

/// Eigenvalues, Hermitian solver for SelfAdjoint operators.
std::vector<Point> eigenvalues(const MatrixOperator& a);

/// ||(A0 - λ)^-1||.
double resolvent_norm(const Matrix& a0, Point lambda);

struct ResolventProfile {
  enum class Kind { NormalExact, PowerLaw, ExpLaw, Empirical };
  Kind kind = Kind::NormalExact;
  double s = 1.0;              // PowerLaw exponent
  double c1 = 1.0, c2 = 0.0;   // ExpLaw constants
  std::vector<std::pair<double, double>> table;  // Empirical (x, Ψ(x)), x increasing
  std::vector<std::string> notes;

  double operator()(double x) const;
  /// The solution x of Ψ(x) = a, by bisection on the decreasing profile.
  double inverse(double a) const;
};

std::string to_string(ResolventProfile::Kind k);

ResolventProfile normal_profile();
ResolventProfile power_law_profile(double s);
ResolventProfile exp_law_profile(double c1, double c2);

/// Ψ(x) = sup ||R(λ, A0)|| over d(λ) >= x, maximised on the level set d = x
/// (the boundary of the union of disks of radius x about the eigenvalues).
/// For normal operators the result is NormalExact after checking 1/x to 1e-8.
ResolventProfile resolvent_profile(const MatrixOperator& a0, const std::vector<double>& xs,
                                   int contour_points = 256);

struct SpectralWeight {
  std::string name;
  std::function<double(double)> phi;
};

SpectralWeight power_weight(double p);
/// x^low for x <= 1, x^high for x > 1.
SpectralWeight two_exponent_weight(double low, double high);

struct MeasureOptions {
  double atom_tol = -1.0;                // default 1e-8 ||A0||
  std::optional<CompactSet> spectrum_set;  // d(λ) measured to this set instead of σ(A0)
};

struct RatioEntry {
  std::string weight;
  double q = 0.0;
  double sum = 0.0;
  double schatten_q = 0.0;  // ||B||_{S_q}^q
  double ratio = 0.0;
  double outer_sum = 0.0;   // restricted to the unbounded component of the complement
};

struct SpectralReport {
  std::vector<Point> sigma0, sigmaA;
  std::vector<Point> counted;      // eigenvalues of A at distance > atom_tol
  std::vector<double> distances;   // d(λ) for the counted eigenvalues
  std::vector<bool> outer;         // counted eigenvalue lies in the unbounded component
  std::vector<std::pair<double, double>> schatten;  // (q, ||B||_{S_q})
  std::vector<RatioEntry> ratios;
  double atom_tol = 0.0;
  bool splits_plane = false;   // the spectrum set encloses a bounded component
  bool outer_discrepancy = false;  // some full sum differs from its outer sum
};

SpectralReport perturb_and_measure(const MatrixOperator& a0, const MatrixOperator& b,
                                   const std::vector<SpectralWeight>& weights, const std::vector<double>& q_list,
                                   const MeasureOptions& opts = {});

/// g_q(λ) = det_m(I + B (A0 - λ)^-1), m = ceil(q).
std::complex<double> perturbation_determinant(const Matrix& a0, const Matrix& b, Point lambda, double q);
/// log|g_q(λ)| from the LU factors, without forming the determinant.
double log_abs_perturbation_determinant(const Matrix& a0, const Matrix& b, Point lambda, double q);

struct GrowthCheck {
  double sup = 0.0;
  Point argmax;
  std::size_t samples = 0;
};

/// sup log|g_q| / (||B||_{S_q}^q ||R(λ, A0)||^q) over the samples.
GrowthCheck determinant_growth_check(const Matrix& a0, const Matrix& b, double q,
                                     const std::vector<Point>& lambdas);

struct CayleyPair {
  MatrixOperator w, u, b;
  double identity_residual = 0.0;
};

/// W = i(ζ + V)(ζ - V)^-1, U = ζ (W_R + i)^-1 (W_R - i), B = V - U.
CayleyPair cayley_pair(const MatrixOperator& v, Point zeta);

/// A0 = diag a0(x_i), B_ij = K(x_i, x_j) / n on the midpoints x_i = (i + 1/2)/n.
std::pair<MatrixOperator, MatrixOperator> example3_operator(const std::function<Point(double)>& a0,
                                                            const std::function<Point(double, double)>& kernel,
                                                            int n);

/// Direct sum of Jordan blocks, one per (eigenvalue, size).
MatrixOperator jordan_blocks(const std::vector<std::pair<Point, int>>& blocks);

}  // namespace rconvex::spectra
