#include "rconvex/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rconvex/quadrature.hpp"

namespace rconvex::spectra {
namespace {

using C = std::complex<double>;
constexpr C kI(0.0, 1.0);

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

/// Merges eigenvalues closer than tol; a perturbed Jordan block collapses to its centroid.
std::vector<Point> cluster(std::vector<Point> vals, double tol) {
  std::vector<Point> centers;
  std::vector<int> counts;
  for (Point v : vals) {
    bool merged = false;
    for (std::size_t k = 0; k < centers.size() && !merged; ++k)
      if (std::abs(v - centers[k]) <= tol) {
        centers[k] = (centers[k] * double(counts[k]) + v) / double(counts[k] + 1);
        ++counts[k];
        merged = true;
      }
    if (!merged) {
      centers.push_back(v);
      counts.push_back(1);
    }
  }
  return centers;
}

double nearest_distance(Point z, const std::vector<Point>& pts) {
  double d = std::numeric_limits<double>::infinity();
  for (Point p : pts) d = std::min(d, std::abs(z - p));
  return d;
}

/// Even-odd test against a closed polyline.
bool inside_closed_curve(Point z, const std::vector<Point>& pts) {
  bool in = false;
  for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
    const Point a = pts[i], b = pts[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (z.real() < x) in = !in;
    }
  }
  return in;
}

double cluster_tol(const Matrix& a) { return 1e-6 * std::max(1.0, operator_norm(a)); }

struct Resolvent {
  Matrix r;
  double norm = 0.0;
};

Resolvent resolvent(const Matrix& a0, Point lambda) {
  const Eigen::Index n = a0.rows();
  const Matrix shifted = a0 - lambda * Matrix::Identity(n, n);
  Eigen::BDCSVD<Matrix> svd(shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smin = s(n - 1);
  require(smin > 1e-12 * std::max(1.0, operator_norm(a0)), ErrorKind::Precondition,
          "lambda lies in the spectrum of A0");
  Resolvent out;
  out.r = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
  out.norm = 1.0 / smin;
  return out;
}

int det_order(double q) {
  require(q >= 1.0 && std::isfinite(q), ErrorKind::InvalidArgument, "q must be at least 1");
  return static_cast<int>(std::ceil(q));
}

/// log det(I + T) split as (LU determinant, trace correction of the regularisation).
std::pair<Eigen::PartialPivLU<Matrix>, C> regularized_factors(const Matrix& t, int m) {
  const Eigen::Index n = t.rows();
  Eigen::PartialPivLU<Matrix> lu(Matrix::Identity(n, n) + t);
  C trace = 0.0;
  Matrix power = Matrix::Identity(n, n);
  for (int k = 1; k < m; ++k) {
    power = power * (-t);
    trace += power.trace() / static_cast<double>(k);
  }
  return {std::move(lu), trace};
}

double power_sum(const Eigen::VectorXd& s, double q) {
  quadrature::CompensatedSum sum;
  for (Eigen::Index k = 0; k < s.size(); ++k) sum.add(std::pow(s(k), q));
  return sum.value();
}

}  // namespace

std::string to_string(Tag t) {
  switch (t) {
    case Tag::SelfAdjoint: return "SelfAdjoint";
    case Tag::Normal: return "Normal";
    case Tag::Unitary: return "Unitary";
    case Tag::General: return "General";
  }
  return "?";
}

std::string to_string(ResolventProfile::Kind k) {
  switch (k) {
    case ResolventProfile::Kind::NormalExact: return "NormalExact";
    case ResolventProfile::Kind::PowerLaw: return "PowerLaw";
    case ResolventProfile::Kind::ExpLaw: return "ExpLaw";
    case ResolventProfile::Kind::Empirical: return "Empirical";
  }
  return "?";
}

MatrixOperator::MatrixOperator(Matrix entries, Tag tag) : a_(std::move(entries)), tag_(tag) {
  require(a_.rows() == a_.cols() && a_.rows() > 0, ErrorKind::InvalidArgument, "matrix must be square and nonempty");
  require(a_.allFinite(), ErrorKind::InvalidArgument, "matrix has non-finite entries");
  const double norm = operator_norm(a_);
  const Eigen::Index n = a_.rows();
  switch (tag_) {
    case Tag::SelfAdjoint:
      require(operator_norm(a_ - adjoint(a_)) <= 1e-12 * norm, ErrorKind::InvalidArgument,
              "matrix is not self-adjoint");
      break;
    case Tag::Normal:
      require(operator_norm(a_ * adjoint(a_) - adjoint(a_) * a_) <= 1e-10 * norm * norm,
              ErrorKind::InvalidArgument, "matrix is not normal");
      break;
    case Tag::Unitary:
      require(operator_norm(adjoint(a_) * a_ - Matrix::Identity(n, n)) <= 1e-10, ErrorKind::InvalidArgument,
              "matrix is not unitary");
      break;
    case Tag::General: break;
  }
}

double schatten_norm(const Matrix& b, double q) {
  require(q >= 1.0, ErrorKind::InvalidArgument, "Schatten exponent must be at least 1");
  const Eigen::VectorXd s = Eigen::BDCSVD<Matrix>(b).singularValues();
  const double top = s.size() ? s(0) : 0.0;
  if (top == 0.0) return 0.0;
  // Scaled to avoid overflow for large q.
  return top * std::pow(power_sum(s / top, q), 1.0 / q);
}

double operator_norm(const Matrix& b) {
  if (b.size() == 0) return 0.0;
  return Eigen::BDCSVD<Matrix>(b).singularValues()(0);
}

std::vector<Point> eigenvalues(const MatrixOperator& a) {
  std::vector<Point> out;
  if (a.tag() == Tag::SelfAdjoint) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.entries(), Eigen::EigenvaluesOnly);
    require(es.info() == Eigen::Success, ErrorKind::Numerical, "Hermitian eigensolver did not converge");
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.emplace_back(es.eigenvalues()(k), 0.0);
    return out;
  }
  Eigen::ComplexEigenSolver<Matrix> es(a.entries(), false);
  if (es.info() != Eigen::Success) {
    const auto s = Eigen::BDCSVD<Matrix>(a.entries()).singularValues();
    std::ostringstream msg;
    msg << "eigensolver did not converge (n = " << a.size() << ", norm = " << s(0)
        << ", condition = " << s(0) / s(s.size() - 1) << ")";
    fail(ErrorKind::Numerical, msg.str());
  }
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(es.eigenvalues()(k));
  return out;
}

double resolvent_norm(const Matrix& a0, Point lambda) { return resolvent(a0, lambda).norm; }

double ResolventProfile::operator()(double x) const {
  require(x > 0.0, ErrorKind::InvalidArgument, "profile argument must be positive");
  switch (kind) {
    case Kind::NormalExact: return 1.0 / x;
    case Kind::PowerLaw: return std::pow(x, -s);
    case Kind::ExpLaw: return c1 / x * std::exp(c2 / (x * x));
    case Kind::Empirical: break;
  }
  require(!table.empty(), ErrorKind::Precondition, "empty resolvent table");
  if (x <= table.front().first) return table.front().second * table.front().first / x;
  if (x >= table.back().first) return table.back().second * table.back().first / x;
  const auto it = std::lower_bound(table.begin(), table.end(), x,
                                   [](const auto& row, double v) { return row.first < v; });
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  const double w = std::log(x / x0) / std::log(x1 / x0);
  return std::exp((1 - w) * std::log(y0) + w * std::log(y1));
}

double ResolventProfile::inverse(double a) const {
  require(a > 0.0, ErrorKind::InvalidArgument, "profile level must be positive");
  if (kind == Kind::NormalExact) return 1.0 / a;
  double lo = 1e-12, hi = 1e12;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    ((*this)(mid) > a ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

ResolventProfile normal_profile() { return {}; }

ResolventProfile power_law_profile(double s) {
  require(s > 0.0, ErrorKind::InvalidArgument, "power-law exponent must be positive");
  ResolventProfile p;
  p.kind = ResolventProfile::Kind::PowerLaw;
  p.s = s;
  return p;
}

ResolventProfile exp_law_profile(double c1, double c2) {
  require(c1 > 0.0 && c2 >= 0.0, ErrorKind::InvalidArgument, "exp-law constants must be positive");
  ResolventProfile p;
  p.kind = ResolventProfile::Kind::ExpLaw;
  p.c1 = c1;
  p.c2 = c2;
  return p;
}

ResolventProfile resolvent_profile(const MatrixOperator& a0, const std::vector<double>& xs, int contour_points) {
  require(contour_points >= 8, ErrorKind::InvalidArgument, "need at least 8 contour points");
  const auto centers = cluster(eigenvalues(a0), cluster_tol(a0.entries()));
  const double eig_tol = 1e-10 * std::max(1.0, operator_norm(a0.entries()));
  ResolventProfile out;
  out.kind = ResolventProfile::Kind::Empirical;
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  for (double x : sorted) {
    if (x <= eig_tol) {
      out.notes.push_back("sample x = " + std::to_string(x) + " skipped: resolvent singular");
      continue;
    }
    double best = 0.0;
    for (Point c : centers)
      for (int k = 0; k < contour_points; ++k) {
        const Point lambda = c + std::polar(x, 2 * std::numbers::pi * k / contour_points);
        if (nearest_distance(lambda, centers) < x * (1 - 1e-12)) continue;
        best = std::max(best, resolvent_norm(a0.entries(), lambda));
      }
    out.table.emplace_back(x, best);
  }
  if (a0.is_normal()) {
    for (const auto& [x, psi] : out.table)
      require(std::abs(psi * x - 1.0) <= 1e-8, ErrorKind::Numerical, "normal resolvent differs from 1/x");
    out.kind = ResolventProfile::Kind::NormalExact;
  }
  return out;
}

SpectralWeight power_weight(double p) {
  require(p > 0.0, ErrorKind::InvalidArgument, "weight exponent must be positive");
  std::ostringstream name;
  name << "x^" << p;
  return {name.str(), [p](double x) { return std::pow(x, p); }};
}

SpectralWeight two_exponent_weight(double low, double high) {
  require(low > 0.0 && high > 0.0, ErrorKind::InvalidArgument, "weight exponents must be positive");
  std::ostringstream name;
  name << "x^" << low << "|x^" << high;
  return {name.str(), [low, high](double x) { return x <= 1.0 ? std::pow(x, low) : std::pow(x, high); }};
}

SpectralReport perturb_and_measure(const MatrixOperator& a0, const MatrixOperator& b,
                                   const std::vector<SpectralWeight>& weights, const std::vector<double>& q_list,
                                   const MeasureOptions& opts) {
  require(a0.size() == b.size(), ErrorKind::InvalidArgument, "A0 and B differ in dimension");
  for (const auto& w : weights)
    require(w.phi(0.0) == 0.0, ErrorKind::InvalidArgument, "weight " + w.name + " must vanish at 0");

  SpectralReport rep;
  const bool hermitian = a0.tag() == Tag::SelfAdjoint && b.tag() == Tag::SelfAdjoint;
  const MatrixOperator a(a0.entries() + b.entries(), hermitian ? Tag::SelfAdjoint : Tag::General);
  rep.sigma0 = eigenvalues(a0);
  rep.sigmaA = eigenvalues(a);
  rep.atom_tol = opts.atom_tol >= 0.0 ? opts.atom_tol : 1e-8 * operator_norm(a0.entries());
  const auto centers = cluster(rep.sigma0, cluster_tol(a0.entries()));

  const SampledCurve* ring = nullptr;
  if (opts.spectrum_set) {
    ring = opts.spectrum_set->get_if<SampledCurve>();
    if (ring && !(ring->closed && ring->points.size() >= 3)) ring = nullptr;
  }
  rep.splits_plane = ring != nullptr;

  for (Point lambda : rep.sigmaA) {
    const double d = opts.spectrum_set ? opts.spectrum_set->distance(lambda) : nearest_distance(lambda, centers);
    if (d <= rep.atom_tol) continue;
    rep.counted.push_back(lambda);
    rep.distances.push_back(d);
    rep.outer.push_back(!ring || !inside_closed_curve(lambda, ring->points));
  }

  const Eigen::VectorXd s = Eigen::BDCSVD<Matrix>(b.entries()).singularValues();
  for (double q : q_list) {
    const double norm = schatten_norm(b.entries(), q);
    rep.schatten.emplace_back(q, norm);
    const double sq = power_sum(s, q);
    for (const auto& w : weights) {
      quadrature::CompensatedSum full, outer;
      for (std::size_t k = 0; k < rep.distances.size(); ++k) {
        const double v = w.phi(rep.distances[k]);
        full.add(v);
        if (rep.outer[k]) outer.add(v);
      }
      RatioEntry e;
      e.weight = w.name;
      e.q = q;
      e.sum = full.value();
      e.outer_sum = outer.value();
      e.schatten_q = sq;
      e.ratio = sq > 0.0 ? e.sum / sq : (e.sum == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      if (e.sum != e.outer_sum) rep.outer_discrepancy = true;
      rep.ratios.push_back(e);
    }
  }
  return rep;
}

C perturbation_determinant(const Matrix& a0, const Matrix& b, Point lambda, double q) {
  const int m = det_order(q);
  require(a0.rows() == b.rows() && a0.cols() == b.cols(), ErrorKind::InvalidArgument, "A0 and B differ in dimension");
  const auto [lu, trace] = regularized_factors(b * resolvent(a0, lambda).r, m);
  return lu.determinant() * std::exp(trace);
}

double log_abs_perturbation_determinant(const Matrix& a0, const Matrix& b, Point lambda, double q) {
  const int m = det_order(q);
  require(a0.rows() == b.rows() && a0.cols() == b.cols(), ErrorKind::InvalidArgument, "A0 and B differ in dimension");
  const auto [lu, trace] = regularized_factors(b * resolvent(a0, lambda).r, m);
  quadrature::CompensatedSum s;
  const Matrix& f = lu.matrixLU();
  for (Eigen::Index k = 0; k < f.rows(); ++k) s.add(std::log(std::abs(f(k, k))));
  return s.value() + trace.real();
}

GrowthCheck determinant_growth_check(const Matrix& a0, const Matrix& b, double q, const std::vector<Point>& lambdas) {
  const double bq = std::pow(schatten_norm(b, q), q);
  GrowthCheck out;
  out.sup = -std::numeric_limits<double>::infinity();
  for (Point lambda : lambdas) {
    const double rn = resolvent_norm(a0, lambda);
    const double lg = log_abs_perturbation_determinant(a0, b, lambda, q);
    const double ratio = bq > 0.0 ? lg / (bq * std::pow(rn, q)) : 0.0;
    if (ratio > out.sup) {
      out.sup = ratio;
      out.argmax = lambda;
    }
    ++out.samples;
  }
  return out;
}

CayleyPair cayley_pair(const MatrixOperator& v, Point zeta) {
  require(std::abs(std::abs(zeta) - 1.0) <= 1e-12, ErrorKind::InvalidArgument, "zeta must be unimodular");
  const Matrix& vm = v.entries();
  const Eigen::Index n = vm.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix gap = zeta * id - vm;
  const auto s = Eigen::BDCSVD<Matrix>(gap).singularValues();
  require(s(n - 1) > 1e-12 * std::max(1.0, operator_norm(vm)), ErrorKind::Precondition,
          "zeta lies in the spectrum of V");
  const Matrix gap_inv = gap.partialPivLu().inverse();
  const Matrix w = kI * (zeta * id + vm) * gap_inv;
  const Matrix w_i = (w - w.adjoint()) / (2.0 * kI);
  const Matrix w_r = (w + w.adjoint()) / 2.0;
  const Matrix rhs = gap_inv.adjoint() * (id - vm.adjoint() * vm) * gap_inv;
  const double scale = std::max(1.0, std::pow(1.0 / s(n - 1), 2));
  const double residual = operator_norm(w_i - rhs) / scale;
  require(residual <= 1e-10, ErrorKind::Numerical, "imaginary-part identity fails");
  const Matrix u = zeta * (w_r + kI * id).partialPivLu().solve(w_r - kI * id);
  return {MatrixOperator(w, Tag::General), MatrixOperator(u, Tag::Unitary), MatrixOperator(vm - u, Tag::General),
          residual};
}

std::pair<MatrixOperator, MatrixOperator> example3_operator(const std::function<Point(double)>& a0,
                                                            const std::function<Point(double, double)>& kernel,
                                                            int n) {
  require(n >= 1, ErrorKind::InvalidArgument, "need at least one grid point");
  Matrix a = Matrix::Zero(n, n), b(n, n);
  for (int i = 0; i < n; ++i) {
    const double xi = (i + 0.5) / n;
    a(i, i) = a0(xi);
    for (int j = 0; j < n; ++j) b(i, j) = kernel(xi, (j + 0.5) / n) / static_cast<double>(n);
  }
  return {MatrixOperator(std::move(a), Tag::Normal), MatrixOperator(std::move(b), Tag::General)};
}

MatrixOperator jordan_blocks(const std::vector<std::pair<Point, int>>& blocks) {
  int n = 0;
  bool diagonal = true;
  for (const auto& [lambda, size] : blocks) {
    require(size >= 1, ErrorKind::InvalidArgument, "Jordan block size must be positive");
    n += size;
    diagonal = diagonal && size == 1;
  }
  Matrix a = Matrix::Zero(n, n);
  int off = 0;
  for (const auto& [lambda, size] : blocks) {
    for (int k = 0; k < size; ++k) {
      a(off + k, off + k) = lambda;
      if (k + 1 < size) a(off + k, off + k + 1) = 1.0;
    }
    off += size;
  }
  return MatrixOperator(std::move(a), diagonal ? Tag::Normal : Tag::General);
}

}  // namespace rconvex::spectra
