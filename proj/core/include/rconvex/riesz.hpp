#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rconvex/compact_set.hpp"
#include "rconvex/potential.hpp"
#include "rconvex/quadrature.hpp"

namespace rconvex::riesz {

using Fn = std::function<double(double)>;

struct Condition311 {
  quadrature::IntegralStatus status = quadrature::IntegralStatus::Unknown;
  double value = 0.0;       // sum of both integrals when Finite
  double near = 0.0;        // ∫_0^1 φ1'(t) ψ(t/5) dt
  double far = 0.0;         // ∫_1^∞ φ'(t) ψ(t/3) dt
};

struct WeightPair {
  std::string name;
  Fn psi, phi, phi1, dphi, dphi1;
  double q = 0.0;
  double eps = 0.0;
  double x_star = 0.0;  // φ1 is increasing on (0, x_star); infinity when everywhere
  Condition311 condition311;
  /// Finite-set variant ∫_0^∞ φ'(t) ψ(t) dt, filled by weight_t3 only.
  std::optional<Condition311> condition_finite_set;
};

/// ψ = t^-q, φ = x^(q+1+ε) for x <= 1 and x^(q-ε) for x > 1. Requires 0 <= ε < q.
WeightPair weight_corollary1(double q, double eps);
/// ψ = t^-q, φ = x^(q+ε) for x <= 1 and x^(q-ε) for x > 1. Requires 0 <= ε < q.
WeightPair weight_t3(double q, double eps);
/// ψ = t^-p, φ = x^p; used for the single-exponent divergence probes.
WeightPair weight_power(double p);

/// Evaluates the two integrals of the condition by dyadic quadrature.
Condition311 condition311(const WeightPair& w);

/// (1/2π) Δ d^-2(z, [0,1]) in closed form.
double riesz_density_segment(Point z);

/// Grid density of Δv / 2π with excluded cells, plus explicit atoms.
struct RieszMeasureGrid {
  GridField density;   // per unit area; 0 on masked cells
  MaskGrid mask;       // 1 where excluded
  double total_mass_truncated = 0.0;  // mass of unmasked cells and atoms
  std::vector<std::pair<Point, double>> atoms;
  double exclusion_band = 0.0;

  /// Calls f(point, mass) on every unmasked cell and atom.
  void for_each(const std::function<void(Point, double)>& f) const;
};

/// Cells within `band` of E, the usual exclusion for distance-power functions.
MaskGrid exclusion_band(const CompactSet& e, const GridSpec& grid, double band);

/// Five-point Laplacian over 2π. Border cells, excluded cells and cells whose
/// stencil touches an excluded or non-finite value are masked.
RieszMeasureGrid discrete_riesz(const GridField& v, const MaskGrid& exclusion);

/// A measure made only of atoms.
RieszMeasureGrid atomic_measure(std::vector<std::pair<Point, double>> atoms);

struct BlaschkeIntegral {
  double value = 0.0;
  double mass_outside = 0.0;  // measure of unmasked cells outside the cuts
  std::size_t cells = 0;
};

/// Sum of φ(d) μ over inner_cut < d < outer_cut.
BlaschkeIntegral blaschke_integral(const RieszMeasureGrid& mu, const CompactSet& e,
                                   const WeightPair& w, double inner_cut, double outer_cut);

struct LayerCake {
  double direct = 0.0;
  double layer_cake = 0.0;
  double gap = 0.0;        // |direct - layer_cake| / |direct|
  bool phi0_nonzero = false;  // the φ(0)·mass term was added to the layer-cake side
};

/// ∫ φ(d) dμ versus ∫ φ'(t) μ{d > t} dt over the supplied increasing t grid
/// starting at 0. Increments of φ are taken exactly on each interval.
LayerCake layer_cake_check(const RieszMeasureGrid& mu, const CompactSet& e, const Fn& phi,
                           const std::vector<double>& t_grid);

struct GreenMass {
  double value = 0.0;
  std::string warning;  // set when the Green residual exceeds 1e-3
};

/// ∫_{Ω_t} G(ζ) μ(dζ) with G from a Green estimate.
GreenMass green_mass(const CompactSet& e, double t, const RieszMeasureGrid& mu,
                     const potential::GreenEstimate& green);

enum class Convergence { Convergent, DivergentLog, DivergentPower, Undetermined };

std::string to_string(Convergence c);

struct ProbeResult {
  Convergence classification = Convergence::Undetermined;
  double ratio = 0.0;     // shell contribution ratio per halving/doubling of the cut
  double exponent = 0.0;  // growth exponent in 1/cut (or cut) fitted from the tail
  std::vector<double> contributions;
};

/// Classifies a sequence of truncated integrals taken at geometrically
/// refined cuts. Convergent when successive contributions decay (ratio < 0.9
/// per factor-2 refinement), logarithmic when they stay level (|ratio - 1| <=
/// 0.1), power when they grow.
ProbeResult divergence_probe(const std::vector<double>& cuts, const std::vector<double>& values);

/// Shell decomposition of ∫ f dμ with μ = Δv / 2π. Each shell a <= ρ(z) < b
/// between consecutive cuts gets its own grid of spacing (b - a) / cells.
struct ShellCoordinate {
  std::function<double(Point)> rho;
  std::function<Bbox(double)> box_of;  // box containing {ρ < b}
};

ShellCoordinate distance_coordinate(const CompactSet& e);
ShellCoordinate modulus_coordinate();

struct ShellSeries {
  std::vector<double> cuts;
  std::vector<double> contributions;  // one per consecutive pair of cuts
  std::vector<double> partial;        // running sums, one per cut after the first
  double extrapolated = 0.0;          // partial sum plus geometric tail when it decays
};

ShellSeries shell_series(const CompactSet& e, const std::function<double(Point)>& v,
                         const ShellCoordinate& coord, const std::function<double(Point)>& integrand,
                         const std::vector<double>& cuts, int cells = 64);

/// ∫_{Θ_t} G_t(ζ, ∞) dμ̂ for μ̂ = Δ d^-2 / 2π on d-shells t 2^k, with tail.
ShellSeries green_mass_shells(const CompactSet& e, double t, const potential::GreenEstimate& green,
                              const std::function<double(Point)>& v, int shells = 10, int cells = 96);

}  // namespace rconvex::riesz
