#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rconvex/errors.hpp"

namespace rconvex {

/// A point of the complex plane; re() and im() are the plane coordinates.
using Point = std::complex<double>;

struct Bbox {
  Point lo;
  Point hi;

  double width() const { return hi.real() - lo.real(); }
  double height() const { return hi.imag() - lo.imag(); }
  bool contains(Point z) const {
    return z.real() >= lo.real() && z.real() <= hi.real() && z.imag() >= lo.imag() &&
           z.imag() <= hi.imag();
  }
  Bbox expanded(double margin) const {
    return {lo - Point(margin, margin), hi + Point(margin, margin)};
  }
};

/// Square-cell sampling of a rectangle: node (i, j) sits at lo + (i h, j h).
/// Storage is row-major with i running fastest.
template <class T>
class Grid {
 public:
  Grid() = default;

  Grid(Point lo, double h, int nx, int ny, T fill = T{})
      : lo_(lo), h_(h), nx_(nx), ny_(ny), values_(static_cast<std::size_t>(nx) * ny, fill) {
    require(nx >= 2 && ny >= 2, ErrorKind::InvalidArgument, "grid needs at least 2x2 nodes");
    require(h > 0.0, ErrorKind::InvalidArgument, "grid spacing must be positive");
  }

  /// Smallest grid with spacing box.longer_side/(n-1) that covers `box`.
  static Grid covering(const Bbox& box, int n, T fill = T{}) {
    require(n >= 2, ErrorKind::InvalidArgument, "grid needs at least 2 nodes per side");
    require(box.width() > 0.0 && box.height() > 0.0, ErrorKind::InvalidArgument,
            "grid bbox must have positive extent");
    const double h = std::max(box.width(), box.height()) / (n - 1);
    const int nx = static_cast<int>(std::ceil(box.width() / h - 1e-9)) + 1;
    const int ny = static_cast<int>(std::ceil(box.height() / h - 1e-9)) + 1;
    return Grid(box.lo, h, std::max(nx, 2), std::max(ny, 2), fill);
  }

  /// Same geometry, different payload.
  template <class U>
  Grid<U> like(U fill = U{}) const {
    return Grid<U>(lo_, h_, nx_, ny_, fill);
  }

  Point lo() const { return lo_; }
  Point hi() const { return lo_ + Point((nx_ - 1) * h_, (ny_ - 1) * h_); }
  Bbox bbox() const { return {lo(), hi()}; }
  double h() const { return h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return values_.size(); }

  Point node(int i, int j) const { return lo_ + Point(i * h_, j * h_); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }

  T& operator()(int i, int j) { return values_[index(i, j)]; }
  const T& operator()(int i, int j) const { return values_[index(i, j)]; }
  T& operator[](std::size_t k) { return values_[k]; }
  const T& operator[](std::size_t k) const { return values_[k]; }

  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }

  /// Nearest node to z, or nullopt when z falls outside the grid.
  std::optional<std::pair<int, int>> nearest_node(Point z) const {
    const double fi = (z.real() - lo_.real()) / h_;
    const double fj = (z.imag() - lo_.imag()) / h_;
    const long i = std::lround(fi);
    const long j = std::lround(fj);
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return std::nullopt;
    return std::make_pair(static_cast<int>(i), static_cast<int>(j));
  }

  bool on_frame(int i, int j) const { return i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1; }

  template <class U>
  bool same_geometry(const Grid<U>& other) const {
    return nx_ == other.nx() && ny_ == other.ny() && std::abs(h_ - other.h()) <= 1e-12 * h_ &&
           std::abs(lo_ - other.lo()) <= 1e-12 * (1.0 + std::abs(lo_));
  }

 private:
  Point lo_{};
  double h_ = 1.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<T> values_;
};

using GridField = Grid<double>;
using MaskGrid = Grid<std::uint8_t>;

/// Geometry of a grid without payload; used as a template argument by
/// operations that allocate their own fields.
struct GridSpec {
  Point lo{};
  double h = 1.0;
  int nx = 2;
  int ny = 2;

  static GridSpec covering(const Bbox& box, int n) {
    const auto g = Grid<std::uint8_t>::covering(box, n);
    return {g.lo(), g.h(), g.nx(), g.ny()};
  }
  template <class T>
  static GridSpec of(const Grid<T>& g) {
    return {g.lo(), g.h(), g.nx(), g.ny()};
  }
  template <class T>
  Grid<T> make(T fill = T{}) const {
    return Grid<T>(lo, h, nx, ny, fill);
  }
  Bbox bbox() const { return {lo, lo + Point((nx - 1) * h, (ny - 1) * h)}; }
};

/// Checks the spacing invariant h = width/(nx-1) = height/(ny-1) for an
/// externally supplied bbox/size triple.
void validate_grid_spec(const Bbox& box, int nx, int ny, double h);

}  // namespace rconvex
