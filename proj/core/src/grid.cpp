#include "rconvex/grid.hpp"

#include <cmath>

namespace rconvex {

void validate_grid_spec(const Bbox& box, int nx, int ny, double h) {
  require(nx >= 2 && ny >= 2, ErrorKind::InvalidArgument, "grid needs at least 2x2 nodes");
  require(h > 0.0 && std::isfinite(h), ErrorKind::InvalidArgument, "grid spacing must be positive");
  const double hx = box.width() / (nx - 1);
  const double hy = box.height() / (ny - 1);
  require(std::abs(hx - h) <= 1e-12 * h && std::abs(hy - h) <= 1e-12 * h,
          ErrorKind::InvalidArgument,
          "grid spacing must equal width/(nx-1) = height/(ny-1)");
}

}  // namespace rconvex
