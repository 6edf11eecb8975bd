#pragma once

#include <cstdint>
#include <vector>

#include "rconvex/grid.hpp"

namespace rconvex {

/// Exact Euclidean distance transform of a site mask (Felzenszwalb-Huttenlocher
/// lower-envelope passes). `distance` is in world units; `nearest_site` holds the
/// flat index of a closest site, or -1 when the mask is empty.
struct DistanceTransform {
  GridField distance;
  std::vector<std::int64_t> nearest_site;
};

DistanceTransform euclidean_distance_transform(const MaskGrid& sites);

}  // namespace rconvex
