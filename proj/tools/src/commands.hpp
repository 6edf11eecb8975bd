#pragma once

#include <filesystem>
#include <vector>

#include "config.hpp"

namespace rconvex::cli {

struct RunResult {
  std::vector<std::filesystem::path> files;
  Json summary;
};

/// Convexity radius, curvature radius, t0, hull masks and connectivity table.
RunResult cmd_geometry(Json config, const RunOptions& opts);
/// Collocation Green estimate at query points, with the finite-set lower
/// bound or the exterior-disk closed form alongside when they apply.
RunResult cmd_green(Json config, const RunOptions& opts);
/// Truncated weighted Riesz integrals with divergence classification, Green
/// masses over shells and an optional prescribed-zero product.
RunResult cmd_blaschke(Json config, const RunOptions& opts);
/// Self-adjoint bound suites and integral-operator ratio tables.
RunResult cmd_spectra(Json config, const RunOptions& opts);

int exit_code(ErrorKind kind);

}  // namespace rconvex::cli
