#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "rconvex/compact_set.hpp"
#include "rconvex/geometry.hpp"
#include "rconvex/potential.hpp"
#include "rconvex/products.hpp"
#include "rconvex/spectra.hpp"

namespace rconvex::io {

using Json = nlohmann::json;

Json to_json(Point z);
Point point_from_json(const Json& j);

/// {"type": "finite" | "segment" | "curve" | "disks" | "mask", ...}
Json to_json(const CompactSet& e);
CompactSet compact_set_from_json(const Json& j);

/// {"lo": [x, y], "hi": [x, y], "n": nodes along the longer side}, or explicit
/// {"lo", "h", "nx", "ny"}.
Json to_json(const GridSpec& g);
GridSpec grid_spec_from_json(const Json& j);

Json to_json(const geometry::HullResult& h);
Json to_json(const potential::GreenEstimate& g);
potential::GreenEstimate green_estimate_from_json(const Json& j);
Json to_json(const products::ZeroData& z);
products::ZeroData zero_data_from_json(const Json& j);
Json to_json(const spectra::SpectralReport& r);

/// Rows of comma-separated cells; doubles print with 17 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  /// Header comments ("# key: value") followed by the header line and rows.
  std::string render(const std::vector<std::pair<std::string, std::string>>& comments = {}) const;
};

std::string cell(double v);
std::string cell(long long v);
std::string cell(const std::string& v);

/// Queries as "re,im" lines; blank lines and lines starting with '#' are skipped.
std::vector<Point> parse_points_csv(const std::string& text);

/// Binary PGM (P5), 255 for set nodes, first image row at the top (largest y).
std::string mask_to_pgm(const MaskGrid& mask);
/// One row per grid row, top row first, cells 0 or 1.
std::string mask_to_csv(const MaskGrid& mask);

/// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

std::uint64_t fnv1a64(const std::string& bytes);
/// 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

/// {"geometry": "x.y.z", ...} for the library modules.
Json module_versions();

}  // namespace rconvex::io
