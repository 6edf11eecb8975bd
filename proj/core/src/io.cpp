#include "rconvex/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace rconvex::io {
namespace {

constexpr const char* kVersion = "0.1.0";

const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<Point> points_from_json(const Json& j) {
  require(j.is_array(), ErrorKind::InvalidArgument, "expected an array of points");
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(point_from_json(p));
  return out;
}

Json points_to_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (Point p : pts) a.push_back(to_json(p));
  return a;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

Json to_json(Point z) { return Json::array({z.real(), z.imag()}); }

Point point_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), ErrorKind::InvalidArgument,
          "a point is [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const CompactSet& e) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FinitePoints>) {
          return {{"type", "finite"}, {"points", points_to_json(v.points)}};
        } else if constexpr (std::is_same_v<T, Segment>) {
          return {{"type", "segment"}, {"a", to_json(v.a)}, {"b", to_json(v.b)}};
        } else if constexpr (std::is_same_v<T, SampledCurve>) {
          return {{"type", "curve"}, {"points", points_to_json(v.points)}, {"closed", v.closed}};
        } else if constexpr (std::is_same_v<T, DiskUnion>) {
          Json disks = Json::array();
          for (const auto& d : v.disks) disks.push_back({{"center", to_json(d.center)}, {"radius", d.radius}});
          return {{"type", "disks"}, {"disks", disks}};
        } else {
          Json rows = Json::array();
          for (int j = 0; j < v.mask.ny(); ++j) {
            std::string row;
            for (int i = 0; i < v.mask.nx(); ++i) row += v.mask(i, j) ? '1' : '0';
            rows.push_back(row);
          }
          return {{"type", "mask"}, {"grid", to_json(GridSpec::of(v.mask))}, {"rows", rows}};
        }
      },
      e.variant());
}

CompactSet compact_set_from_json(const Json& j) {
  const auto type = get<std::string>(j, "type");
  if (type == "finite") return make_finite(points_from_json(field(j, "points")));
  if (type == "segment") return make_segment(point_from_json(field(j, "a")), point_from_json(field(j, "b")));
  if (type == "curve") {
    const bool closed = j.contains("closed") ? get<bool>(j, "closed") : false;
    return make_curve(points_from_json(field(j, "points")), closed);
  }
  if (type == "disks") {
    std::vector<Disk> disks;
    for (const auto& d : field(j, "disks")) disks.push_back({point_from_json(field(d, "center")), get<double>(d, "radius")});
    return make_disks(std::move(disks));
  }
  if (type == "mask") {
    const auto spec = grid_spec_from_json(field(j, "grid"));
    const auto rows = get<std::vector<std::string>>(j, "rows");
    require(static_cast<int>(rows.size()) == spec.ny, ErrorKind::InvalidArgument, "mask row count differs from ny");
    MaskGrid m = spec.make<std::uint8_t>(0);
    for (int r = 0; r < spec.ny; ++r) {
      require(static_cast<int>(rows[r].size()) == spec.nx, ErrorKind::InvalidArgument, "mask row length differs from nx");
      for (int i = 0; i < spec.nx; ++i) m(i, r) = rows[r][i] == '1';
    }
    return make_mask(std::move(m));
  }
  fail(ErrorKind::InvalidArgument, "unknown set type '" + type + "'");
}

Json to_json(const GridSpec& g) {
  return {{"lo", to_json(g.lo)}, {"h", g.h}, {"nx", g.nx}, {"ny", g.ny}};
}

GridSpec grid_spec_from_json(const Json& j) {
  if (j.contains("n")) {
    const Bbox box{point_from_json(field(j, "lo")), point_from_json(field(j, "hi"))};
    return GridSpec::covering(box, get<int>(j, "n"));
  }
  GridSpec g{point_from_json(field(j, "lo")), get<double>(j, "h"), get<int>(j, "nx"), get<int>(j, "ny")};
  require(g.h > 0.0 && g.nx >= 2 && g.ny >= 2, ErrorKind::InvalidArgument, "grid needs h > 0 and 2x2 nodes");
  if (j.contains("hi")) validate_grid_spec({g.lo, point_from_json(j.at("hi"))}, g.nx, g.ny, g.h);
  return g;
}

Json to_json(const geometry::HullResult& h) {
  std::size_t inside = 0;
  for (auto v : h.mask.values()) inside += v != 0;
  return {{"r", h.r}, {"hausdorff_excess", h.hausdorff_excess}, {"grid", to_json(GridSpec::of(h.mask))},
          {"hull_nodes", inside}};
}

Json to_json(const potential::GreenEstimate& g) {
  Json sources = Json::array();
  for (const auto& [s, c] : g.sources) sources.push_back({{"at", to_json(s)}, {"coefficient", c}});
  return {{"method", potential::to_string(g.method)},
          {"constant", g.constant},
          {"sources", sources},
          {"boundary_residual", g.boundary_residual},
          {"clamped", g.clamped},
          {"negative", g.negative},
          {"rank", g.rank},
          {"condition", g.condition},
          {"queries", points_to_json(g.queries)},
          {"values", g.values}};
}

potential::GreenEstimate green_estimate_from_json(const Json& j) {
  using potential::GreenMethod;
  potential::GreenEstimate g;
  const auto method = get<std::string>(j, "method");
  bool known = false;
  for (auto m : {GreenMethod::ClosedFormDisk, GreenMethod::ClosedFormExteriorDisk, GreenMethod::FiniteSetLowerBound,
                 GreenMethod::Collocation})
    if (potential::to_string(m) == method) {
      g.method = m;
      known = true;
    }
  require(known, ErrorKind::InvalidArgument, "unknown Green method '" + method + "'");
  g.constant = get<double>(j, "constant");
  for (const auto& s : field(j, "sources")) g.sources.emplace_back(point_from_json(field(s, "at")), get<double>(s, "coefficient"));
  g.boundary_residual = get<double>(j, "boundary_residual");
  g.clamped = get<int>(j, "clamped");
  g.negative = get<int>(j, "negative");
  g.rank = get<int>(j, "rank");
  g.condition = get<double>(j, "condition");
  g.queries = points_from_json(field(j, "queries"));
  g.values = get<std::vector<double>>(j, "values");
  return g;
}

Json to_json(const products::ZeroData& z) {
  Json j = {{"zeros", points_to_json(z.zeros)}, {"anchors", points_to_json(z.anchors)}, {"q", z.q}, {"p", z.p}, {"K", z.K}};
  if (z.k_tail) j["k_tail"] = *z.k_tail;
  return j;
}

products::ZeroData zero_data_from_json(const Json& j) {
  products::ZeroData z;
  z.zeros = points_from_json(field(j, "zeros"));
  z.anchors = points_from_json(field(j, "anchors"));
  z.q = get<double>(j, "q");
  z.p = get<int>(j, "p");
  z.K = get<double>(j, "K");
  if (j.contains("k_tail")) z.k_tail = get<double>(j, "k_tail");
  return z;
}

Json to_json(const spectra::SpectralReport& r) {
  Json schatten = Json::array();
  for (const auto& [q, v] : r.schatten) schatten.push_back({{"q", q}, {"norm", v}});
  Json ratios = Json::array();
  for (const auto& e : r.ratios)
    ratios.push_back({{"weight", e.weight}, {"q", e.q}, {"sum", e.sum}, {"outer_sum", e.outer_sum},
                      {"schatten_q", e.schatten_q}, {"ratio", e.ratio}});
  return {{"sigma0", points_to_json(r.sigma0)},
          {"sigmaA", points_to_json(r.sigmaA)},
          {"counted", points_to_json(r.counted)},
          {"distances", r.distances},
          {"atom_tol", r.atom_tol},
          {"schatten", schatten},
          {"ratios", ratios},
          {"splits_plane", r.splits_plane},
          {"outer_discrepancy", r.outer_discrepancy}};
}

void CsvTable::add_row(std::vector<std::string> row) {
  require(row.size() == header.size(), ErrorKind::InvalidArgument, "CSV row width differs from header");
  rows.push_back(std::move(row));
}

std::string CsvTable::render(const std::vector<std::pair<std::string, std::string>>& comments) const {
  std::ostringstream out;
  for (const auto& [k, v] : comments) out << "# " << k << ": " << v << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell(long long v) { return std::to_string(v); }

std::string cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::vector<Point> parse_points_csv(const std::string& text) {
  std::vector<Point> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double re = 0.0, im = 0.0;
    char comma = 0;
    require(static_cast<bool>(row >> re >> comma >> im) && comma == ',', ErrorKind::InvalidArgument,
            "bad point on line " + std::to_string(number));
    out.emplace_back(re, im);
  }
  return out;
}

std::string mask_to_pgm(const MaskGrid& mask) {
  std::ostringstream out;
  out << "P5\n" << mask.nx() << ' ' << mask.ny() << "\n255\n";
  for (int j = mask.ny() - 1; j >= 0; --j)
    for (int i = 0; i < mask.nx(); ++i) out.put(mask(i, j) ? static_cast<char>(255) : 0);
  return out.str();
}

std::string mask_to_csv(const MaskGrid& mask) {
  std::string out;
  for (int j = mask.ny() - 1; j >= 0; --j) {
    for (int i = 0; i < mask.nx(); ++i) {
      if (i) out += ',';
      out += mask(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(f), ErrorKind::InvalidArgument, "cannot open " + tmp.string() + " for writing");
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.flush();
    require(static_cast<bool>(f), ErrorKind::InvalidArgument, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  require(!ec, ErrorKind::InvalidArgument, "cannot rename into " + path.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

Json module_versions() {
  return {{"geometry", kVersion}, {"potential", kVersion}, {"riesz", kVersion},
          {"products", kVersion}, {"spectra", kVersion}, {"cli", kVersion}};
}

}  // namespace rconvex::io
