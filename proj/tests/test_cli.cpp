#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "app.hpp"
#include "rconvex/io.hpp"

using namespace rconvex;
using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

class Sandbox {
 public:
  explicit Sandbox(const std::string& name) : dir_(fs::temp_directory_path() / ("rconvex_cli_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  Run run(const std::string& command, const Json& config, std::vector<std::string> extra = {},
          const std::string& out_sub = "out") {
    const auto cfg = path(command + ".json");
    io::write_atomic(cfg, config.dump());
    std::vector<std::string> args = {"rconvex", command, "--config", cfg.string(), "--out", path(out_sub).string()};
    args.insert(args.end(), extra.begin(), extra.end());
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  Json json(const std::string& file, const std::string& out_sub = "out") const {
    return Json::parse(io::read_file(dir_ / out_sub / file));
  }

  /// Data rows of a CSV output, without comment lines.
  std::vector<std::string> rows(const std::string& file, const std::string& out_sub = "out") const {
    std::istringstream in(io::read_file(dir_ / out_sub / file));
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);)
      if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
  }

 private:
  fs::path dir_;
};

Json grid(double lo, double hi, int n) { return {{"lo", {lo, lo}}, {"hi", {hi, hi}}, {"n", n}}; }

}  // namespace

TEST_CASE("geometry: triangle radius of convexity is its circumradius") {
  Sandbox box("geometry");
  const Json cfg = {{"set", {{"type", "finite"}, {"points", {{0, 0}, {1, 0}, {0.5, 0.8}}}}},
                    {"grid", grid(-2, 3, 201)},
                    {"hull_radii", {0.3}},
                    {"t_values", {0.1, 0.2}}};
  const auto r = box.run("geometry", cfg);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto g = box.json("geometry.json");
  const double circumradius = 0.5 * std::abs(Point(1, 0)) * std::abs(Point(0.5, 0.8)) * std::abs(Point(-0.5, 0.8)) /
                              std::abs((Point(1, 0) * std::conj(Point(0.5, 0.8))).imag());
  CHECK(std::abs(g["r0"].get<double>() - circumradius) <= std::max(2 * 0.025, 0.01 * circumradius));
  CHECK(g["hulls"].size() == 1);
  CHECK(fs::exists(box.path("out/hull_0.pgm")));
  CHECK(box.rows("connectivity.csv").size() == 3);
  CHECK(g["meta"]["config"]["r_lo"].get<double>() == doctest::Approx(0.1));
  CHECK(g["meta"]["config_hash"].is_string());
}

TEST_CASE("geometry: a segment is r-convex for every r") {
  Sandbox box("segment");
  const Json cfg = {{"set", {{"type", "segment"}, {"a", {0, 0}}, {"b", {1, 0}}}}, {"grid", grid(-2, 3, 101)}};
  const auto r = box.run("geometry", cfg);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(box.json("geometry.json")["r0"] == "unbounded (>= r_hi)");
}

TEST_CASE("config errors exit with code 2") {
  Sandbox box("errors");
  const Json no_grid = {{"set", {{"type", "segment"}, {"a", {0, 0}}, {"b", {1, 0}}}}};
  auto r = box.run("geometry", no_grid);
  CHECK(r.code == 2);
  CHECK(r.err.find("missing geometry.grid") != std::string::npos);

  Json unknown = no_grid;
  unknown["grid"] = grid(-2, 3, 51);
  unknown["colour"] = "red";
  r = box.run("geometry", unknown);
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown key geometry.colour") != std::string::npos);

  r = box.run("spectra", {{"suites", {{{"type", "kato"}, {"q", {0.5}}, {"seeds", 1}}}}});
  CHECK(r.code == 2);

  const char* argv[] = {"rconvex", "geometry"};
  std::ostringstream out, err;
  CHECK(cli::run(2, argv, out, err) == 2);
}

TEST_CASE("green: exterior of a disk matches log|z| to 1e-6") {
  Sandbox box("green_disk");
  const Json cfg = {{"set", {{"type", "disks"}, {"disks", {{{"center", {0, 0}}, {"radius", 1}}}}}},
                    {"t", 0},
                    {"queries", {{2, 0}, {0, 3}, {1.5, 1.5}, {-1.1, 0.2}}}};
  const auto r = box.run("green", cfg);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto rows = box.rows("queries.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "re,im,d,G,G_exact,abs_err");
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double err = std::stod(rows[k].substr(rows[k].rfind(',') + 1));
    CHECK(err <= 1e-6);
  }
}

TEST_CASE("green: finite sets report the lower bound and the ratio table") {
  Sandbox box("green_finite");
  const Json cfg = {{"set", {{"type", "finite"}, {"points", {{0, 0}, {1, 0}}}}},
                    {"t", 0.05},
                    {"queries", {{0.5, 0.5}, {2, 0}, {0.5, -3}}},
                    {"ratio", {{"t", 0.05}, {"samples", 50}}}};
  const auto r = box.run("green", cfg);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto rows = box.rows("queries.csv");
  CHECK(rows[0] == "re,im,d,G,v_t,G_minus_v_t,ok");
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].substr(rows[k].rfind(',') + 1) == "1");
  CHECK(box.rows("ratio.csv").size() > 1);
}

TEST_CASE("green: a closed curve splits the plane and fails with code 3") {
  Sandbox box("green_split");
  std::vector<Json> pts;
  for (int k = 0; k < 64; ++k) pts.push_back({std::cos(2 * M_PI * k / 64), std::sin(2 * M_PI * k / 64)});
  Json cfg = {{"set", {{"type", "curve"}, {"points", pts}, {"closed", true}}}, {"t", 0.05}, {"queries", {{3, 0}}}};
  auto r = box.run("green", cfg);
  CHECK(r.code == 3);
  CHECK(r.err.find("domain disconnected") != std::string::npos);

  cfg["collocation"] = {{"outer_only", true}};
  r = box.run("green", cfg);
  CHECK_MESSAGE(r.code == 0, r.err);
}

TEST_CASE("blaschke: convergent and critical weights on the segment") {
  Sandbox box("blaschke");
  const Json cfg = {{"set", {{"type", "segment"}, {"a", {0, 0}}, {"b", {1, 0}}}},
                    {"weights",
                     {{{"name", "two_exponent"}, {"q", 2}, {"eps", 0.5}}, {{"name", "two_exponent"}, {"q", 2}, {"eps", 0}}}},
                    {"products", {{"zeros", {{0.5, 0.5}, {2, 1}}}, {"q", 1.5}, {"grid", grid(-1, 2, 32)}}}};
  const auto r = box.run("blaschke", cfg);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto s = box.json("blaschke.json");
  CHECK(s["weights"][0]["classification"] == "Convergent");
  CHECK(s["weights"][1]["near"]["classification"] == "Divergent(log)");
  CHECK(s["weights"][1]["far"]["classification"] == "Divergent(log)");
  CHECK(fs::exists(box.path("out/product.json")));
  CHECK(box.rows("log_abs_f.csv").size() > 1);
}

TEST_CASE("spectra: commuting fixture and random pairs in a short suite") {
  Sandbox box("spectra");
  const Json cfg = {{"suites", {{{"type", "kato"}, {"seeds", 5}, {"n", 8}}}}};
  const auto r = box.run("spectra", cfg);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto s = box.json("spectra.json");
  CHECK(s["suites"][0]["max_ratio_le_1"] == true);
  const auto rows = box.rows("kato.csv");
  REQUIRE(rows.size() == 1 + 3 + 5 * 3);
  CHECK(rows[1].rfind("suite0,commuting,", 0) == 0);
  CHECK(std::abs(std::stod(rows[1].substr(rows[1].rfind(',') + 1)) - 1.0) <= 1e-12);
}

TEST_CASE("outputs are deterministic and carry the config hash") {
  Sandbox box("determinism");
  const Json cfg = {{"suites", {{{"type", "kato"}, {"seeds", 3}, {"n", 6}}}}};
  REQUIRE(box.run("spectra", cfg, {}, "a").code == 0);
  REQUIRE(box.run("spectra", cfg, {}, "b").code == 0);
  CHECK(io::read_file(box.path("a/kato.csv")) == io::read_file(box.path("b/kato.csv")));

  REQUIRE(box.run("spectra", cfg, {"--seed", "9"}, "c").code == 0);
  CHECK(box.rows("kato.csv", "a") != box.rows("kato.csv", "c"));
  const auto meta_a = box.json("spectra.json", "a")["meta"];
  const auto meta_c = box.json("spectra.json", "c")["meta"];
  CHECK(meta_c["config"]["seed"] == 9);
  CHECK(meta_a["config_hash"] != meta_c["config_hash"]);
  CHECK(io::read_file(box.path("a/kato.csv")).find(meta_a["config_hash"].get<std::string>()) != std::string::npos);
  CHECK_FALSE(meta_a.contains("timestamp"));

  REQUIRE(box.run("spectra", cfg, {"--stamp"}, "d").code == 0);
  CHECK(box.json("spectra.json", "d")["meta"].contains("timestamp"));
}
