#include "app.hpp"

#include <CLI11.hpp>
#include <functional>
#include <map>

#include "commands.hpp"

namespace rconvex::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"r-convexity, Green function, Riesz measure and spectral experiments", "rconvex"};
  app.require_subcommand(1);
  std::string config_path;
  RunOptions opts;
  std::string out_dir = ".";
  long long seed = 0;

  using Command = std::function<RunResult(Json, const RunOptions&)>;
  const std::map<std::string, std::pair<Command, std::string>> commands = {
      {"geometry", {cmd_geometry, "convexity radius, hulls and connectivity"}},
      {"green", {cmd_green, "Green function estimates at query points"}},
      {"blaschke", {cmd_blaschke, "weighted Riesz integrals and prescribed-zero products"}},
      {"spectra", {cmd_spectra, "perturbation suites for finite matrices"}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, cmd.second);
    sub->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "base seed, overrides the config");
    sub->add_flag("--stamp", opts.stamp, "add a timestamp to output headers");
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    opts.out = out_dir;
    if (sub->count("--seed")) opts.seed = seed;
    try {
      Json config;
      try {
        config = Json::parse(io::read_file(config_path));
      } catch (const Json::parse_error& e) {
        fail(ErrorKind::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
      }
      const auto result = commands.at(name).first(std::move(config), opts);
      for (const auto& f : result.files) out << f.string() << "\n";
      return 0;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code(e.kind());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 4;
    }
  }
  return 2;
}

}  // namespace rconvex::cli
