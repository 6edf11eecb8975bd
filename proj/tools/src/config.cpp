#include "config.hpp"

#include <chrono>
#include <ctime>

namespace rconvex::cli {

Section::Section(Json& node, std::string path) : node_(&node), path_(std::move(path)) {
  require(node.is_object(), ErrorKind::InvalidArgument, "config: " + path_ + " must be an object");
}

Json& Section::raw(const std::string& key) {
  seen_.insert(key);
  require(node_->contains(key), ErrorKind::InvalidArgument, "config: missing " + where(key));
  return node_->at(key);
}

Section Section::sub(const std::string& key) { return Section(raw(key), where(key)); }

Section Section::sub_or_empty(const std::string& key) {
  seen_.insert(key);
  if (!node_->contains(key)) (*node_)[key] = Json::object();
  return Section(node_->at(key), where(key));
}

void Section::finish() const {
  for (const auto& [key, value] : node_->items())
    require(seen_.count(key) > 0, ErrorKind::InvalidArgument, "config: unknown key " + where(key));
}

Output::Output(const RunOptions& opts, std::string command, const Json& resolved)
    : dir_(opts.out), command_(std::move(command)), config_(resolved.dump()) {
  hash_ = io::hex64(io::fnv1a64(command_ + "\n" + config_));
  if (opts.stamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    stamp_ = buf;
  }
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  require(!ec, ErrorKind::InvalidArgument, "cannot create output directory " + dir_.string());
}

std::vector<std::pair<std::string, std::string>> Output::comments() const {
  std::string versions;
  const Json modules = io::module_versions();
  for (const auto& [k, v] : modules.items()) versions += (versions.empty() ? "" : " ") + k + "=" + v.get<std::string>();
  std::vector<std::pair<std::string, std::string>> c = {
      {"command", command_}, {"config_hash", hash_}, {"versions", versions}, {"config", config_}};
  if (stamp_) c.emplace_back("timestamp", *stamp_);
  return c;
}

void Output::write(const std::string& name, const std::string& contents) {
  const auto path = dir_ / name;
  io::write_atomic(path, contents);
  files_.push_back(path);
}

void Output::csv(const std::string& name, const io::CsvTable& table) { write(name, table.render(comments())); }

void Output::json(const std::string& name, Json body) {
  Json meta = {{"command", command_},
               {"config_hash", hash_},
               {"versions", io::module_versions()},
               {"config", Json::parse(config_)}};
  if (stamp_) meta["timestamp"] = *stamp_;
  body["meta"] = meta;
  write(name, body.dump(2) + "\n");
}

void Output::pgm(const std::string& name, const MaskGrid& mask) {
  std::string img = io::mask_to_pgm(mask);
  std::string header = "P5\n";
  for (const auto& [k, v] : comments())
    if (k != "config") header += "# " + k + ": " + v + "\n";
  write(name, header + img.substr(3));
}

void Output::mask_csv(const std::string& name, const MaskGrid& mask) {
  std::string text;
  for (const auto& [k, v] : comments()) text += "# " + k + ": " + v + "\n";
  write(name, text + io::mask_to_csv(mask));
}

}  // namespace rconvex::cli
