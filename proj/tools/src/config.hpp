#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rconvex/io.hpp"

namespace rconvex::cli {

using Json = nlohmann::json;

/// Typed reader over one JSON object of a config. Defaults are written back
/// into the object so the resolved config records them; finish() rejects
/// keys that were never read.
class Section {
 public:
  Section(Json& node, std::string path);

  template <class T>
  T get(const std::string& key, const T& fallback) {
    seen_.insert(key);
    if (!node_->contains(key)) (*node_)[key] = fallback;
    return convert<T>(key);
  }

  template <class T>
  T need(const std::string& key) {
    seen_.insert(key);
    require(node_->contains(key), ErrorKind::InvalidArgument, "config: missing " + where(key));
    return convert<T>(key);
  }

  bool has(const std::string& key) const { return node_->contains(key); }
  /// The raw value at a required key.
  Json& raw(const std::string& key);
  /// A required nested object.
  Section sub(const std::string& key);
  /// A nested object, created empty when absent.
  Section sub_or_empty(const std::string& key);
  void finish() const;
  std::string where(const std::string& key) const { return path_ + "." + key; }

 private:
  template <class T>
  T convert(const std::string& key) {
    try {
      return node_->at(key).get<T>();
    } catch (const Json::exception&) {
      fail(ErrorKind::InvalidArgument, "config: wrong type at " + where(key));
    }
  }

  Json* node_;
  std::string path_;
  std::set<std::string> seen_;
};

struct RunOptions {
  std::filesystem::path out = ".";
  std::optional<long long> seed;
  bool stamp = false;
};

/// Writes artefacts for one command. Every file carries the config hash,
/// module versions and the resolved config; a timestamp only with --stamp.
class Output {
 public:
  Output(const RunOptions& opts, std::string command, const Json& resolved);

  const std::string& hash() const { return hash_; }
  const std::vector<std::filesystem::path>& files() const { return files_; }

  void csv(const std::string& name, const io::CsvTable& table);
  void json(const std::string& name, Json body);
  void pgm(const std::string& name, const MaskGrid& mask);
  void mask_csv(const std::string& name, const MaskGrid& mask);

 private:
  std::vector<std::pair<std::string, std::string>> comments() const;
  void write(const std::string& name, const std::string& contents);

  std::filesystem::path dir_;
  std::string command_;
  std::string hash_;
  std::string config_;
  std::optional<std::string> stamp_;
  std::vector<std::filesystem::path> files_;
};

}  // namespace rconvex::cli
