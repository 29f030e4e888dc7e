#pragma once

#include "slitpath/apparatus.hpp"
#include "slitpath/sweep.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slitpath::cli {

/// Schema violation or unreadable config; `key_path` points at the offending key.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string key_path, const std::string& message)
      : std::runtime_error(key_path.empty() ? message : key_path + ": " + message), key_path_(std::move(key_path)) {}
  const std::string& key_path() const noexcept { return key_path_; }

private:
  std::string key_path_;
};

struct PathsSettings {
  std::size_t n_paths = 16;
  std::size_t n_slices = 16;
  std::uint64_t seed = 1;
};

struct OutputSettings {
  std::string directory = "out";
  bool emit_csv = true;
  bool emit_json = true;
  bool emit_svg = false;
};

struct RunConfig {
  double mass = 1.0;
  double kinetic_energy = 1.0;
  Apparatus apparatus;
  DetectorConfig detector;
  AnalysisSettings analysis;
  std::optional<std::vector<double>> d_values;
  std::optional<PathsSettings> paths;
  OutputSettings output;

  /// Particle for validation; derived fields are only filled when mass and
  /// energy are positive, so validate() can report bad values instead of
  /// make_particle() throwing.
  Particle particle() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

} // namespace slitpath::cli
