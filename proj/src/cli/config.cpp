#include "slitpath/cli/config.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

namespace slitpath::cli {

namespace {

using nlohmann::json;

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) throw ConfigError(join(where, key), "unknown key");
  }
}

double number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw ConfigError(join(where, key), "missing required key");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(where, key), "expected a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return number(obj, where, key);
}

std::uint64_t unsigned_integer(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw ConfigError(join(where, key), "missing required key");
  const auto& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw ConfigError(join(where, key), "expected a non-negative integer");
}

bool boolean(const json& obj, const std::string& where, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(join(where, key), "expected true or false");
  return v.get<bool>();
}

const json& section(const json& root, const char* key) {
  if (!root.contains(key)) throw ConfigError(key, "missing required section");
  return root.at(key);
}

void parse_particle(const json& j, RunConfig& cfg) {
  reject_unknown(j, "particle", {"mass", "kinetic_energy"});
  cfg.mass = number(j, "particle", "mass");
  cfg.kinetic_energy = number(j, "particle", "kinetic_energy");
}

void parse_apparatus(const json& j, RunConfig& cfg) {
  const std::string w = "apparatus";
  reject_unknown(j, w,
                 {"source_x", "L1", "L2", "slit_A_center", "slit_B_center", "slit_width", "slit_A_width",
                  "slit_B_width", "screen_min", "screen_max", "screen_samples", "aperture_samples"});
  auto& a = cfg.apparatus;
  a.source_x = j.contains("source_x") ? number(j, w, "source_x") : 0.0;
  a.L1 = number(j, w, "L1");
  a.L2 = number(j, w, "L2");
  a.slit_A_center = number(j, w, "slit_A_center");
  a.slit_B_center = number(j, w, "slit_B_center");
  a.slit_width = number(j, w, "slit_width");
  a.slit_A_width = optional_number(j, w, "slit_A_width");
  a.slit_B_width = optional_number(j, w, "slit_B_width");
  a.screen_min = number(j, w, "screen_min");
  a.screen_max = number(j, w, "screen_max");
  a.screen_samples = unsigned_integer(j, w, "screen_samples");
  a.aperture_samples = j.contains("aperture_samples") ? unsigned_integer(j, w, "aperture_samples") : 64;
}

void parse_detector(const json& j, RunConfig& cfg) {
  const std::string w = "detector";
  reject_unknown(j, w,
                 {"enabled", "photon_wavelength", "radius_rho", "depth_epsilon", "detection_probability_override",
                  "disc_samples"});
  auto& d = cfg.detector;
  d.enabled = boolean(j, w, "enabled", true);
  if (j.contains("photon_wavelength")) {
    d.photon_wavelength = number(j, w, "photon_wavelength");
  } else if (d.enabled) {
    throw ConfigError("detector.photon_wavelength", "missing required key");
  }
  d.radius_rho = optional_number(j, w, "radius_rho").value_or(d.photon_wavelength);
  d.depth_epsilon = optional_number(j, w, "depth_epsilon").value_or(d.radius_rho);
  d.detection_probability_override = optional_number(j, w, "detection_probability_override");
  if (j.contains("disc_samples")) d.disc_samples = unsigned_integer(j, w, "disc_samples");
}

void parse_analysis(const json* j, RunConfig& cfg) {
  const auto& a = cfg.apparatus;
  const double span = a.screen_max - a.screen_min;
  const double centre = 0.5 * (a.screen_min + a.screen_max);
  auto& s = cfg.analysis;
  s.central_window = {centre - span / 6.0, centre + span / 6.0};
  s.local_window_width = span / 6.0;
  s.onset_threshold = kDefaultOnsetThreshold;
  if (j == nullptr) return;

  const std::string w = "analysis";
  reject_unknown(*j, w, {"central_window", "local_window_width", "onset_threshold"});
  if (j->contains("central_window")) {
    const auto& cw = j->at("central_window");
    if (!cw.is_array() || cw.size() != 2 || !cw[0].is_number() || !cw[1].is_number()) {
      throw ConfigError("analysis.central_window", "expected [lo, hi]");
    }
    s.central_window = {cw[0].get<double>(), cw[1].get<double>()};
    if (!(s.central_window.lo < s.central_window.hi)) {
      throw ConfigError("analysis.central_window", "lo must be below hi");
    }
  }
  if (j->contains("local_window_width")) s.local_window_width = number(*j, w, "local_window_width");
  if (j->contains("onset_threshold")) s.onset_threshold = number(*j, w, "onset_threshold");
}

void parse_sweep(const json& j, RunConfig& cfg) {
  reject_unknown(j, "sweep", {"d_values"});
  if (!j.contains("d_values")) return;
  const auto& v = j.at("d_values");
  if (!v.is_array()) throw ConfigError("sweep.d_values", "expected an array of numbers");
  std::vector<double> ds;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError("sweep.d_values[" + std::to_string(i) + "]", "expected a number");
    ds.push_back(v[i].get<double>());
  }
  cfg.d_values = std::move(ds);
}

void parse_paths(const json& j, RunConfig& cfg) {
  reject_unknown(j, "paths", {"n_paths", "n_slices", "seed"});
  PathsSettings p;
  if (j.contains("n_paths")) p.n_paths = unsigned_integer(j, "paths", "n_paths");
  if (j.contains("n_slices")) p.n_slices = unsigned_integer(j, "paths", "n_slices");
  if (j.contains("seed")) p.seed = unsigned_integer(j, "paths", "seed");
  if (p.n_paths < 1) throw ConfigError("paths.n_paths", "must be at least 1");
  if (p.n_slices < 1) throw ConfigError("paths.n_slices", "must be at least 1");
  cfg.paths = p;
}

void parse_output(const json& j, RunConfig& cfg) {
  reject_unknown(j, "output", {"directory", "emit_csv", "emit_json", "emit_svg"});
  auto& o = cfg.output;
  if (j.contains("directory")) {
    if (!j.at("directory").is_string()) throw ConfigError("output.directory", "expected a string");
    o.directory = j.at("directory").get<std::string>();
  }
  o.emit_csv = boolean(j, "output", "emit_csv", o.emit_csv);
  o.emit_json = boolean(j, "output", "emit_json", o.emit_json);
  o.emit_svg = boolean(j, "output", "emit_svg", o.emit_svg);
}

} // namespace

Particle RunConfig::particle() const {
  if (mass > 0.0 && kinetic_energy > 0.0 && std::isfinite(mass) && std::isfinite(kinetic_energy)) {
    return make_particle(mass, kinetic_energy);
  }
  Particle p;
  p.mass = mass;
  p.kinetic_energy = kinetic_energy;
  p.momentum = p.velocity = p.de_broglie_wavelength = std::numeric_limits<double>::quiet_NaN();
  return p;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }
  reject_unknown(root, "", {"particle", "apparatus", "detector", "analysis", "sweep", "paths", "output"});

  RunConfig cfg;
  parse_particle(section(root, "particle"), cfg);
  parse_apparatus(section(root, "apparatus"), cfg);
  if (root.contains("detector")) parse_detector(root.at("detector"), cfg);
  parse_analysis(root.contains("analysis") ? &root.at("analysis") : nullptr, cfg);
  if (root.contains("sweep")) parse_sweep(root.at("sweep"), cfg);
  if (root.contains("paths")) parse_paths(root.at("paths"), cfg);
  if (root.contains("output")) parse_output(root.at("output"), cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

} // namespace slitpath::cli
