#include "slitpath/cli/commands.hpp"

#include "slitpath/cli/config.hpp"
#include "slitpath/cli/output.hpp"
#include "slitpath/errors.hpp"
#include "slitpath/parallel.hpp"
#include "slitpath/paths.hpp"
#include "slitpath/scenario.hpp"
#include "slitpath/sweep.hpp"
#include "slitpath/uncertainty.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace slitpath::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

/// Numeric results are not finite.
struct NonFinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Config is schema-valid but not usable by this subcommand.
struct Unusable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json number_or_null(std::optional<double> v) {
  return v ? json(*v) : json(nullptr);
}

json issues_json(const ValidationReport& report) {
  json issues = json::array();
  for (const auto& i : report.issues) {
    issues.push_back({{"severity", i.severity == Severity::error ? "error" : "warning"},
                      {"code", i.code},
                      {"message", i.message}});
  }
  return issues;
}

void require_finite(const std::vector<double>& values, const char* what) {
  for (double v : values)
    if (!std::isfinite(v)) throw NonFinite(std::string("non-finite value in ") + what);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NonFinite(std::string("non-finite value in ") + what);
}

struct Loaded {
  RunConfig config;
  Particle particle;
  ValidationReport report;
};

Loaded load_and_validate(const CommandOptions& options) {
  Loaded l{load_config(options.config_path), {}, {}};
  if (options.seed && l.config.paths) l.config.paths->seed = *options.seed;
  if (options.out_dir) l.config.output.directory = options.out_dir->string();
  l.particle = l.config.particle();
  l.report = validate(l.config.apparatus, l.config.detector, l.particle);
  if (!l.report.ok) throw ValidationError(l.report);
  return l;
}

void print_issues(const ValidationReport& report, std::ostream& err) {
  for (const auto& i : report.issues) {
    err << (i.severity == Severity::error ? "error" : "warning") << ": [" << i.code << "] " << i.message << '\n';
  }
}

/// Runs `body` and maps failures onto the documented exit codes.
int guarded(const CommandOptions& options, std::ostream& err, const std::function<int()>& body) {
  try {
    if (options.threads) {
      if (*options.threads == 0) {
        err << "error: --threads must be at least 1\n";
        return exit_code::usage;
      }
      set_worker_count(*options.threads);
    }
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const Unusable& e) {
    err << "config error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const ValidationError& e) {
    err << "validation failed:\n";
    print_issues(e.report(), err);
    return exit_code::physics;
  } catch (const NonFinite& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_code::numerical;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_code::numerical;
  } catch (const fs::filesystem_error& e) {
    err << "cannot write artifacts: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const DegenerateInput& e) {
    err << "validation failed: " << e.what() << '\n';
    return exit_code::physics;
  } catch (const std::invalid_argument& e) {
    err << "validation failed: " << e.what() << '\n';
    return exit_code::physics;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
}

void publish(const ArtifactSet& artifacts, std::ostream& out) {
  for (const auto& p : artifacts.commit()) out << p.string() << '\n';
}

json onset_json(const OnsetReport& r) {
  return {{"onset_side", std::string(to_string(r.onset_side))},
          {"visibility_centroid_x", r.visibility_centroid_x},
          {"asymmetry_index", r.asymmetry_index}};
}

// ---- simulate ---------------------------------------------------------------

int simulate(const CommandOptions& options, std::ostream& out) {
  const auto [cfg, particle, report] = load_and_validate(options);
  const auto& app = cfg.apparatus;
  const auto& det = cfg.detector;
  const auto& settings = cfg.analysis;

  const auto two = two_slit_amplitude(app, particle);
  const auto i_two = intensity(two.field, true);
  IntensityProfile i_null = i_two, i_det = i_two, i_comb = i_two, i_kick = i_two;

  json summary;
  summary["command"] = "simulate";
  summary["validation"] = {{"ok", report.ok}, {"issues", issues_json(report)}};
  summary["particle"] = {{"mass", particle.mass},
                         {"kinetic_energy", particle.kinetic_energy},
                         {"momentum", particle.momentum},
                         {"velocity", particle.velocity},
                         {"de_broglie_wavelength", particle.de_broglie_wavelength}};
  summary["separation_d"] = app.separation();
  summary["detector_enabled"] = det.enabled;

  std::optional<double> spacing;
  try {
    spacing = fringe_spacing(i_two);
  } catch (const NoFringes&) {
  }
  summary["fringe_spacing"] = {{"measured", number_or_null(spacing)},
                               {"far_field", particle.de_broglie_wavelength * app.L2 / app.separation()}};

  json vis;
  vis["no_detector"] = visibility(i_two, settings.central_window);

  if (det.enabled) {
    const auto null = null_channel_amplitude(app, det, particle);
    const auto detected = detected_channel_amplitude(app, det, particle);
    const double p_det = detection_probability(app, det, particle);
    i_null = intensity(null.field, true);
    i_det = intensity(detected.field, true);
    i_comb = combined_intensity(null, detected, p_det);
    i_kick = kick_reference_intensity(app, det, particle);

    vis["null"] = visibility(i_null, settings.central_window);
    vis["detected"] = visibility(i_det, settings.central_window);
    vis["combined"] = visibility(i_comb, settings.central_window);
    vis["kick_reference"] = visibility(i_kick, settings.central_window);
    summary["visibility"] = vis;
    summary["p_det"] = p_det;
    summary["kick_coherence"] = kick_coherence(app.separation(), det.photon_wavelength);

    const auto cw = crossing_window(app, det);
    summary["crossing_window"] = {{"screen_lo", cw.screen_lo}, {"screen_hi", cw.screen_hi}};

    const auto one_a = intensity(one_slit_amplitude(app, particle, Slit::A).field, true);
    const auto baseline = intensity(detected_channel_amplitude(app, det, particle, {.include_captured_a = false}).field, true);
    summary["onset"] = {
        {"null", onset_json(onset_metrics(i_null, one_a, settings.local_window_width, settings.onset_threshold))},
        {"detected", onset_json(onset_metrics(i_det, baseline, settings.local_window_width, settings.onset_threshold))}};
  } else {
    summary["visibility"] = vis;
    summary["p_det"] = nullptr;
    summary["kick_coherence"] = nullptr;
    summary["crossing_window"] = nullptr;
    summary["onset"] = nullptr;
  }

  const std::array<const IntensityProfile*, 5> columns{&i_two, &i_null, &i_det, &i_comb, &i_kick};
  for (const auto* p : columns) require_finite(p->values, "screen intensity");
  for (const auto& [k, v] : summary["visibility"].items()) require_finite(v.get<double>(), "visibility");

  ArtifactSet artifacts(cfg.output.directory);
  const auto xs = i_two.grid.coordinates();
  if (cfg.output.emit_csv) {
    std::string csv = "x_bohr,I_no_detector,I_null,I_detected,I_combined,I_kick_reference\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      csv += format_number(xs[i]);
      for (const auto* p : columns) {
        csv += ',';
        csv += format_number(p->values[i]);
      }
      csv += '\n';
    }
    artifacts.add("intensity.csv", std::move(csv));
  }
  if (cfg.output.emit_json) artifacts.add("summary.json", summary.dump(2) + "\n");
  if (cfg.output.emit_svg) {
    std::vector<PlotSeries> series{{"no detector", i_two.values}};
    if (det.enabled) {
      series.push_back({"null", i_null.values});
      series.push_back({"detected", i_det.values});
      series.push_back({"combined", i_comb.values});
      series.push_back({"kick reference", i_kick.values});
    }
    artifacts.add("intensity.svg", line_plot_svg("screen intensity", "x (bohr)", xs, series));
  }
  publish(artifacts, out);
  return exit_code::ok;
}

// ---- sweep ------------------------------------------------------------------

int sweep(const CommandOptions& options, std::ostream& out) {
  const auto [cfg, particle, report] = load_and_validate(options);
  if (!cfg.d_values) throw Unusable("sweep.d_values: required by the sweep command");
  if (cfg.d_values->size() < 2) throw Unusable("sweep.d_values: needs at least 2 entries");
  if (!cfg.detector.enabled) throw Unusable("detector.enabled: the sweep command needs the detector");

  const auto table = sweep_interslit(cfg.apparatus, cfg.detector, particle, *cfg.d_values, cfg.analysis);

  std::string csv =
      "d,d_over_lambda_ph,visibility_null,visibility_det,visibility_combined,visibility_kick_reference,"
      "centroid_null,asymmetry_det,p_det\n";
  std::optional<double> onset_d;
  std::optional<std::size_t> onset_row;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    const std::array<double, 9> v{r.d,
                                  r.d_over_lambda_ph,
                                  r.visibility_null,
                                  r.visibility_det,
                                  r.visibility_combined,
                                  r.visibility_kick_reference,
                                  r.centroid_null,
                                  r.asymmetry_det,
                                  r.p_det};
    for (std::size_t k = 0; k < v.size(); ++k) {
      require_finite(v[k], "sweep row");
      if (k) csv += ',';
      csv += format_number(v[k]);
    }
    csv += '\n';
    if (!onset_d && r.visibility_combined > cfg.analysis.onset_threshold) {
      onset_d = r.d;
      onset_row = i;
    }
  }

  json digest;
  digest["command"] = "sweep";
  digest["rows"] = table.rows.size();
  digest["onset_threshold"] = cfg.analysis.onset_threshold;
  digest["onset_d"] = number_or_null(onset_d);
  digest["onset_row"] = onset_row ? json(*onset_row) : json(nullptr);
  digest["onset_d_over_lambda_ph"] =
      onset_d ? json(*onset_d / cfg.detector.photon_wavelength) : json(nullptr);
  digest["validation"] = {{"ok", report.ok}, {"issues", issues_json(report)}};

  ArtifactSet artifacts(cfg.output.directory);
  if (cfg.output.emit_csv) artifacts.add("sweep.csv", std::move(csv));
  if (cfg.output.emit_json) artifacts.add("sweep_digest.json", digest.dump(2) + "\n");
  publish(artifacts, out);
  return exit_code::ok;
}

// ---- paths ------------------------------------------------------------------

struct NamedBundle {
  std::string name;
  PathBundle bundle;
  bool a_side = false;
  bool b_side = false;
};

int paths(const CommandOptions& options, std::ostream& out) {
  const auto [cfg, particle, report] = load_and_validate(options);
  if (!cfg.paths) throw Unusable("paths: section required by the paths command");
  const auto& settings = *cfg.paths;
  const auto& app = cfg.apparatus;
  const auto& det = cfg.detector;
  const double v = particle.velocity;

  auto event = [v](double x, double z) { return SpacetimeEvent{x, z, z / v}; };
  const SpacetimeEvent source = event(app.source_x, 0.0);
  const SpacetimeEvent slit_a = event(app.slit_A_center, app.L1);
  const SpacetimeEvent slit_b = event(app.slit_B_center, app.L1);
  const double z_screen = app.L1 + app.L2;
  const double span = app.screen_max - app.screen_min;
  const double centre = 0.5 * (app.screen_min + app.screen_max);
  const std::array<double, 3> targets{centre - span / 4.0, centre, centre + span / 4.0};

  std::vector<NamedBundle> bundles;
  std::uint64_t stream = 0;
  auto sample = [&](const SpacetimeEvent& a, const SpacetimeEvent& b) {
    return sample_bundle(a, b, settings.n_paths, settings.n_slices, particle, settings.seed + stream++);
  };

  bundles.push_back({"S->A", sample(source, slit_a), true, false});
  if (det.enabled) {
    // B-bound packets end at the interaction site and are cut at the disc.
    const SpacetimeEvent site = event(app.slit_B_center, app.L1 + det.depth_epsilon);
    bundles.push_back(
        {"S->B", truncate_bundle(sample(source, site), site.x, site.z, det.radius_rho), false, true});
  } else {
    bundles.push_back({"S->B", sample(source, slit_b), false, true});
  }
  for (std::size_t k = 0; k < targets.size(); ++k) {
    bundles.push_back({"A->D" + std::to_string(k), sample(slit_a, event(targets[k], z_screen)), true, false});
  }
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (det.enabled) {
      // Re-emission after detection: a separate history, not counted against A.
      const SpacetimeEvent site = event(app.slit_B_center, app.L1 + det.depth_epsilon);
      bundles.push_back({"C->D" + std::to_string(k), sample(site, event(targets[k], z_screen)), false, false});
    } else {
      bundles.push_back({"B->D" + std::to_string(k), sample(slit_b, event(targets[k], z_screen)), false, true});
    }
  }

  std::string csv = "bundle_id,path_id,point_index,z_bohr,x_bohr,truncated\n";
  json listing = json::array();
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    std::size_t truncated = 0;
    for (std::size_t p = 0; p < bundles[b].bundle.paths.size(); ++p) {
      const auto& path = bundles[b].bundle.paths[p];
      truncated += path.truncated ? 1 : 0;
      for (std::size_t i = 0; i < path.events.size(); ++i) {
        require_finite(path.events[i].x, "path event");
        csv += std::to_string(b) + ',' + std::to_string(p) + ',' + std::to_string(i) + ',' +
               format_number(path.events[i].z) + ',' + format_number(path.events[i].x) + ',' +
               (path.truncated ? "true" : "false") + '\n';
      }
    }
    listing.push_back({{"bundle_id", b},
                       {"name", bundles[b].name},
                       {"side", bundles[b].a_side ? "A" : bundles[b].b_side ? "B" : "post_detection"},
                       {"paths", bundles[b].bundle.paths.size()},
                       {"truncated_paths", truncated}});
  }

  json pairs = json::array();
  std::size_t total = 0, behind = 0;
  for (const auto& a : bundles) {
    if (!a.a_side) continue;
    for (const auto& b : bundles) {
      if (!b.b_side) continue;
      const auto result = crossing_count(a.bundle, b.bundle);
      std::size_t past_barrier = 0;
      for (const auto& e : result.events) past_barrier += e.z > app.L1 ? 1 : 0;
      total += result.count;
      behind += past_barrier;
      pairs.push_back({{"a", a.name}, {"b", b.name}, {"count", result.count}, {"behind_barrier", past_barrier}});
    }
  }

  json summary;
  summary["command"] = "paths";
  summary["seed"] = settings.seed;
  summary["n_paths"] = settings.n_paths;
  summary["n_slices"] = settings.n_slices;
  summary["detector_enabled"] = det.enabled;
  summary["separation_d"] = app.separation();
  summary["bundles"] = listing;
  summary["crossings"] = {{"a_vs_b_total", total}, {"a_vs_b_behind_barrier", behind}, {"pairs", pairs}};

  ArtifactSet artifacts(cfg.output.directory);
  if (cfg.output.emit_csv) artifacts.add("paths.csv", std::move(csv));
  if (cfg.output.emit_json) artifacts.add("paths.json", summary.dump(2) + "\n");
  publish(artifacts, out);
  return exit_code::ok;
}

} // namespace

int cmd_simulate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(options, err, [&] { return simulate(options, out); });
}

int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(options, err, [&] { return sweep(options, out); });
}

int cmd_paths(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(options, err, [&] { return paths(options, out); });
}

int cmd_uncertainty(double distance_D, double mass, double kinetic_energy, std::ostream& out, std::ostream& err) {
  if (!(distance_D > 0.0) || !(mass > 0.0) || !(kinetic_energy > 0.0) || !std::isfinite(distance_D) ||
      !std::isfinite(mass) || !std::isfinite(kinetic_energy)) {
    err << "error: D, mass and kinetic energy must be positive and finite\n";
    return exit_code::usage;
  }
  const auto r = packet_uncertainties(distance_D, make_particle(mass, kinetic_energy));
  json j;
  j["distance_D"] = r.distance_D;
  j["delta_p"] = r.delta_p;
  j["delta_x"] = r.delta_x;
  j["delta_E"] = r.delta_E;
  j["delta_t"] = r.delta_t;
  out << j.dump(2) << '\n';
  return exit_code::ok;
}

} // namespace slitpath::cli
