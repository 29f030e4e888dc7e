#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace slitpath::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 2;      ///< unreadable file, schema violation, bad argument
inline constexpr int physics = 3;    ///< configuration fails physical validation
inline constexpr int numerical = 4;  ///< NaN or Inf in a result
} // namespace exit_code

struct CommandOptions {
  std::filesystem::path config_path;
  std::optional<std::filesystem::path> out_dir;  ///< overrides output.directory
  std::optional<std::uint64_t> seed;             ///< overrides paths.seed
  std::optional<std::size_t> threads;
};

/// Channel intensities on the screen plus a summary.
///   intensity.csv  x_bohr,I_no_detector,I_null,I_detected,I_combined,I_kick_reference
///   summary.json   visibilities, fringe spacing, p_det, onset reports, validation issues
/// With the detector disabled every detector column repeats I_no_detector.
int cmd_simulate(const CommandOptions& options, std::ostream& out, std::ostream& err);

/// sweep.csv (one row per sweep.d_values entry) and sweep_digest.json.
int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err);

/// paths.csv polylines and paths.json crossing counts.
int cmd_paths(const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Prints the packet uncertainty report as JSON on `out`.
int cmd_uncertainty(double distance_D, double mass, double kinetic_energy, std::ostream& out, std::ostream& err);

} // namespace slitpath::cli
