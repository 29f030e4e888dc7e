#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slitpath {

/// Free particle kinematics. Construct through make_particle().
struct Particle {
  double mass = 1.0;
  double kinetic_energy = 0.5;
  double momentum = 1.0;
  double velocity = 1.0;
  double de_broglie_wavelength = 0.0;
};

/// Builds a particle from mass and kinetic energy (atomic units).
/// Throws std::invalid_argument unless both are positive and finite.
Particle make_particle(double mass, double kinetic_energy);

enum class Slit { A, B };

/// Source / barrier / screen geometry. Transverse coordinate x, longitudinal z.
/// The source sits at z = 0, the barrier at z = L1 and the screen at z = L1 + L2.
struct Apparatus {
  double source_x = 0.0;
  double L1 = 1.0;
  double L2 = 1.0;
  double slit_A_center = -1.0;
  double slit_B_center = 1.0;
  double slit_width = 0.1;
  // Per-slit widths; both default to slit_width. A width of zero closes the slit.
  std::optional<double> slit_A_width;
  std::optional<double> slit_B_width;
  double screen_min = -1.0;
  double screen_max = 1.0;
  std::size_t screen_samples = 256;
  std::size_t aperture_samples = 64;

  double separation() const noexcept { return slit_B_center - slit_A_center; }
  double center(Slit s) const noexcept { return s == Slit::A ? slit_A_center : slit_B_center; }
  double width(Slit s) const noexcept;
  std::pair<double, double> aperture(Slit s) const noexcept;
  /// Same apparatus with the slits moved to separation d about their midpoint.
  Apparatus with_separation(double d) const;
};

struct DetectorConfig {
  bool enabled = false;
  double photon_wavelength = 1.0;
  double radius_rho = 1.0;
  double depth_epsilon = 1.0;
  std::optional<double> detection_probability_override;
  /// Samples across the interaction disc [x_B - rho, x_B + rho].
  std::size_t disc_samples = 2048;

  /// Enabled detector with rho = photon wavelength and epsilon = rho.
  static DetectorConfig with_defaults(double photon_wavelength);
};

enum class Severity { warning, error };

struct ValidationIssue {
  Severity severity;
  std::string code;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;

  bool has(std::string_view code) const;
  std::string summary() const;
};

ValidationReport validate(const Apparatus& apparatus, const DetectorConfig& detector,
                          const Particle& particle);

/// Thrown by downstream operations when validate() reports errors.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

private:
  ValidationReport report_;
};

/// Throws ValidationError if the configuration has error-severity issues.
void require_valid(const Apparatus& apparatus, const DetectorConfig& detector,
                   const Particle& particle);

} // namespace slitpath
