#include "slitpath/apparatus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace slitpath {

Particle make_particle(double mass, double kinetic_energy) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("particle mass must be positive and finite");
  }
  if (!(kinetic_energy > 0.0) || !std::isfinite(kinetic_energy)) {
    throw std::invalid_argument("particle kinetic energy must be positive and finite");
  }
  Particle p;
  p.mass = mass;
  p.kinetic_energy = kinetic_energy;
  p.momentum = std::sqrt(2.0 * mass * kinetic_energy);
  p.velocity = p.momentum / mass;
  p.de_broglie_wavelength = 2.0 * std::numbers::pi / p.momentum;
  return p;
}

double Apparatus::width(Slit s) const noexcept {
  const auto& w = s == Slit::A ? slit_A_width : slit_B_width;
  return w.value_or(slit_width);
}

std::pair<double, double> Apparatus::aperture(Slit s) const noexcept {
  const double c = center(s);
  const double half = 0.5 * width(s);
  return {c - half, c + half};
}

Apparatus Apparatus::with_separation(double d) const {
  Apparatus out = *this;
  const double mid = 0.5 * (slit_A_center + slit_B_center);
  out.slit_A_center = mid - 0.5 * d;
  out.slit_B_center = mid + 0.5 * d;
  return out;
}

DetectorConfig DetectorConfig::with_defaults(double photon_wavelength) {
  DetectorConfig d;
  d.enabled = true;
  d.photon_wavelength = photon_wavelength;
  d.radius_rho = photon_wavelength;
  d.depth_epsilon = photon_wavelength;
  return d;
}

bool ValidationReport::has(std::string_view code) const {
  for (const auto& i : issues) {
    if (i.code == code) return true;
  }
  return false;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& i : issues) {
    os << (i.severity == Severity::error ? "error" : "warning") << " [" << i.code
       << "]: " << i.message << '\n';
  }
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::invalid_argument("invalid configuration:\n" + report.summary()),
      report_(std::move(report)) {}

namespace {

class ReportBuilder {
public:
  void error(std::string code, std::string message) {
    report_.ok = false;
    report_.issues.push_back({Severity::error, std::move(code), std::move(message)});
  }
  void warning(std::string code, std::string message) {
    report_.issues.push_back({Severity::warning, std::move(code), std::move(message)});
  }
  void require_positive(double v, const char* code, const char* what) {
    if (!std::isfinite(v) || !(v > 0.0)) error(code, std::string(what) + " must be positive and finite");
  }
  bool ok() const noexcept { return report_.ok; }
  ValidationReport take() { return std::move(report_); }

private:
  ValidationReport report_;
};

bool all_finite(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

} // namespace

ValidationReport validate(const Apparatus& app, const DetectorConfig& det, const Particle& particle) {
  ReportBuilder r;

  r.require_positive(particle.mass, "bad_mass", "particle mass");
  r.require_positive(particle.kinetic_energy, "bad_energy", "particle kinetic energy");

  if (!all_finite({app.source_x, app.slit_A_center, app.slit_B_center, app.screen_min, app.screen_max})) {
    r.error("non_finite", "apparatus coordinates must be finite");
  }
  r.require_positive(app.L1, "bad_L1", "L1 (source to barrier)");
  r.require_positive(app.L2, "bad_L2", "L2 (barrier to screen)");
  r.require_positive(app.slit_width, "bad_slit_width", "slit width");
  for (Slit s : {Slit::A, Slit::B}) {
    const double w = app.width(s);
    if (!std::isfinite(w) || w < 0.0) {
      r.error("bad_slit_width", std::string("slit ") + (s == Slit::A ? "A" : "B") +
                                    " width must be non-negative and finite");
    }
  }
  const auto [a_lo, a_hi] = app.aperture(Slit::A);
  const auto [b_lo, b_hi] = app.aperture(Slit::B);
  if (!(app.separation() > app.slit_width) || !(b_lo > a_hi)) {
    r.error("slits_overlap", "slits overlap: separation d must exceed the slit width");
  }
  if (!(app.screen_min < app.screen_max)) r.error("bad_screen", "screen_min must be below screen_max");
  if (app.screen_samples < 2) r.error("bad_screen", "screen_samples must be at least 2");
  if (app.aperture_samples < 1) r.error("bad_aperture_samples", "aperture_samples must be positive");

  if (det.enabled) {
    r.require_positive(det.photon_wavelength, "bad_photon_wavelength", "photon wavelength");
    r.require_positive(det.radius_rho, "bad_radius", "detector radius rho");
    r.require_positive(det.depth_epsilon, "bad_depth", "detector depth epsilon");
    if (std::isfinite(det.depth_epsilon) && std::isfinite(app.L2) && !(det.depth_epsilon < app.L2)) {
      r.error("bad_depth", "detector depth epsilon must be smaller than L2");
    }
    if (det.detection_probability_override) {
      const double p = *det.detection_probability_override;
      if (!(p >= 0.0 && p <= 1.0)) {
        r.error("bad_override", "detection probability override must lie in [0, 1]");
      }
    }
    if (det.disc_samples < 2) r.error("bad_disc_samples", "disc_samples must be at least 2");
  }

  if (!r.ok()) return r.take();

  const double lambda = particle.de_broglie_wavelength;
  const double w_max = std::max(app.width(Slit::A), app.width(Slit::B));
  const double spacing = w_max / static_cast<double>(app.aperture_samples);
  const double span = (app.screen_max - app.screen_min) + (b_hi - a_lo);
  const double spacing_bound = lambda * app.L2 / (2.0 * span);
  if (spacing > spacing_bound) {
    std::ostringstream os;
    os << "aliasing risk: aperture sample spacing " << spacing << " exceeds " << spacing_bound
       << " bohr";
    r.warning("aliasing_risk", os.str());
  }
  if (det.enabled && det.radius_rho < 0.5 * app.width(Slit::B)) {
    r.warning("detector_not_covering", "detector does not cover slit B (radius_rho < width/2)");
  }
  const double fresnel = w_max * w_max / (lambda * app.L2);
  if (fresnel > 0.1) {
    std::ostringstream os;
    os << "far-field oracle inapplicable: Fresnel number " << fresnel << " > 0.1";
    r.warning("near_field", os.str());
  }
  return r.take();
}

} // namespace slitpath

namespace slitpath {

void require_valid(const Apparatus& apparatus, const DetectorConfig& detector, const Particle& particle) {
  auto report = validate(apparatus, detector, particle);
  if (!report.ok) throw ValidationError(std::move(report));
}

} // namespace slitpath
