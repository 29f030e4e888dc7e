#include "slitpath/scenario.hpp"

#include "slitpath/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slitpath {

std::string_view to_string(Channel c) {
  switch (c) {
  case Channel::no_detector: return "no_detector";
  case Channel::one_slit_A: return "one_slit_A";
  case Channel::one_slit_B: return "one_slit_B";
  case Channel::null_detection: return "null_detection";
  case Channel::detected_at_B: return "detected_at_B";
  case Channel::kick_reference: return "kick_reference";
  }
  return "unknown";
}

Grid screen_grid(const Apparatus& app) { return Grid{app.screen_min, app.screen_max, app.screen_samples}; }

Grid disc_grid(const Apparatus& app, const DetectorConfig& det) {
  return Grid{app.slit_B_center - det.radius_rho, app.slit_B_center + det.radius_rho, det.disc_samples};
}

namespace {

void require_detector(const DetectorConfig& det) {
  if (!det.enabled) throw InvalidState("operation requires an enabled detector");
}

void require_finite(const PlaneField& f) {
  if (!f.all_finite()) throw NumericalFailure("non-finite amplitude in " + f.z_label);
}

// Input sampling over an aperture of width `width` that keeps the kernel
// phase step below pi for every (aperture, target) pair at distance <= max_dist.
std::size_t samples_for_step(double width, double max_dist, double wavelength, double length, std::size_t base) {
  const double needed = std::ceil(2.0 * width * max_dist / (wavelength * length));
  const double capped = std::min(needed, 1.0e7);
  return std::max<std::size_t>({base, 2, static_cast<std::size_t>(capped)});
}

double max_distance(Interval a, Interval b) {
  return std::max(std::fabs(b.second - a.first), std::fabs(a.second - b.first));
}

PlaneField slit_on_screen(const Apparatus& app, const Particle& particle, Slit slit) {
  const Grid screen = screen_grid(app);
  if (app.width(slit) == 0.0) return zero_field("screen", screen);
  auto out = propagate(barrier_field(app, particle, slit, app.aperture_samples), app.L2, particle, screen, "screen");
  require_finite(out);
  return out;
}

// Carries slit `slit`'s barrier amplitude over depth epsilon onto the disc.
PlaneField slit_on_disc(const Apparatus& app, const DetectorConfig& det, const Particle& particle, Slit slit) {
  const Grid disc = disc_grid(app, det);
  check_grid(disc);
  if (app.width(slit) == 0.0) return zero_field("disc", disc);
  const auto aperture = app.aperture(slit);
  const std::size_t n = samples_for_step(app.width(slit), max_distance(aperture, {disc.min, disc.max}),
                                         particle.de_broglie_wavelength, det.depth_epsilon, app.aperture_samples);
  auto on_disc = propagate(barrier_field(app, particle, slit, n), det.depth_epsilon, particle, disc, "disc");
  const std::array<Interval, 1> open{Interval{disc.min, disc.max}};
  auto out = apply_aperture(on_disc, open);
  require_finite(out);
  return out;
}

std::vector<double> window_weights(const Grid& screen, const CrossingWindow& w) {
  const double h = screen.spacing();
  std::vector<double> weights(screen.samples);
  for (std::size_t i = 0; i < screen.samples; ++i) {
    const double x = screen.x(i);
    const double rise = std::clamp((x - w.screen_lo) / h + 0.5, 0.0, 1.0);
    const double fall = std::clamp((w.screen_hi - x) / h + 0.5, 0.0, 1.0);
    weights[i] = rise * fall;
  }
  return weights;
}

} // namespace

PlaneField barrier_field(const Apparatus& app, const Particle& particle, Slit slit, std::size_t samples) {
  const auto [lo, hi] = app.aperture(slit);
  const Grid grid{lo, hi, std::max<std::size_t>(samples, 2)};
  auto field = point_source_field(app.source_x, grid, app.L1, particle, "barrier");
  const std::array<Interval, 1> open{Interval{lo, hi}};
  return apply_aperture(field, open);
}

ChannelField two_slit_amplitude(const Apparatus& app, const Particle& particle) {
  require_valid(app, DetectorConfig{}, particle);
  auto a = slit_on_screen(app, particle, Slit::A);
  const auto b = slit_on_screen(app, particle, Slit::B);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
  return {Channel::no_detector, std::move(a), 1.0};
}

ChannelField one_slit_amplitude(const Apparatus& app, const Particle& particle, Slit slit) {
  require_valid(app, DetectorConfig{}, particle);
  return {slit == Slit::A ? Channel::one_slit_A : Channel::one_slit_B, slit_on_screen(app, particle, slit), 1.0};
}

CrossingWindow crossing_window(const Apparatus& app, const DetectorConfig& det) {
  require_detector(det);
  if (!(det.depth_epsilon > 0.0)) throw std::invalid_argument("detector depth epsilon must be positive");
  const double d = app.separation();
  CrossingWindow w;
  w.slope_lo = (d - det.radius_rho) / det.depth_epsilon;
  w.slope_hi = (d + det.radius_rho) / det.depth_epsilon;
  w.screen_lo = app.slit_A_center + w.slope_lo * app.L2;
  w.screen_hi = app.slit_A_center + w.slope_hi * app.L2;
  return w;
}

PlaneField b_stub_on_disc(const Apparatus& app, const DetectorConfig& det, const Particle& particle) {
  require_detector(det);
  require_valid(app, det, particle);
  return slit_on_disc(app, det, particle, Slit::B);
}

PlaneField a_captured_on_disc(const Apparatus& app, const DetectorConfig& det, const Particle& particle) {
  require_detector(det);
  require_valid(app, det, particle);
  const Grid disc = disc_grid(app, det);
  const double w_a = app.width(Slit::A);
  if (w_a == 0.0) return zero_field("disc", disc);

  const auto [lo, hi] = app.aperture(Slit::A);
  const double stretch = (app.L1 + det.depth_epsilon) / app.L1;
  const double spread = particle.de_broglie_wavelength * det.depth_epsilon / w_a;
  const double cone_lo = app.source_x + (lo - app.source_x) * stretch - spread;
  const double cone_hi = app.source_x + (hi - app.source_x) * stretch + spread;
  if (cone_hi < disc.min || cone_lo > disc.max) return zero_field("disc", disc);
  return slit_on_disc(app, det, particle, Slit::A);
}

ChannelField null_channel_amplitude(const Apparatus& app, const DetectorConfig& det, const Particle& particle) {
  require_detector(det);
  require_valid(app, det, particle);
  const double p_det = detection_probability(app, det, particle);
  auto psi = slit_on_screen(app, particle, Slit::A);
  psi.z_label = "screen";

  const Grid screen = screen_grid(app);
  const auto weights = window_weights(screen, crossing_window(app, det));
  const bool any = std::any_of(weights.begin(), weights.end(), [](double w) { return w > 0.0; });
  if (any) {
    const auto stub = propagate(b_stub_on_disc(app, det, particle), app.L2 - det.depth_epsilon, particle, screen);
    require_finite(stub);
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
      if (weights[i] > 0.0) psi.values[i] += weights[i] * stub.values[i];
    }
  }
  return {Channel::null_detection, std::move(psi), 1.0 - p_det};
}

ChannelField detected_channel_amplitude(const Apparatus& app, const DetectorConfig& det, const Particle& particle,
                                        DetectedOptions options) {
  require_detector(det);
  require_valid(app, det, particle);
  auto source = b_stub_on_disc(app, det, particle);
  if (options.include_captured_a) {
    const auto captured = a_captured_on_disc(app, det, particle);
    for (std::size_t i = 0; i < source.values.size(); ++i) source.values[i] += captured.values[i];
  }
  auto psi = propagate(source, app.L2 - det.depth_epsilon, particle, screen_grid(app), "screen");
  require_finite(psi);
  return {Channel::detected_at_B, std::move(psi), detection_probability(app, det, particle)};
}

double detection_probability(const Apparatus& app, const DetectorConfig& det, const Particle& particle) {
  require_detector(det);
  if (det.detection_probability_override) return *det.detection_probability_override;
  require_valid(app, det, particle);
  double barrier = 0.0;
  for (Slit s : {Slit::A, Slit::B}) {
    if (app.width(s) > 0.0) barrier += barrier_field(app, particle, s, app.aperture_samples).norm_squared();
  }
  if (!(barrier > 0.0)) throw DegenerateInput("both slits are closed");
  return slit_on_disc(app, det, particle, Slit::B).norm_squared() / barrier;
}

IntensityProfile combined_intensity(const ChannelField& null, const ChannelField& det, double p_det) {
  if (!(p_det >= 0.0 && p_det <= 1.0)) throw std::invalid_argument("p_det must lie in [0, 1]");
  if (!(null.field.grid == det.field.grid)) throw std::invalid_argument("channels are on different grids");
  const auto i_null = intensity(null.field, true);
  const auto i_det = intensity(det.field, true);
  IntensityProfile out{i_null.grid, std::vector<double>(i_null.values.size()), true};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = (1.0 - p_det) * i_null.values[i] + p_det * i_det.values[i];
  }
  return out;
}

double kick_coherence(double d, double photon_wavelength) {
  const double u = std::numbers::pi * d / photon_wavelength;
  return std::exp(-0.5 * u * u);
}

IntensityProfile kick_reference_intensity(const Apparatus& app, const DetectorConfig& det, const Particle& particle) {
  require_detector(det);
  require_valid(app, det, particle);
  const auto a = slit_on_screen(app, particle, Slit::A);
  const auto b = slit_on_screen(app, particle, Slit::B);
  const double gamma = kick_coherence(app.separation(), det.photon_wavelength);
  IntensityProfile p{a.grid, std::vector<double>(a.values.size()), false};
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    p.values[i] = std::norm(a.values[i]) + std::norm(b.values[i]) +
                  2.0 * gamma * (a.values[i] * std::conj(b.values[i])).real();
  }
  return normalized(std::move(p));
}

} // namespace slitpath
