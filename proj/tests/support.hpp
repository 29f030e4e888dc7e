#pragma once

#include "slitpath/apparatus.hpp"
#include "slitpath/sweep.hpp"

// Desk-scale setup: every length a factor 1e4 below a centimetre-scale
// apparatus, with the de Broglie wavelength shrunk by the same factor.
namespace desk {

inline constexpr double rho = 1.89;

inline slitpath::Particle particle() { return slitpath::make_particle(1.0, 2.0e5); }

inline slitpath::Apparatus apparatus(double d = 2.0 * rho) {
  slitpath::Apparatus a;
  a.source_x = 0.0;
  a.L1 = 1.0e5;
  a.L2 = 1.0e5;
  a.slit_A_center = -0.5 * d;
  a.slit_B_center = 0.5 * d;
  a.slit_width = 0.1;
  a.screen_min = -7500.0;
  a.screen_max = 7500.0;
  a.screen_samples = 4096;
  a.aperture_samples = 64;
  return a;
}

inline slitpath::DetectorConfig detector() { return slitpath::DetectorConfig::with_defaults(rho); }

inline slitpath::AnalysisSettings settings() {
  slitpath::AnalysisSettings s;
  s.central_window = {-2500.0, 2500.0};
  s.local_window_width = 2500.0;
  s.onset_threshold = 0.02;
  return s;
}

} // namespace desk
