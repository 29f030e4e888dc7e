#pragma once

#include "slitpath/apparatus.hpp"
#include "slitpath/propagator.hpp"

#include <string_view>
#include <vector>

namespace slitpath {

/// |psi|^2 on a grid.
struct IntensityProfile {
  Grid grid;
  std::vector<double> values;
  bool normalized = false;

  /// Trapezoid rule over the sample points.
  double integral() const;
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

/// Samples a window must contain before any visibility statistic is attempted.
inline constexpr std::size_t kMinWindowSamples = 16;
/// Local-visibility excess above which a point counts as showing fringes.
inline constexpr double kDefaultOnsetThreshold = 0.02;
/// |asymmetry| below this reads as a centred onset.
inline constexpr double kCenterBand = 0.1;

/// Throws DegenerateInput when normalize is requested for a field with no mass.
IntensityProfile intensity(const PlaneField& field, bool normalize);

/// Rescales a profile to unit trapezoid integral.
IntensityProfile normalized(IntensityProfile profile);

/// Fringe visibility (I_max - I_min) / (I_max + I_min) inside `window`.
///
/// I_max and I_min are the means of the interior local maxima and minima,
/// each refined by a parabola through its three neighbouring samples. A
/// window without at least one maximum and one minimum has visibility 0.
/// Throws std::invalid_argument if fewer than kMinWindowSamples samples fall
/// inside the window.
double visibility(const IntensityProfile& profile, Window window);

/// Sliding-window visibility centred on every grid point. The window is
/// clipped at the profile edges.
std::vector<double> local_visibility_profile(const IntensityProfile& profile, double window_width);

/// Period of the dominant AC component of the profile, from the zero-padded
/// spectrum of the mean-removed samples with parabolic peak interpolation.
/// Throws NoFringes when the peak is under 3x the median spectral power.
double fringe_spacing(const IntensityProfile& profile);

/// Fraction of the AC spectral power that falls within +-half_width_bins
/// of the spatial frequency `frequency` (cycles per bohr).
double spectral_power_fraction(const IntensityProfile& profile, double frequency, int half_width_bins = 1);

/// Far-field two-slit pattern cos^2(pi d x / (lambda L2)) sinc^2(pi w x / (lambda L2))
/// on the screen grid, normalized to unit area.
IntensityProfile fraunhofer_oracle(const Apparatus& apparatus, const Particle& particle);

enum class OnsetSide { left, center, right, none };

std::string_view to_string(OnsetSide side);

struct OnsetReport {
  std::vector<double> local_visibility; ///< thresholded excess over the baseline
  OnsetSide onset_side = OnsetSide::none;
  double visibility_centroid_x = 0.0;
  double asymmetry_index = 0.0;
};

/// Where a profile shows fringes that the baseline does not. Left and right
/// are taken about x = 0, the apparatus axis.
OnsetReport onset_metrics(const IntensityProfile& profile, const IntensityProfile& baseline, double window_width,
                          double threshold = kDefaultOnsetThreshold);

} // namespace slitpath
