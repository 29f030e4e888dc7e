#pragma once

#include "slitpath/analysis.hpp"
#include "slitpath/apparatus.hpp"
#include "slitpath/propagator.hpp"

#include <string_view>

namespace slitpath {

enum class Channel { no_detector, one_slit_A, one_slit_B, null_detection, detected_at_B, kick_reference };

std::string_view to_string(Channel c);

/// Screen amplitude of one coherent alternative history.
struct ChannelField {
  Channel channel;
  PlaneField field;
  double probability_weight = 1.0;
};

/// Screen interval reached by straight lines from the centre of slit A that
/// pass through the interaction disc.
struct CrossingWindow {
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  double screen_lo = 0.0;
  double screen_hi = 0.0;
};

Grid screen_grid(const Apparatus& apparatus);
Grid disc_grid(const Apparatus& apparatus, const DetectorConfig& detector);

/// Point-source amplitude on slit `slit`'s aperture.
PlaneField barrier_field(const Apparatus& apparatus, const Particle& particle, Slit slit, std::size_t samples);

ChannelField two_slit_amplitude(const Apparatus& apparatus, const Particle& particle);
ChannelField one_slit_amplitude(const Apparatus& apparatus, const Particle& particle, Slit slit);

CrossingWindow crossing_window(const Apparatus& apparatus, const DetectorConfig& detector);

/// Slit B's amplitude carried over depth epsilon onto the disc and cut to it.
PlaneField b_stub_on_disc(const Apparatus& apparatus, const DetectorConfig& detector, const Particle& particle);

/// Slit A's amplitude carried over depth epsilon and cut to the disc. Exactly
/// zero when the disc misses A's forward cone: the geometric shadow of
/// aperture A cast from the source, widened on each side by the diffraction
/// spread lambda * epsilon / w_A.
PlaneField a_captured_on_disc(const Apparatus& apparatus, const DetectorConfig& detector,
                              const Particle& particle);

/// Null-detection channel: psi_A + W(x) psi_B_stub, with W the crossing
/// window indicator ramped over one screen cell.
ChannelField null_channel_amplitude(const Apparatus& apparatus, const DetectorConfig& detector,
                                    const Particle& particle);

struct DetectedOptions {
  /// Include the A amplitude trapped inside the disc in the re-emitted source.
  bool include_captured_a = true;
};

/// Detected-at-B channel: the disc re-emits stub + captured A amplitude.
ChannelField detected_channel_amplitude(const Apparatus& apparatus, const DetectorConfig& detector,
                                        const Particle& particle, DetectedOptions options = {});

double detection_probability(const Apparatus& apparatus, const DetectorConfig& detector, const Particle& particle);

/// (1 - p_det) I_null + p_det I_det with each channel normalized to unit area first.
IntensityProfile combined_intensity(const ChannelField& null, const ChannelField& det, double p_det);

/// Momentum-kick decoherence factor exp(-(pi d / lambda_ph)^2 / 2).
double kick_coherence(double d, double photon_wavelength);

/// |psi_A|^2 + |psi_B|^2 + 2 gamma Re(psi_A conj(psi_B)), normalized.
IntensityProfile kick_reference_intensity(const Apparatus& apparatus, const DetectorConfig& detector,
                                          const Particle& particle);

} // namespace slitpath
