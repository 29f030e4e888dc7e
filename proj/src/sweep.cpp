#include "slitpath/sweep.hpp"

#include "slitpath/errors.hpp"
#include "slitpath/scenario.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace slitpath {

SweepRow sweep_row(const Apparatus& base, const DetectorConfig& det, const Particle& particle, double d,
                   const AnalysisSettings& settings) {
  const Apparatus app = base.with_separation(d);
  require_valid(app, det, particle);
  if (!det.enabled) throw InvalidState("sweep requires an enabled detector");

  const auto null = null_channel_amplitude(app, det, particle);
  const auto detected = detected_channel_amplitude(app, det, particle);
  const auto det_baseline = detected_channel_amplitude(app, det, particle, {.include_captured_a = false});
  const auto one_a = one_slit_amplitude(app, particle, Slit::A);
  const double p_det = detected.probability_weight;

  const auto i_null = intensity(null.field, true);
  const auto i_det = intensity(detected.field, true);
  const auto combined = combined_intensity(null, detected, p_det);
  const auto kick = kick_reference_intensity(app, det, particle);

  SweepRow row;
  row.d = d;
  row.d_over_lambda_ph = d / det.photon_wavelength;
  row.visibility_null = visibility(i_null, settings.central_window);
  row.visibility_det = visibility(i_det, settings.central_window);
  row.visibility_combined = visibility(combined, settings.central_window);
  row.visibility_kick_reference = visibility(kick, settings.central_window);
  row.centroid_null =
      onset_metrics(i_null, intensity(one_a.field, true), settings.local_window_width, settings.onset_threshold)
          .visibility_centroid_x;
  row.asymmetry_det = onset_metrics(i_det, intensity(det_baseline.field, true), settings.local_window_width,
                                    settings.onset_threshold)
                          .asymmetry_index;
  row.p_det = p_det;
  return row;
}

SweepTable sweep_interslit(const Apparatus& apparatus, const DetectorConfig& detector, const Particle& particle,
                           const std::vector<double>& d_values, const AnalysisSettings& settings) {
  for (std::size_t i = 0; i < d_values.size(); ++i) {
    const auto report = validate(apparatus.with_separation(d_values[i]), detector, particle);
    if (!report.ok || !std::isfinite(d_values[i])) {
      std::ostringstream os;
      os << "sweep row " << i << " (d = " << d_values[i] << ") is invalid:\n" << report.summary();
      throw std::invalid_argument(os.str());
    }
  }
  SweepTable table;
  table.rows.reserve(d_values.size());
  for (double d : d_values) table.rows.push_back(sweep_row(apparatus, detector, particle, d, settings));
  return table;
}

} // namespace slitpath
