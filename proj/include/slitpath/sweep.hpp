#pragma once

#include "slitpath/analysis.hpp"
#include "slitpath/apparatus.hpp"

#include <vector>

namespace slitpath {

struct AnalysisSettings {
  Window central_window{-1.0, 1.0};
  double local_window_width = 1.0;
  double onset_threshold = kDefaultOnsetThreshold;
};

struct SweepRow {
  double d = 0.0;
  double d_over_lambda_ph = 0.0;
  double visibility_null = 0.0;
  double visibility_det = 0.0;
  double visibility_combined = 0.0;
  double visibility_kick_reference = 0.0;
  double centroid_null = 0.0;
  double asymmetry_det = 0.0;
  double p_det = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

/// Every channel observable for one slit separation d (slits re-centred on
/// their original midpoint).
SweepRow sweep_row(const Apparatus& apparatus, const DetectorConfig& detector, const Particle& particle, double d,
                   const AnalysisSettings& settings);

/// One row per entry of d_values, in input order. Throws std::invalid_argument
/// naming the first row whose configuration fails validation.
SweepTable sweep_interslit(const Apparatus& apparatus, const DetectorConfig& detector, const Particle& particle,
                           const std::vector<double>& d_values, const AnalysisSettings& settings);

} // namespace slitpath
