#pragma once

#include "slitpath/apparatus.hpp"

namespace slitpath {

/// Order-of-magnitude spreads of a point-to-point wave packet that travels a
/// distance D: the packet is as long as its flight and lasts as long as its
/// time of flight.
struct UncertaintyReport {
  double distance_D = 0.0;
  double delta_p = 0.0; ///< hbar / D
  double delta_x = 0.0; ///< hbar / delta_p = D
  double delta_E = 0.0; ///< p delta_p / m = hbar v / D
  double delta_t = 0.0; ///< hbar / delta_E = D / v
};

UncertaintyReport packet_uncertainties(double D, const Particle& particle);

} // namespace slitpath
