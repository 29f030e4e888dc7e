#include "slitpath/uncertainty.hpp"

#include "slitpath/units.hpp"

#include <cmath>
#include <stdexcept>

namespace slitpath {

UncertaintyReport packet_uncertainties(double D, const Particle& particle) {
  if (!(D > 0.0) || !std::isfinite(D)) throw std::invalid_argument("packet distance D must be positive");
  UncertaintyReport r;
  r.distance_D = D;
  r.delta_p = units::hbar / D;
  r.delta_x = D;
  r.delta_E = particle.velocity / D;
  r.delta_t = D / particle.velocity;
  return r;
}

} // namespace slitpath
