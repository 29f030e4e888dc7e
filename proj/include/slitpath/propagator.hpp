#pragma once

#include "slitpath/apparatus.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace slitpath {

using cplx = std::complex<double>;

/// Uniform cell-centred grid: `samples` cells of equal width spanning
/// [min, max]; sample i sits at the centre of cell i.
struct Grid {
  double min = 0.0;
  double max = 1.0;
  std::size_t samples = 2;

  double spacing() const noexcept { return (max - min) / static_cast<double>(samples); }
  double x(std::size_t i) const noexcept { return min + (static_cast<double>(i) + 0.5) * spacing(); }
  std::vector<double> coordinates() const;

  bool operator==(const Grid&) const = default;
};

/// Throws std::invalid_argument unless min < max (both finite) and samples >= 2.
void check_grid(const Grid& g);

/// Complex amplitude sampled on a transverse plane.
struct PlaneField {
  std::string z_label;
  Grid grid;
  std::vector<cplx> values;

  /// Total probability, sum |psi|^2 * dx.
  double norm_squared() const;
  bool all_finite() const;
};

/// Zero field on `grid`.
PlaneField zero_field(std::string label, const Grid& grid);

/// Free-particle kernel K(x_b, T; x_a, 0) solving i dpsi/dt = -(1/2m) d2psi/dx2:
///   sqrt(m / (2 pi i T)) exp(i m (x_b - x_a)^2 / (2 T))
cplx free_kernel(double x_b, double x_a, double mass, double time);

/// Field on `target` radiated by a point source at `source_x` after a flight
/// of longitudinal length L (time L / v).
PlaneField point_source_field(double source_x, const Grid& target, double L, const Particle& particle,
                              std::string label = "point_source");

/// Midpoint-rule propagation over longitudinal distance L onto `target`.
/// Each output sample is accumulated serially in input order, so the
/// result does not depend on the worker count.
PlaneField propagate(const PlaneField& field_in, double L, const Particle& particle, const Grid& target,
                     std::string label = "propagated");

using Interval = std::pair<double, double>;

/// Zeroes samples whose coordinate lies outside the union of `open_intervals`.
/// Intervals must satisfy lo < hi and must not overlap.
PlaneField apply_aperture(const PlaneField& field, std::span<const Interval> open_intervals);

} // namespace slitpath
