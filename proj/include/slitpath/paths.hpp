#pragma once

#include "slitpath/apparatus.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace slitpath {

struct SpacetimeEvent {
  double x = 0.0; ///< transverse, bohr
  double z = 0.0; ///< longitudinal, bohr
  double t = 0.0; ///< time, a.u.

  bool operator==(const SpacetimeEvent&) const = default;
};

struct Path {
  std::vector<SpacetimeEvent> events;
  bool truncated = false;
  std::optional<std::size_t> truncation_index;
};

struct PathBundle {
  SpacetimeEvent start;
  SpacetimeEvent end;
  std::vector<Path> paths;
  std::uint64_t seed = 0;
};

/// Bridge proposal width used by mc_kernel_estimate, as a fraction of the
/// free-spreading scale sqrt(hbar dt / m).
inline constexpr double kMcProposalSpread = 0.35;

/// Samples `n_paths` discrete paths from start to end with n_slices equal
/// time steps. Each path is the straight line plus a Brownian bridge whose
/// unconditioned increments have standard deviation spread * sqrt(hbar dt / m).
/// Path i draws from its own counter-based stream keyed on (seed, i).
PathBundle sample_bundle(const SpacetimeEvent& start, const SpacetimeEvent& end, std::size_t n_paths,
                         std::size_t n_slices, const Particle& particle, std::uint64_t seed,
                         double spread = 1.0);

/// Discrete free action sum (m/2) (dx/dt)^2 dt over transverse increments.
double path_action(const Path& path, double mass);

/// Monte Carlo path-sum estimate of the free kernel from start to end:
///   sqrt(m / (2 pi i T)) (1 - i s^2)^((n-1)/2) < exp(i S / hbar) >
/// with paths drawn from a bridge of spread s. The prefactor is the exact
/// Gaussian normalisation of the bridge measure, so the estimate converges
/// to free_kernel(end.x, start.x, m, T) as n_paths grows.
std::complex<double> mc_kernel_estimate(const SpacetimeEvent& start, const SpacetimeEvent& end,
                                        const Particle& particle, std::size_t n_paths, std::size_t n_slices,
                                        std::uint64_t seed, double spread = kMcProposalSpread);

/// Cuts every path at its first event inside the disc (distance <= radius in
/// the (z, x) plane). Paths that never enter the disc are returned unchanged.
PathBundle truncate_bundle(const PathBundle& bundle, double disc_center_x, double disc_center_z, double radius);

struct CrossingResult {
  std::size_t count = 0;
  std::vector<SpacetimeEvent> events;
};

/// Counts proper segment-segment intersections in the (z, x) plane between
/// paths of `a` and paths of `b`. Touching endpoints and collinear overlaps
/// are not counted. Event times are interpolated along the segment from `a`.
CrossingResult crossing_count(const PathBundle& a, const PathBundle& b);

} // namespace slitpath
