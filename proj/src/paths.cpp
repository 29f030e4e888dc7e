#include "slitpath/paths.hpp"

#include "slitpath/parallel.hpp"
#include "slitpath/summation.hpp"
#include "slitpath/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace slitpath {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based generator: output n is a hash of (key, n), so each path's
// stream is independent of how paths are scheduled.
class CounterRng {
public:
  using result_type = std::uint64_t;
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(splitmix64(seed ^ splitmix64(stream * kGolden + 1))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return splitmix64(key_ + kGolden * ++counter_); }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

void check_endpoints(const SpacetimeEvent& start, const SpacetimeEvent& end, std::size_t n_paths,
                     std::size_t n_slices) {
  if (n_paths < 1) throw std::invalid_argument("n_paths must be at least 1");
  if (n_slices < 1) throw std::invalid_argument("n_slices must be at least 1");
  if (!(end.t > start.t)) throw std::invalid_argument("bundle end time must follow start time");
}

void sample_path(const SpacetimeEvent& start, const SpacetimeEvent& end, std::size_t n_slices,
                 const Particle& particle, std::uint64_t seed, std::uint64_t index, double spread,
                 std::vector<SpacetimeEvent>& events) {
  const double n = static_cast<double>(n_slices);
  const double dt = (end.t - start.t) / n;
  const double sigma = spread * std::sqrt(units::hbar * dt / particle.mass);

  events.resize(n_slices + 1);
  // Unconditioned walk first, then pin it to zero at the far end.
  CounterRng rng(seed, index);
  std::normal_distribution<double> normal(0.0, sigma);
  double walk = 0.0;
  for (std::size_t k = 1; k <= n_slices; ++k) {
    walk += normal(rng);
    events[k].x = walk;
  }
  const double final_walk = walk;
  events.front() = start;
  for (std::size_t k = 1; k < n_slices; ++k) {
    const double f = static_cast<double>(k) / n;
    const double bridge = events[k].x - f * final_walk;
    events[k] = {start.x + f * (end.x - start.x) + bridge, start.z + f * (end.z - start.z), start.t + dt * static_cast<double>(k)};
  }
  events.back() = end;
}

} // namespace

PathBundle sample_bundle(const SpacetimeEvent& start, const SpacetimeEvent& end, std::size_t n_paths,
                         std::size_t n_slices, const Particle& particle, std::uint64_t seed, double spread) {
  check_endpoints(start, end, n_paths, n_slices);
  if (!(spread >= 0.0)) throw std::invalid_argument("bridge spread must be non-negative");
  PathBundle bundle{start, end, std::vector<Path>(n_paths), seed};
  parallel_for(n_paths, [&](std::size_t begin, std::size_t stop) {
    for (std::size_t i = begin; i < stop; ++i) {
      sample_path(start, end, n_slices, particle, seed, i, spread, bundle.paths[i].events);
    }
  });
  return bundle;
}

double path_action(const Path& path, double mass) {
  const auto& ev = path.events;
  if (ev.size() < 2) throw std::invalid_argument("path action needs at least two events");
  CompensatedSum s;
  for (std::size_t k = 1; k < ev.size(); ++k) {
    const double dt = ev[k].t - ev[k - 1].t;
    const double dx = ev[k].x - ev[k - 1].x;
    s.add(0.5 * mass * dx * dx / dt);
  }
  return s.value();
}

std::complex<double> mc_kernel_estimate(const SpacetimeEvent& start, const SpacetimeEvent& end,
                                        const Particle& particle, std::size_t n_paths, std::size_t n_slices,
                                        std::uint64_t seed, double spread) {
  check_endpoints(start, end, n_paths, n_slices);
  if (!(spread > 0.0)) throw std::invalid_argument("proposal spread must be positive");
  const double total_time = end.t - start.t;

  std::vector<std::complex<double>> phases(n_paths);
  parallel_for(n_paths, [&](std::size_t begin, std::size_t stop) {
    Path path;
    for (std::size_t i = begin; i < stop; ++i) {
      sample_path(start, end, n_slices, particle, seed, i, spread, path.events);
      phases[i] = std::polar(1.0, path_action(path, particle.mass) / units::hbar);
    }
  });
  CompensatedComplexSum acc;
  for (const auto& p : phases) acc.add(p);
  const std::complex<double> mean = acc.value() / static_cast<double>(n_paths);

  // Gaussian integral of exp(i Q) against the bridge density exp(-Q / s^2)
  // over n - 1 interior points gives (1 - i s^2)^(-(n-1)/2).
  const std::complex<double> bridge_norm =
      std::pow(std::complex<double>(1.0, -spread * spread), 0.5 * static_cast<double>(n_slices - 1));
  const std::complex<double> prefactor =
      std::polar(std::sqrt(particle.mass / (2.0 * std::numbers::pi * units::hbar * total_time)),
                 -0.25 * std::numbers::pi);
  return prefactor * bridge_norm * mean;
}

PathBundle truncate_bundle(const PathBundle& bundle, double cx, double cz, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("truncation radius must be positive");
  PathBundle out = bundle;
  const double r2 = radius * radius;
  for (auto& path : out.paths) {
    for (std::size_t k = 0; k < path.events.size(); ++k) {
      const double dx = path.events[k].x - cx;
      const double dz = path.events[k].z - cz;
      if (dx * dx + dz * dz <= r2) {
        path.events.resize(k + 1);
        path.truncated = true;
        path.truncation_index = k;
        break;
      }
    }
  }
  return out;
}

namespace {

struct Point {
  double z;
  double x;
};

double orient(Point a, Point b, Point c) { return (b.z - a.z) * (c.x - a.x) - (b.x - a.x) * (c.z - a.z); }

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Proper crossing: each segment strictly separates the other's endpoints.
bool proper_intersection(Point p1, Point p2, Point q1, Point q2) {
  const int d1 = sign(orient(q1, q2, p1));
  const int d2 = sign(orient(q1, q2, p2));
  const int d3 = sign(orient(p1, p2, q1));
  const int d4 = sign(orient(p1, p2, q2));
  return d1 * d2 < 0 && d3 * d4 < 0;
}

} // namespace

CrossingResult crossing_count(const PathBundle& a, const PathBundle& b) {
  CrossingResult result;
  for (const auto& pa : a.paths) {
    for (const auto& pb : b.paths) {
      for (std::size_t i = 1; i < pa.events.size(); ++i) {
        const auto& a0 = pa.events[i - 1];
        const auto& a1 = pa.events[i];
        const double az_lo = std::min(a0.z, a1.z), az_hi = std::max(a0.z, a1.z);
        const double ax_lo = std::min(a0.x, a1.x), ax_hi = std::max(a0.x, a1.x);
        for (std::size_t j = 1; j < pb.events.size(); ++j) {
          const auto& b0 = pb.events[j - 1];
          const auto& b1 = pb.events[j];
          if (std::max(b0.z, b1.z) < az_lo || std::min(b0.z, b1.z) > az_hi) continue;
          if (std::max(b0.x, b1.x) < ax_lo || std::min(b0.x, b1.x) > ax_hi) continue;
          const Point p1{a0.z, a0.x}, p2{a1.z, a1.x}, q1{b0.z, b0.x}, q2{b1.z, b1.x};
          if (!proper_intersection(p1, p2, q1, q2)) continue;
          const double denom = orient(p1, p2, q1) - orient(p1, p2, q2);
          // Parameter along b where it meets a's line, then map back onto a.
          const double u = orient(p1, p2, q1) / denom;
          const double z = q1.z + u * (q2.z - q1.z);
          const double x = q1.x + u * (q2.x - q1.x);
          const double along = (std::fabs(a1.z - a0.z) >= std::fabs(a1.x - a0.x))
                                   ? (z - a0.z) / (a1.z - a0.z)
                                   : (x - a0.x) / (a1.x - a0.x);
          result.events.push_back({x, z, a0.t + along * (a1.t - a0.t)});
          ++result.count;
        }
      }
    }
  }
  return result;
}

} // namespace slitpath
