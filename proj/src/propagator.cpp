#include "slitpath/propagator.hpp"

#include "slitpath/parallel.hpp"
#include "slitpath/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slitpath {

std::vector<double> Grid::coordinates() const {
  std::vector<double> xs(samples);
  for (std::size_t i = 0; i < samples; ++i) xs[i] = x(i);
  return xs;
}

void check_grid(const Grid& g) {
  if (!std::isfinite(g.min) || !std::isfinite(g.max) || !(g.min < g.max)) {
    throw std::invalid_argument("grid requires finite bounds with min < max");
  }
  if (g.samples < 2) throw std::invalid_argument("grid requires at least 2 samples");
}

double PlaneField::norm_squared() const {
  CompensatedSum s;
  for (const auto& v : values) s.add(std::norm(v));
  return s.value() * grid.spacing();
}

bool PlaneField::all_finite() const {
  return std::all_of(values.begin(), values.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

PlaneField zero_field(std::string label, const Grid& grid) {
  check_grid(grid);
  return PlaneField{std::move(label), grid, std::vector<cplx>(grid.samples)};
}

namespace {

void check_kernel_args(double mass, double time) {
  if (!(time > 0.0) || !std::isfinite(time)) throw std::invalid_argument("kernel time must be positive");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("kernel mass must be positive");
}

// sqrt(m / (2 pi i T)) = sqrt(m / (2 pi T)) * exp(-i pi / 4)
cplx kernel_prefactor(double mass, double time) {
  return std::polar(std::sqrt(mass / (2.0 * std::numbers::pi * time)), -0.25 * std::numbers::pi);
}

} // namespace

cplx free_kernel(double x_b, double x_a, double mass, double time) {
  check_kernel_args(mass, time);
  const double dx = x_b - x_a;
  const double phase = mass * dx * dx / (2.0 * time);
  return kernel_prefactor(mass, time) * std::polar(1.0, phase);
}

PlaneField point_source_field(double source_x, const Grid& target, double L, const Particle& particle,
                              std::string label) {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("propagation length must be positive");
  check_grid(target);
  const double time = L / particle.velocity;
  PlaneField out{std::move(label), target, std::vector<cplx>(target.samples)};
  for (std::size_t i = 0; i < target.samples; ++i) {
    out.values[i] = free_kernel(target.x(i), source_x, particle.mass, time);
  }
  return out;
}

PlaneField propagate(const PlaneField& in, double L, const Particle& particle, const Grid& target,
                     std::string label) {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("propagation length must be positive");
  if (in.values.empty()) throw std::invalid_argument("cannot propagate an empty field");
  if (in.values.size() != in.grid.samples) throw std::invalid_argument("field size does not match its grid");
  check_grid(target);

  const double time = L / particle.velocity;
  check_kernel_args(particle.mass, time);
  const double chirp = particle.mass / (2.0 * time);
  const cplx scale = kernel_prefactor(particle.mass, time) * in.grid.spacing();

  // Skip zero input samples once, up front; the remaining order is fixed.
  std::vector<double> xs;
  std::vector<cplx> amps;
  xs.reserve(in.values.size());
  amps.reserve(in.values.size());
  for (std::size_t i = 0; i < in.values.size(); ++i) {
    if (in.values[i] != cplx{}) {
      xs.push_back(in.grid.x(i));
      amps.push_back(in.values[i]);
    }
  }

  PlaneField out{std::move(label), target, std::vector<cplx>(target.samples)};
  if (xs.empty()) return out;

  parallel_for(target.samples, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const double xj = target.x(j);
      CompensatedComplexSum acc;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xj - xs[i];
        acc.add(std::polar(1.0, chirp * dx * dx) * amps[i]);
      }
      out.values[j] = scale * acc.value();
    }
  });
  return out;
}

PlaneField apply_aperture(const PlaneField& field, std::span<const Interval> open_intervals) {
  std::vector<Interval> sorted(open_intervals.begin(), open_intervals.end());
  for (const auto& [lo, hi] : sorted) {
    if (!(lo < hi)) throw std::invalid_argument("aperture interval requires lo < hi");
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k].first < sorted[k - 1].second) throw std::invalid_argument("aperture intervals overlap");
  }
  PlaneField out = field;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double x = out.grid.x(i);
    const bool open = std::any_of(sorted.begin(), sorted.end(),
                                  [x](const Interval& iv) { return x >= iv.first && x <= iv.second; });
    if (!open) out.values[i] = cplx{};
  }
  return out;
}

} // namespace slitpath
