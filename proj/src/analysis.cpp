#include "slitpath/analysis.hpp"

#include "slitpath/errors.hpp"
#include "slitpath/summation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace slitpath {

double IntensityProfile::integral() const {
  if (values.empty()) return 0.0;
  CompensatedSum s;
  for (double v : values) s.add(v);
  s.add(-0.5 * (values.front() + values.back()));
  return s.value() * grid.spacing();
}

IntensityProfile normalized(IntensityProfile profile) {
  const double area = profile.integral();
  if (!(area > 0.0) || !std::isfinite(area)) throw DegenerateInput("cannot normalize a profile with zero mass");
  for (double& v : profile.values) v /= area;
  profile.normalized = true;
  return profile;
}

IntensityProfile intensity(const PlaneField& field, bool normalize) {
  if (field.values.empty()) throw std::invalid_argument("intensity of an empty field");
  IntensityProfile p{field.grid, std::vector<double>(field.values.size()), false};
  for (std::size_t i = 0; i < field.values.size(); ++i) p.values[i] = std::norm(field.values[i]);
  return normalize ? normalized(std::move(p)) : p;
}

namespace {

struct Extremum {
  std::size_t index;
  double value;
  bool is_max;
};

// Interior local extrema of the whole profile, each refined by a parabola
// through (i-1, i, i+1). An extremum at i is inside a window [lo, hi] when
// lo < i < hi, since its neighbours are then inside too.
std::vector<Extremum> find_extrema(const std::vector<double>& y) {
  std::vector<Extremum> out;
  for (std::size_t j = 1; j + 1 < y.size(); ++j) {
    const double a = y[j - 1], b = y[j], c = y[j + 1];
    const bool is_max = b > a && b >= c;
    const bool is_min = b < a && b <= c;
    if (!is_max && !is_min) continue;
    const double curvature = a - 2.0 * b + c;
    double v = b;
    if (curvature != 0.0) v = b - (a - c) * (a - c) / (8.0 * curvature);
    out.push_back({j, std::max(v, 0.0), is_max});
  }
  return out;
}

double visibility_from(const std::vector<Extremum>& ext, std::size_t lo, std::size_t hi) {
  // ext is sorted by index; take those strictly inside (lo, hi).
  auto first = std::upper_bound(ext.begin(), ext.end(), lo,
                                [](std::size_t v, const Extremum& e) { return v < e.index; });
  CompensatedSum max_sum, min_sum;
  std::size_t n_max = 0, n_min = 0;
  for (auto it = first; it != ext.end() && it->index < hi; ++it) {
    if (it->is_max) {
      max_sum.add(it->value);
      ++n_max;
    } else {
      min_sum.add(it->value);
      ++n_min;
    }
  }
  if (n_max == 0 || n_min == 0) return 0.0;
  const double i_max = max_sum.value() / static_cast<double>(n_max);
  const double i_min = min_sum.value() / static_cast<double>(n_min);
  if (!(i_max + i_min > 0.0)) return 0.0;
  return std::clamp((i_max - i_min) / (i_max + i_min), 0.0, 1.0);
}

void require_same_grid(const IntensityProfile& a, const IntensityProfile& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size()) {
    throw std::invalid_argument("profiles are sampled on different grids");
  }
}

std::mutex g_fftw_mutex;

// |X_k|^2 for k = 0 .. n_fft/2 of the real input zero-padded to n_fft.
std::vector<double> power_spectrum(const std::vector<double>& input, std::size_t n_fft) {
  std::vector<double> buffer(n_fft, 0.0);
  std::copy(input.begin(), input.end(), buffer.begin());
  const std::size_t n_out = n_fft / 2 + 1;
  std::vector<std::complex<double>> spectrum(n_out);
  fftw_plan plan;
  {
    std::lock_guard lock(g_fftw_mutex);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n_fft), buffer.data(),
                                reinterpret_cast<fftw_complex*>(spectrum.data()), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(g_fftw_mutex);
    fftw_destroy_plan(plan);
  }
  std::vector<double> power(n_out);
  for (std::size_t k = 0; k < n_out; ++k) power[k] = std::norm(spectrum[k]);
  return power;
}

std::vector<double> mean_removed(const std::vector<double>& v) {
  CompensatedSum s;
  for (double x : v) s.add(x);
  const double mean = s.value() / static_cast<double>(v.size());
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - mean;
  return out;
}

constexpr std::size_t kZeroPadding = 4;
// Components with fewer cycles than this across the profile are treated as
// envelope, not fringes.
constexpr double kMinFringeCycles = 3.0;

} // namespace

double visibility(const IntensityProfile& profile, Window window) {
  std::size_t lo = profile.values.size(), hi = 0, count = 0;
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    const double x = profile.grid.x(i);
    if (x < window.lo || x > window.hi) continue;
    lo = std::min(lo, i);
    hi = std::max(hi, i);
    ++count;
  }
  if (count < kMinWindowSamples) {
    throw std::invalid_argument("visibility window holds fewer than 16 samples");
  }
  return visibility_from(find_extrema(profile.values), lo, hi);
}

std::vector<double> local_visibility_profile(const IntensityProfile& profile, double window_width) {
  const double h = profile.grid.spacing();
  const auto half = static_cast<std::size_t>(std::floor(0.5 * window_width / h));
  if (!std::isfinite(window_width) || 2 * half + 1 < kMinWindowSamples) {
    throw std::invalid_argument("local visibility window holds fewer than 16 samples");
  }
  const auto ext = find_extrema(profile.values);
  const std::size_t n = profile.values.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i > half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    out[i] = visibility_from(ext, lo, hi);
  }
  return out;
}

double fringe_spacing(const IntensityProfile& profile) {
  const std::size_t n = profile.values.size();
  if (n < kMinWindowSamples) throw NoFringes("profile too short for spectral analysis");
  auto samples = mean_removed(profile.values);
  for (std::size_t i = 0; i < n; ++i) {
    const double hann = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) /
                                              static_cast<double>(n));
    samples[i] *= hann;
  }
  const std::size_t n_fft = kZeroPadding * n;
  const auto power = power_spectrum(samples, n_fft);

  const auto k_min = static_cast<std::size_t>(std::ceil(kMinFringeCycles * kZeroPadding));
  if (k_min + 2 >= power.size()) throw NoFringes("profile too short for spectral analysis");
  std::size_t k_peak = k_min;
  for (std::size_t k = k_min; k + 1 < power.size(); ++k) {
    if (power[k] > power[k_peak]) k_peak = k;
  }
  std::vector<double> band(power.begin() + static_cast<std::ptrdiff_t>(k_min), power.end() - 1);
  std::nth_element(band.begin(), band.begin() + static_cast<std::ptrdiff_t>(band.size() / 2), band.end());
  const double background = band[band.size() / 2];
  if (!(power[k_peak] > 0.0) || power[k_peak] < 3.0 * background || k_peak == k_min) {
    throw NoFringes("no dominant oscillation in profile");
  }

  const double a = power[k_peak - 1], b = power[k_peak], c = power[k_peak + 1];
  const double curvature = a - 2.0 * b + c;
  const double offset = curvature != 0.0 ? 0.5 * (a - c) / curvature : 0.0;
  const double k_est = static_cast<double>(k_peak) + offset;
  const double padded_span = static_cast<double>(n_fft) * profile.grid.spacing();
  return padded_span / k_est;
}

double spectral_power_fraction(const IntensityProfile& profile, double frequency, int half_width_bins) {
  const std::size_t n = profile.values.size();
  const auto power = power_spectrum(mean_removed(profile.values), n);
  const double span = static_cast<double>(n) * profile.grid.spacing();
  const auto centre = static_cast<long>(std::lround(frequency * span));
  CompensatedSum total, band;
  for (std::size_t k = 1; k < power.size(); ++k) {
    total.add(power[k]);
    if (std::labs(static_cast<long>(k) - centre) <= half_width_bins) band.add(power[k]);
  }
  if (!(total.value() > 0.0)) return 0.0;
  return band.value() / total.value();
}

IntensityProfile fraunhofer_oracle(const Apparatus& app, const Particle& particle) {
  const Grid grid{app.screen_min, app.screen_max, app.screen_samples};
  check_grid(grid);
  const double scale = particle.de_broglie_wavelength * app.L2;
  const double d = app.separation();
  const double w = app.slit_width;
  IntensityProfile p{grid, std::vector<double>(grid.samples), false};
  for (std::size_t i = 0; i < grid.samples; ++i) {
    const double x = grid.x(i);
    const double c = std::cos(std::numbers::pi * d * x / scale);
    const double u = std::numbers::pi * w * x / scale;
    const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
    p.values[i] = c * c * sinc * sinc;
  }
  return normalized(std::move(p));
}

std::string_view to_string(OnsetSide side) {
  switch (side) {
  case OnsetSide::left: return "left";
  case OnsetSide::center: return "center";
  case OnsetSide::right: return "right";
  case OnsetSide::none: return "none";
  }
  return "none";
}

OnsetReport onset_metrics(const IntensityProfile& profile, const IntensityProfile& baseline, double window_width,
                          double threshold) {
  require_same_grid(profile, baseline);
  const auto lv = local_visibility_profile(profile, window_width);
  const auto lv_base = local_visibility_profile(baseline, window_width);

  OnsetReport r;
  r.local_visibility.resize(lv.size());
  CompensatedSum left, right, mass, moment;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const double excess = lv[i] - lv_base[i];
    const double e = excess >= threshold ? excess : 0.0;
    r.local_visibility[i] = e;
    if (e == 0.0) continue;
    const double x = profile.grid.x(i);
    if (x > 0.0) right.add(e);
    if (x < 0.0) left.add(e);
    mass.add(e);
    moment.add(e * x);
  }
  const double total = right.value() + left.value();
  if (!(mass.value() > 0.0)) return r;
  r.visibility_centroid_x = moment.value() / mass.value();
  r.asymmetry_index = total > 0.0 ? (right.value() - left.value()) / total : 0.0;
  if (std::fabs(r.asymmetry_index) < kCenterBand) {
    r.onset_side = OnsetSide::center;
  } else {
    r.onset_side = r.asymmetry_index > 0.0 ? OnsetSide::right : OnsetSide::left;
  }
  return r;
}

} // namespace slitpath
