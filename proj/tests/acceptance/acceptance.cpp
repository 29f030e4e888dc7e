// Acceptance checks at desk scale. One line per criterion; exit status is
// non-zero if any criterion fails.

#include "slitpath/analysis.hpp"
#include "slitpath/apparatus.hpp"
#include "slitpath/parallel.hpp"
#include "slitpath/paths.hpp"
#include "slitpath/propagator.hpp"
#include "slitpath/scenario.hpp"
#include "slitpath/sweep.hpp"
#include "slitpath/uncertainty.hpp"
#include "../support.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace slitpath;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---- 1 ----------------------------------------------------------------------

double taper(double u, double half_span) {
  const double s = std::abs(u) / half_span;
  if (s <= 0.5) return 1.0;
  if (s >= 1.0) return 0.0;
  const double r = (s - 0.5) / 0.5;
  const double a = std::exp(-1.0 / r), b = std::exp(-1.0 / (1.0 - r));
  return b / (a + b);
}

Outcome kernel_composition() {
  const auto t0 = std::chrono::steady_clock::now();
  const double m = 1.0, T = 1.0;
  const double half = 4.0 * std::sqrt(2.0 * pi * T / m);  // 8 Fresnel widths in total
  const std::size_t n = 40000;
  double worst = 0.0;
  for (const auto& [x0, x2] : {std::pair{0.3, 1.1}, std::pair{0.0, 0.0}, std::pair{-0.7, 0.4}, std::pair{1.5, -1.0}}) {
    const double centre = 0.5 * (x0 + x2), h = 2.0 * half / static_cast<double>(n);
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = -half + (static_cast<double>(i) + 0.5) * h;
      sum += free_kernel(x2, centre + u, m, T / 2) * free_kernel(centre + u, x0, m, T / 2) * taper(u, half);
    }
    const auto ref = free_kernel(x2, x0, m, T);
    worst = std::max(worst, std::abs(sum * h - ref) / std::abs(ref));
  }
  const double t = seconds_since(t0);
  return {worst < 1e-6 && t < 1.0, fmt("max relative error %.2e", worst) + fmt(", %.3f s", t)};
}

// ---- 2 ----------------------------------------------------------------------

Outcome path_sum() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto particle = make_particle(1.0, 0.5);
  const SpacetimeEvent start{0.0, 0.0, 0.0};
  const double lambda = particle.de_broglie_wavelength;

  double worst = 0.0;
  for (double dx : {0.0, 0.5 * lambda, lambda, 1.5 * lambda, 2.0 * lambda}) {
    const SpacetimeEvent end{dx, 1.0, 1.0};
    const auto est = mc_kernel_estimate(start, end, particle, 100000, 32, 1);
    const auto ref = free_kernel(dx, 0.0, particle.mass, 1.0);
    worst = std::max(worst, std::abs(est - ref) / std::abs(ref));
  }

  const SpacetimeEvent end{1.0, 1.0, 1.0};
  const auto ref = free_kernel(1.0, 0.0, particle.mass, 1.0);
  std::vector<double> xs, ys;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    double sq = 0.0;
    const int seeds = 16;
    for (int s = 0; s < seeds; ++s) {
      const double e = std::abs(mc_kernel_estimate(start, end, particle, n, 32, 500 + s) - ref) / std::abs(ref);
      sq += e * e;
    }
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(0.5 * std::log(sq / seeds));
  }
  const double mx = (xs[0] + xs[1] + xs[2]) / 3.0, my = (ys[0] + ys[1] + ys[2]) / 3.0;
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < 3; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  const double t = seconds_since(t0);
  return {worst < 0.01 && std::abs(slope + 0.5) <= 0.1 && t < 10.0,
          fmt("max relative error %.4f", worst) + fmt(", slope %.3f", slope) + fmt(", %.2f s", t)};
}

// ---- 3 ----------------------------------------------------------------------

Outcome two_slit() {
  const auto particle = desk::particle();
  const auto app = desk::apparatus();
  const auto raw = intensity(two_slit_amplitude(app, particle).field, false);
  const auto p = normalized(raw);
  const double expected = particle.de_broglie_wavelength * app.L2 / app.separation();
  const double spacing = fringe_spacing(p);
  const double spacing_err = std::abs(spacing - expected) / expected;
  const double v = visibility(p, desk::settings().central_window);
  double peak = 0.0, asym = 0.0;
  for (double x : raw.values) peak = std::max(peak, x);
  const std::size_t n = raw.values.size();
  for (std::size_t i = 0; i < n; ++i) asym = std::max(asym, std::abs(raw.values[i] - raw.values[n - 1 - i]) / peak);
  return {spacing_err < 0.02 && v >= 0.9 && asym <= 1e-9,
          fmt("spacing error %.2e", spacing_err) + fmt(", visibility %.6f", v) + fmt(", mirror deviation %.1e", asym)};
}

// ---- 4 ----------------------------------------------------------------------

Outcome disappearance() {
  const auto particle = desk::particle();
  const auto det = desk::detector();
  const auto app = desk::apparatus(100.0 * desk::rho);
  const auto null = null_channel_amplitude(app, det, particle);
  const auto detected = detected_channel_amplitude(app, det, particle);
  const double p_det = detection_probability(app, det, particle);
  const double v = visibility(combined_intensity(null, detected, p_det), desk::settings().central_window);
  const auto a = one_slit_amplitude(app, particle, Slit::A);
  const bool bitwise = null.field.values.size() == a.field.values.size() &&
                       std::memcmp(null.field.values.data(), a.field.values.data(),
                                   a.field.values.size() * sizeof(std::complex<double>)) == 0;
  return {v < 0.01 && bitwise, fmt("combined visibility %.2e", v) + (bitwise ? ", null == one-slit A bitwise" : ", null differs from one-slit A")};
}

// ---- 5, 6, 7 ----------------------------------------------------------------

const std::vector<double> kSweepMultiples{100, 50, 20, 10, 5, 2, 1.5, 1.25, 1.05, 1, 0.75, 0.5, 0.25};

Outcome return_of_interference(SweepTable& table) {
  std::vector<double> ds;
  for (double k : kSweepMultiples) ds.push_back(k * desk::rho);
  table = sweep_interslit(desk::apparatus(), desk::detector(), desk::particle(), ds, desk::settings());
  bool monotone = true;
  double worst_drop = 0.0;
  std::ostringstream curve;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (i > 0) {
      const double drop = table.rows[i - 1].visibility_combined - table.rows[i].visibility_combined;
      worst_drop = std::max(worst_drop, drop);
      if (drop > 1e-3) monotone = false;
    }
    curve << (i ? " " : "") << fmt("%.3g", table.rows[i].visibility_combined);
  }
  double at_half = 0.0;
  for (const auto& r : table.rows)
    if (r.d == 0.5 * desk::rho) at_half = r.visibility_combined;
  return {monotone && at_half > 0.05,
          "V_comb from 100 rho to rho/4: [" + curve.str() + "]" + fmt(", worst step drop %.1e", worst_drop)};
}

Outcome onset_null() {
  const auto particle = desk::particle();
  const auto det = desk::detector();
  const auto base = desk::apparatus();
  double chosen = -1.0;
  for (double k : kSweepMultiples) {
    const auto w = crossing_window(base.with_separation(k * desk::rho), det);
    if (w.screen_lo <= base.screen_max && w.screen_hi >= base.screen_min) {
      chosen = std::max(chosen, k * desk::rho);
    }
  }
  if (chosen < 0.0) return {false, "no sweep separation reaches the screen"};
  const auto app = base.with_separation(chosen);
  const auto i_null = intensity(null_channel_amplitude(app, det, particle).field, true);
  const auto i_a = intensity(one_slit_amplitude(app, particle, Slit::A).field, true);
  const auto r = onset_metrics(i_null, i_a, desk::settings().local_window_width, desk::settings().onset_threshold);
  return {r.onset_side == OnsetSide::right && r.visibility_centroid_x > 0.0,
          fmt("d/rho = %.3g", chosen / desk::rho) + ", side " + std::string(to_string(r.onset_side)) +
              fmt(", centroid %.1f bohr", r.visibility_centroid_x)};
}

Outcome onset_detected() {
  const auto particle = desk::particle();
  const auto det = desk::detector();
  const auto app = desk::apparatus(0.5 * desk::rho);
  const auto i_det = intensity(detected_channel_amplitude(app, det, particle).field, true);
  const auto i_base = intensity(detected_channel_amplitude(app, det, particle, {.include_captured_a = false}).field, true);
  const auto r = onset_metrics(i_det, i_base, desk::settings().local_window_width, desk::settings().onset_threshold);
  const bool side_ok = r.onset_side == OnsetSide::center || r.onset_side == OnsetSide::left;
  return {side_ok && r.asymmetry_index <= 0.1,
          "side " + std::string(to_string(r.onset_side)) + fmt(", asymmetry %+.3e", r.asymmetry_index)};
}

// ---- 8 ----------------------------------------------------------------------

Outcome uncertainty() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> e(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto r = packet_uncertainties(std::pow(10.0, 3.0 * e(rng)), make_particle(std::pow(10.0, e(rng)), std::pow(10.0, e(rng))));
    worst = std::max({worst, std::abs(r.delta_p * r.delta_x - 1.0), std::abs(r.delta_E * r.delta_t - 1.0)});
  }
  const auto ref = packet_uncertainties(1e9, make_particle(1.0, 0.5));
  const bool exact = ref.delta_p == 1e-9 && ref.delta_t == 1e9 && ref.delta_x == 1e9 && ref.delta_E == 1e-9;
  return {worst <= 1e-15 && exact, fmt("max product deviation %.1e", worst) + (exact ? ", D = 1e9 case exact" : ", D = 1e9 case inexact")};
}

// ---- 9 ----------------------------------------------------------------------

Outcome kick_oracle() {
  // Narrow slits keep the one-slit envelope flat across the central window.
  const auto particle = desk::particle();
  const std::vector<std::pair<double, double>> pairs{
      {1.89, 1.89}, {0.945, 1.89}, {0.4725, 1.89}, {1.4175, 1.89}, {2.0, 5.0}};
  double worst = 0.0;
  std::ostringstream detail;
  for (const auto& [d, lambda_ph] : pairs) {
    auto app = desk::apparatus(d);
    app.slit_width = 0.01;
    const auto det = DetectorConfig::with_defaults(lambda_ph);
    const double v = visibility(kick_reference_intensity(app, det, particle), desk::settings().central_window);
    const double g = kick_coherence(d, lambda_ph);
    worst = std::max(worst, std::abs(v - g));
    detail << fmt(" (%.3g", g) << fmt(" vs %.3g)", v);
  }
  return {worst < 1e-3, "gamma vs measured:" + detail.str() + fmt(", max deviation %.1e", worst)};
}

// ---- 10, 11: through the command-line tool -----------------------------------

const fs::path kTool = SLITPATH_TOOL_PATH;
const fs::path kData = SLITPATH_TEST_DATA_DIR;
const fs::path kConfigs = SLITPATH_CONFIG_DIR;

int tool(const std::string& args) {
  const std::string cmd = "\"" + kTool.string() + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "slitpath_acceptance";
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Outcome determinism() {
  const auto dir = scratch() / "determinism";
  const std::string desk = "\"" + (kConfigs / "desk.json").string() + "\"";
  const std::string small = "\"" + (kData / "small.json").string() + "\"";
  auto out = [&](const std::string& name) { return "\"" + (dir / name).string() + "\""; };

  bool ok = true;
  ok &= tool("simulate --config " + desk + " --threads 1 --out " + out("sim1")) == 0;
  ok &= tool("simulate --config " + desk + " --threads 1 --out " + out("sim1b")) == 0;
  ok &= tool("simulate --config " + desk + " --threads 4 --out " + out("sim4")) == 0;
  ok &= tool("sweep --config " + small + " --threads 1 --out " + out("sw1")) == 0;
  ok &= tool("sweep --config " + small + " --threads 1 --out " + out("sw1b")) == 0;
  ok &= tool("sweep --config " + small + " --threads 4 --out " + out("sw4")) == 0;
  ok &= tool("paths --config " + desk + " --seed 7 --threads 1 --out " + out("p1")) == 0;
  ok &= tool("paths --config " + desk + " --seed 7 --threads 4 --out " + out("p4")) == 0;
  if (!ok) return {false, "a tool run failed"};

  std::size_t compared = 0, differing = 0;
  auto same = [&](const fs::path& a, const fs::path& b) {
    ++compared;
    if (slurp(a).empty() || slurp(a) != slurp(b)) ++differing;
  };
  for (const char* f : {"intensity.csv", "summary.json", "intensity.svg"}) {
    same(dir / "sim1" / f, dir / "sim1b" / f);
    same(dir / "sim1" / f, dir / "sim4" / f);
  }
  for (const char* f : {"sweep.csv", "sweep_digest.json"}) {
    same(dir / "sw1" / f, dir / "sw1b" / f);
    same(dir / "sw1" / f, dir / "sw4" / f);
  }
  for (const char* f : {"paths.csv", "paths.json"}) same(dir / "p1" / f, dir / "p4" / f);
  return {differing == 0, std::to_string(compared) + " artifact pairs compared, " + std::to_string(differing) + " differ"};
}

Outcome cli_contract() {
  const auto dir = scratch() / "contract";
  auto run = [&](const std::string& cmd, const fs::path& config, const std::string& name) {
    return tool(cmd + " --config \"" + config.string() + "\" --out \"" + (dir / name).string() + "\"");
  };
  const int ok = run("simulate", kData / "minimal.json", "minimal");
  const int missing = run("simulate", kData / "no_such_config.json", "missing");
  const int schema = run("simulate", kData / "unknown_key.json", "schema");
  const int overlap = run("simulate", kData / "overlap.json", "overlap");
  const int overflow = run("simulate", kData / "overflow.json", "overflow");
  const bool clean = !fs::exists(dir / "missing") && !fs::exists(dir / "schema") && !fs::exists(dir / "overlap") &&
                     !fs::exists(dir / "overflow");
  const bool produced = fs::exists(dir / "minimal" / "intensity.csv") && fs::exists(dir / "minimal" / "summary.json");
  std::ostringstream d;
  d << "exit codes minimal=" << ok << " missing=" << missing << " schema=" << schema << " overlap=" << overlap
    << " overflow=" << overflow << (clean ? ", no artifacts on failure" : ", artifacts left on failure");
  return {ok == 0 && produced && missing == 2 && schema == 2 && overlap == 3 && overflow == 4 && clean, d.str()};
}

} // namespace

int main() {
  set_worker_count(std::max(1u, std::thread::hardware_concurrency()));
  SweepTable table;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"kernel composition", kernel_composition},
      {"Monte Carlo path sum", path_sum},
      {"no-detector two-slit pattern", two_slit},
      {"disappearance of interference at d = 100 rho", disappearance},
      {"return of interference as d decreases", [&] { return return_of_interference(table); }},
      {"null-channel onset on the detector side", onset_null},
      {"detected-channel onset not right-dominated", onset_detected},
      {"packet uncertainty relations", uncertainty},
      {"kick-reference visibility equals gamma", kick_oracle},
      {"determinism across runs and thread counts", determinism},
      {"command-line exit codes and atomic output", cli_contract},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[PRIMARY] %2zu %-46s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
