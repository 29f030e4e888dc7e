#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slitpath/apparatus.hpp"
#include "slitpath/units.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace slitpath;

TEST_CASE("particle kinematics from mass and energy") {
  const auto p = make_particle(1.0, 0.5);
  CHECK(p.momentum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.velocity == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.de_broglie_wavelength == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));

  const auto q = make_particle(1.0, 2.0);
  CHECK(q.momentum == doctest::Approx(2.0));
  CHECK(q.velocity == doctest::Approx(2.0));
  CHECK(q.de_broglie_wavelength == doctest::Approx(std::numbers::pi));
}

TEST_CASE("particle rejects non-positive input") {
  CHECK_THROWS_AS(make_particle(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_particle(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_particle(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_particle(1.0, std::nan("")), std::invalid_argument);
}

TEST_CASE("wavelength-momentum and velocity-momentum relations hold to rounding") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_u(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const double m = std::pow(10.0, log_u(rng));
    const double e = std::pow(10.0, log_u(rng));
    const auto p = make_particle(m, e);
    CHECK(p.de_broglie_wavelength * p.momentum == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(p.velocity * p.mass == doctest::Approx(p.momentum).epsilon(1e-15));
  }
}

TEST_CASE("centimetre to bohr conversion") {
  CHECK(units::cm_to_bohr(1.0) == doctest::Approx(1.8897261246e8).epsilon(1e-10));
  CHECK(units::cm_to_bohr(5.29) == doctest::Approx(9.997e8).epsilon(1e-3));
  CHECK(units::cm_to_bohr(0.0) == 0.0);
}

TEST_CASE("with_separation keeps the midpoint") {
  auto a = desk::apparatus(4.0);
  a.slit_A_center += 10.0;
  a.slit_B_center += 10.0;
  const auto b = a.with_separation(1.0);
  CHECK(b.separation() == doctest::Approx(1.0));
  CHECK(0.5 * (b.slit_A_center + b.slit_B_center) == doctest::Approx(10.0));
}

TEST_CASE("desk configuration validates cleanly") {
  const auto r = validate(desk::apparatus(), desk::detector(), desk::particle());
  CHECK(r.ok);
  CHECK(r.issues.empty());
  CHECK_NOTHROW(require_valid(desk::apparatus(), desk::detector(), desk::particle()));
}

TEST_CASE("overlapping slits are an error") {
  auto a = desk::apparatus();
  a = a.with_separation(0.5 * a.slit_width);
  const auto r = validate(a, desk::detector(), desk::particle());
  CHECK_FALSE(r.ok);
  CHECK(r.has("slits_overlap"));
  CHECK(r.summary().find("slits overlap") != std::string::npos);
  CHECK_THROWS_AS(require_valid(a, desk::detector(), desk::particle()), ValidationError);
}

TEST_CASE("small detector radius warns about coverage") {
  auto det = desk::detector();
  det.radius_rho = desk::apparatus().slit_width / 4.0;
  det.depth_epsilon = det.radius_rho;
  const auto r = validate(desk::apparatus(), det, desk::particle());
  CHECK(r.ok);
  CHECK(r.has("detector_not_covering"));
  CHECK(r.summary().find("detector does not cover slit B") != std::string::npos);
}

TEST_CASE("coarse aperture grid warns about aliasing") {
  // Spacing bound lambda L2 / (2 span): 0.0099346 * 1e5 / (2 * 15003.88) = 0.0331 bohr.
  auto a = desk::apparatus();
  a.aperture_samples = 2;  // spacing 0.05
  auto r = validate(a, desk::detector(), desk::particle());
  CHECK(r.ok);
  CHECK(r.has("aliasing_risk"));
  CHECK(r.summary().find("aliasing risk") != std::string::npos);

  a.aperture_samples = 4;  // spacing 0.025
  r = validate(a, desk::detector(), desk::particle());
  CHECK_FALSE(r.has("aliasing_risk"));
}

TEST_CASE("wide slit flags the near field") {
  // Fresnel number w^2 / (lambda L2) = 400 / 993 > 0.1.
  auto a = desk::apparatus(50.0);
  a.slit_width = 20.0;
  a.aperture_samples = 4096;
  const auto r = validate(a, desk::detector(), desk::particle());
  CHECK(r.has("near_field"));
}

TEST_CASE("invalid geometry and detector values are errors") {
  auto a = desk::apparatus();
  a.L1 = 0.0;
  CHECK(validate(a, desk::detector(), desk::particle()).has("bad_L1"));

  a = desk::apparatus();
  a.screen_samples = 1;
  CHECK(validate(a, desk::detector(), desk::particle()).has("bad_screen"));

  auto det = desk::detector();
  det.detection_probability_override = 1.5;
  CHECK(validate(desk::apparatus(), det, desk::particle()).has("bad_override"));

  det = desk::detector();
  det.depth_epsilon = 2.0e5;
  CHECK(validate(desk::apparatus(), det, desk::particle()).has("bad_depth"));

  det = desk::detector();
  det.photon_wavelength = -1.0;
  CHECK(validate(desk::apparatus(), det, desk::particle()).has("bad_photon_wavelength"));

  // A disabled detector is not inspected.
  det.enabled = false;
  CHECK(validate(desk::apparatus(), det, desk::particle()).ok);
}

TEST_CASE("validate is pure") {
  auto a = desk::apparatus();
  a.aperture_samples = 2;
  const auto r1 = validate(a, desk::detector(), desk::particle());
  const auto r2 = validate(a, desk::detector(), desk::particle());
  CHECK(r1.summary() == r2.summary());
  CHECK(r1.issues.size() == r2.issues.size());
}
