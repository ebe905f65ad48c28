#include <cmath>

#include "doctest.h"
#include "hkbose/errors.hpp"
#include "hkbose/spectral.hpp"

using namespace hkbose;

TEST_CASE("tau windows scale with n") {
  const auto w = tau_window(20, 2.0, 10.0);
  CHECK(w.first == doctest::Approx(0.1));
  CHECK(w.second == doctest::Approx(0.5));
  CHECK(tau_window(0, 1.0, 5.0).second == 5.0);
}

TEST_CASE("zero tau grid is trivial") {
  const PhaseCurve curve = build_phase_curve(7, 0.0, 10, PrecisionConfig{});
  CHECK(curve.size() == 11);
  CHECK((curve.phase.abs() < 1e-12).all());
  CHECK(((curve.modulus_sq - 1.0).abs() < 1e-10).all());
}

TEST_CASE("unwrapped phase reconstructs the samples") {
  const PhaseCurve curve = build_phase_curve(12, 0.6, 60, PrecisionConfig{});
  CHECK(curve.phase(0) == 0.0);
  for (Eigen::Index k = 0; k < curve.size(); ++k) {
    const cplx rebuilt = std::polar(std::sqrt(curve.modulus_sq(k)), -curve.phase(k));
    CHECK(std::abs(rebuilt - curve.values(k)) < 1e-10 * std::max(1.0, std::abs(curve.values(k))));
    CHECK(curve.delta_phi(k) == doctest::Approx(curve.phase(k) - 66.0 * curve.tau(k)));
  }
  for (Eigen::Index k = 1; k < curve.size(); ++k) CHECK(std::abs(curve.phase(k) - curve.phase(k - 1)) < M_PI);
}

TEST_CASE("coarse grids are refined") {
  RadialCache cache{PrecisionConfig{}};
  const PhaseCurve curve = build_phase_curve(10, 1.0, 4, cache);
  CHECK(curve.refinements > 0);
  CHECK(curve.size() == (4 << curve.refinements) + 1);
  CHECK_THROWS_AS(build_phase_curve(3, 1e4, 1, cache), UnwrapFailure);
  CHECK_THROWS_AS(build_phase_curve(3, 1.0, 10, cache, Method::Exact), ConfigError);
  CHECK_THROWS_AS(build_phase_curve(3, 1.0, 0, cache), ConfigError);
}

TEST_CASE("delta phi slope is close to 1/8 and grid stable") {
  RadialCache cache{PrecisionConfig{}};
  const int n = 10;
  const auto window = tau_window(n, 2.0, 10.0);
  const PhaseCurve coarse = build_phase_curve(n, window.second, 100, cache);
  const PhaseCurve fine = build_phase_curve(n, window.second, 200, cache);
  const SlopeFit a = fit_delta_phi_slope(coarse, window);
  const SlopeFit b = fit_delta_phi_slope(fine, window);
  CHECK(a.slope == doctest::Approx(0.125).epsilon(0.04));
  CHECK(std::abs(a.slope - b.slope) < std::max(a.stderr, b.stderr));
  CHECK(a.samples == 81);
}

TEST_CASE("fits reject thin windows") {
  const PhaseCurve curve = build_phase_curve(5, 1.0, 20, PrecisionConfig{});
  CHECK_THROWS_AS(fit_delta_phi_slope(curve, {0.0, 0.3}), InsufficientData);
  CHECK_THROWS_AS(estimate_plateau(curve, {0.51, 0.52}), InsufficientData);
  const PlateauEstimate p = estimate_plateau(curve, {0.2, 1.0});
  CHECK(p.samples == 17);
  CHECK(p.spread >= 0.0);
  CHECK(p.r_n > 0.8);
  CHECK(p.r_n < 1.0);
}
