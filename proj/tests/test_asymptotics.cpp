#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hkbose/asymptotics.hpp"
#include "hkbose/errors.hpp"
#include "hkbose/propagator.hpp"

using namespace hkbose;

TEST_CASE("saddle points") {
  for (double tt : {0.5, 2.0, 7.0}) {
    const SaddleData d = saddle_points(tt);
    CHECK(std::abs(saddle_exponent_derivative(d.x0, tt)) < 1e-14);
    CHECK(std::abs(saddle_exponent_derivative(d.x1, tt)) < 1e-12);
    CHECK(std::abs(saddle_amplitude(d.x1, tt)) < 1e-12);
    CHECK(std::abs(d.f_at_x0 - saddle_amplitude(d.x0, tt)) < 1e-14);
    CHECK(std::abs(d.S_at_x0 - saddle_exponent(d.x0, tt)) < 1e-14);
    const double h = 1e-4;
    const cplx second = (saddle_exponent_derivative(d.x0 + h, tt) - saddle_exponent_derivative(d.x0 - h, tt)) / (2.0 * h);
    CHECK(std::abs(second - d.S_second_deriv_at_x0) < 1e-6);
  }
  CHECK_THROWS_AS(saddle_points(0.0), DegenerateInput);
}

TEST_CASE("spectra") {
  const ModelParams params{1.3, -0.35};
  for (int n = 0; n <= 30; ++n) {
    CHECK(hk_spectrum_lo(params, n) == exact_energy(params, n));
    CHECK(hk_spectrum_no_theta(params, n) - exact_energy(params, n) ==
          doctest::Approx(0.5 * params.omega_e + params.interaction * n).epsilon(1e-13));
    CHECK(fga_spectrum(params, n) == doctest::Approx(exact_energy(params, n) - 0.5 * params.omega_e -
                                                     0.5 * params.interaction * n)
                                         .epsilon(1e-13));
  }
  // n = 1, U = 0.5, omega = 1: 0.5 + 0.25 * (-1)
  CHECK(fga_spectrum({1.0, 0.5}, 1) == 0.25);
}

TEST_CASE("FGA closed form has modulus (1 + n^2 U^2 t^2)^(-1/4)") {
  const ModelParams params{1.0, 0.2};
  for (int n : {1, 4, 17}) {
    for (double t : {0.0, 0.3, 5.0}) {
      const double nut = n * params.interaction * t;
      CHECK(std::norm(fga_closed_form(params, n, t)) * std::sqrt(1.0 + nut * nut) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  // with the root factor stripped, the phase rate is fga_spectrum
  const double t = 1e-3;
  const cplx ratio = fga_closed_form(params, 6, t) * std::sqrt(cplx(1.0, -6.0 * params.interaction * t));
  CHECK(-std::arg(ratio) / t == doctest::Approx(fga_spectrum(params, 6)).epsilon(1e-3));
}

TEST_CASE("FGA quadrature approaches the closed form modulus") {
  const PrecisionConfig config;
  const double tt = 1.0;
  const double limit = 1.0 / std::sqrt(1.0 + tt * tt);
  double previous = 1.0;
  for (int n : {5, 10, 20, 40}) {
    const double error = std::abs(std::norm(g_n_fga(n, tt / n, config).value) - limit);
    CAPTURE(n);
    CHECK(error < previous);
    previous = error;
  }
  CHECK(previous < 0.04);
}

TEST_CASE("Stirling normalization") {
  CHECK(stirling_norm(1) == doctest::Approx(std::sqrt(2.0 * std::numbers::pi) / std::exp(1.0)).epsilon(1e-14));
  CHECK(stirling_norm(100) == doctest::Approx(1.0 - 1.0 / 1200.0).epsilon(1e-6));
  CHECK_THROWS_AS(stirling_norm(0), DegenerateInput);
}

TEST_CASE("steepest descent tracks the quadrature at large n") {
  const PrecisionConfig config;
  const int n = 30;
  const double tau = 0.2;  // tau_tilde = 6
  const cplx g = g_n(n, tau, config).value;
  CHECK(std::abs(g - g_n_leading_order(n, tau)) < 0.05);
  // the NNLO phase removes the residual tau/8 drift
  const double lo_error = std::abs(std::arg(g / g_n_leading_order(n, tau)));
  const double nnlo_error = std::abs(std::arg(g / g_n_nnlo(n, tau)));
  CHECK(nnlo_error < 5e-3);
  CHECK(nnlo_error < lo_error);
  CHECK(hk_phase_nnlo(n, tau) == doctest::Approx(0.5 * 30 * 29 * 0.2 + 0.025));
}
