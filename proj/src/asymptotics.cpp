#include "hkbose/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "hkbose/errors.hpp"

namespace hkbose {

namespace {
constexpr cplx kI{0.0, 1.0};
}

cplx saddle_amplitude(cplx x, double tau_tilde) {
  return std::exp(0.5 * kI * tau_tilde * x) * std::sqrt(1.0 - kI * tau_tilde * x);
}

cplx saddle_exponent(cplx x, double tau_tilde) {
  return std::log(x) - x + kI * tau_tilde * (0.5 * x * x - x);
}

cplx saddle_exponent_derivative(cplx x, double tau_tilde) {
  return 1.0 / x - 1.0 + kI * tau_tilde * (x - 1.0);
}

SaddleData saddle_points(double tau_tilde) {
  if (tau_tilde == 0.0) throw DegenerateInput("saddle_points: tau_tilde = 0 has no second critical point");
  SaddleData out;
  out.x0 = 1.0;
  out.x1 = 1.0 / (kI * tau_tilde);
  out.f_at_x0 = std::exp(0.5 * kI * tau_tilde) * std::sqrt(1.0 - kI * tau_tilde);
  out.S_at_x0 = -(1.0 + 0.5 * kI * tau_tilde);
  out.S_second_deriv_at_x0 = -(1.0 - kI * tau_tilde);
  return out;
}

double hk_spectrum_lo(const ModelParams &params, int n) {
  const double nd = n;
  return params.omega_e * nd + 0.5 * params.interaction * nd * (nd - 1.0);
}

double hk_spectrum_no_theta(const ModelParams &params, int n) {
  const double nd = n;
  return params.omega_e * (nd + 0.5) + 0.5 * params.interaction * nd * (nd + 1.0);
}

double fga_spectrum(const ModelParams &params, int n) {
  const double nd = n;
  return params.omega_e * (nd - 0.5) + 0.5 * params.interaction * nd * (nd - 2.0);
}

double hk_phase_nnlo(int n, double tau) {
  const double nd = n;
  return 0.5 * nd * (nd - 1.0) * tau + 0.125 * tau;
}

cplx g_n_nnlo(int n, double tau) { return std::polar(1.0, -hk_phase_nnlo(n, tau)); }

cplx g_n_leading_order(int n, double tau) {
  const double nd = n;
  const double norm = n == 0 ? 1.0 : stirling_norm(n);
  return norm * std::polar(1.0, -0.5 * tau * nd * (nd - 1.0));
}

cplx fga_closed_form(const ModelParams &params, int n, double t) {
  const double nd = n;
  const double ut = params.interaction * t;
  const cplx phase = std::polar(1.0, -(nd - 0.5) * params.omega_e * t - 0.5 * ut * nd * (nd - 2.0));
  return phase / std::sqrt(cplx(1.0, -nd * ut));
}

double stirling_norm(int n) {
  if (n < 1) throw DegenerateInput("stirling_norm needs n >= 1");
  const double nd = n;
  return std::exp(0.5 * std::log(2.0 * std::numbers::pi * nd) + nd * std::log(nd) - nd - std::lgamma(nd + 1.0));
}

}  // namespace hkbose
