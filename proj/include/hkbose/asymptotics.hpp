#ifndef HKBOSE_ASYMPTOTICS_HPP
#define HKBOSE_ASYMPTOTICS_HPP

#include <complex>

#include "hkbose/model.hpp"

namespace hkbose {

// Steepest-descent data for g_n at large n with tau_tilde = n tau fixed,
// after the substitution s = n x:
//   g_n = n^{n+1}/n! int dx f(x) exp(n S(x)),
//   f(x) = exp(i tau_tilde x / 2) sqrt(1 - i tau_tilde x),
//   S(x) = ln x - x + i tau_tilde (x^2/2 - x).
struct SaddleData {
  cplx x0{1.0, 0.0};  // dominant critical point
  cplx x1{};          // critical point killed by f(x1) = 0
  cplx f_at_x0{};
  cplx S_at_x0{};
  cplx S_second_deriv_at_x0{};
};

cplx saddle_amplitude(cplx x, double tau_tilde);  // f(x)
cplx saddle_exponent(cplx x, double tau_tilde);   // S(x)
cplx saddle_exponent_derivative(cplx x, double tau_tilde);

// Throws DegenerateInput for tau_tilde == 0, where x1 does not exist.
SaddleData saddle_points(double tau_tilde);

// Leading-order HK spectrum; identical to the exact one.
double hk_spectrum_lo(const ModelParams &params, int n);

// Spectrum obtained when theta_t is dropped: omega_e (n + 1/2) + U n (n + 1)/2.
double hk_spectrum_no_theta(const ModelParams &params, int n);

// Phase rate of the FGA closed form: (n - 1/2) omega_e + U n (n - 2)/2.
double fga_spectrum(const ModelParams &params, int n);

// phi_n(tau) = n (n - 1) tau / 2 + tau / 8 from the shifted saddle
// x0 = 1 - 1/(2n). Derived for tau_tilde >> 1; no claim is made for small
// tau_tilde.
double hk_phase_nnlo(int n, double tau);

// exp(-i phi_n(tau)) with the NNLO phase above.
cplx g_n_nnlo(int n, double tau);

// Leading steepest-descent value sqrt(2 pi n)(n/e)^n/n! exp(-i tau n(n-1)/2).
cplx g_n_leading_order(int n, double tau);

// Semiclassical FGA element
//   exp(-i (n - 1/2) omega_e t) exp(-i U n (n - 2) t / 2) / sqrt(1 - i n U t).
cplx fga_closed_form(const ModelParams &params, int n, double t);

// sqrt(2 pi n) (n/e)^n / n!, evaluated in log space.
double stirling_norm(int n);

}  // namespace hkbose

#endif  // HKBOSE_ASYMPTOTICS_HPP
