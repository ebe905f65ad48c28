#ifndef HKBOSE_MODEL_HPP
#define HKBOSE_MODEL_HPP

#include <complex>

namespace hkbose {

using cplx = std::complex<double>;

// H = omega_e a^+ a + U/2 a^+ a^+ a a on a single site. U may be negative.
struct ModelParams {
  double omega_e = 1.0;
  double interaction = 0.0;

  // Throws ConfigError unless both fields are finite.
  void validate() const;
};

// Coherent-state label; |z|^2 plays the role of the occupation number.
struct PhasePoint {
  cplx z{};

  double occupation() const { return std::norm(z); }
};

// Everything the HK integrand needs from one classical trajectory.
struct ClassicalIngredients {
  cplx trajectory_value{};
  double action = 0.0;
  cplx stability_factor{1.0, 0.0};
  double phase_correction = 0.0;
  cplx full_prefactor{1.0, 0.0};
};

// Large-occupation limit at fixed U * n_bar.
struct SemiclassicalScale {
  double n_bar = 1.0;
  double u_nbar = 0.0;

  static SemiclassicalScale from(const ModelParams &params, double n_bar);
};

double exact_energy(const ModelParams &params, int n);

// <n| exp(-i t H) |n>
cplx exact_propagator_element(const ModelParams &params, int n, double t);

// z_t = exp[-i t (omega_e + U |z0|^2)] z0
cplx classical_trajectory(const ModelParams &params, PhasePoint z0, double t);

// S_t = U t |z0|^4 / 2
double classical_action(const ModelParams &params, PhasePoint z0, double t);

// R_t^HK = sqrt(dz_t/dz0). The principal root is continuous in t here because
// 1 - i U t |z0|^2 never crosses the negative real axis.
cplx stability_factor(const ModelParams &params, PhasePoint z0, double t);

// theta_t = (omega_e/2 + U |z0|^2) t
double phase_correction(const ModelParams &params, PhasePoint z0, double t);

// R_t = exp(i theta_t) R_t^HK = sqrt(1 - i U t |z0|^2) exp(i U t |z0|^2 / 2)
cplx full_prefactor(const ModelParams &params, PhasePoint z0, double t);

ClassicalIngredients classical_ingredients(const ModelParams &params, PhasePoint z0, double t);

}  // namespace hkbose

#endif  // HKBOSE_MODEL_HPP
