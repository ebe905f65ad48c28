#include "hkbose/model.hpp"

#include <cmath>

#include "hkbose/errors.hpp"

namespace hkbose {

namespace {
constexpr cplx kI{0.0, 1.0};
}

void ModelParams::validate() const {
  if (!std::isfinite(omega_e)) throw ConfigError("omega_e must be finite");
  if (!std::isfinite(interaction)) throw ConfigError("interaction (U) must be finite");
}

SemiclassicalScale SemiclassicalScale::from(const ModelParams &params, double n_bar) {
  if (!(n_bar > 0.0)) throw ConfigError("n_bar must be positive");
  return {n_bar, params.interaction * n_bar};
}

double exact_energy(const ModelParams &params, int n) {
  const double nd = n;
  return params.omega_e * nd + 0.5 * params.interaction * nd * (nd - 1.0);
}

cplx exact_propagator_element(const ModelParams &params, int n, double t) {
  return std::polar(1.0, -t * exact_energy(params, n));
}

cplx classical_trajectory(const ModelParams &params, PhasePoint z0, double t) {
  const double frequency = params.omega_e + params.interaction * z0.occupation();
  return std::polar(1.0, -t * frequency) * z0.z;
}

double classical_action(const ModelParams &params, PhasePoint z0, double t) {
  const double s = z0.occupation();
  return 0.5 * params.interaction * t * s * s;
}

cplx stability_factor(const ModelParams &params, PhasePoint z0, double t) {
  const double s = z0.occupation();
  const cplx root = std::sqrt(cplx(1.0, -params.interaction * t * s));
  return root * std::polar(1.0, -0.5 * t * (params.omega_e + params.interaction * s));
}

double phase_correction(const ModelParams &params, PhasePoint z0, double t) {
  return (0.5 * params.omega_e + params.interaction * z0.occupation()) * t;
}

cplx full_prefactor(const ModelParams &params, PhasePoint z0, double t) {
  const double ust = params.interaction * t * z0.occupation();
  return std::sqrt(cplx(1.0, -ust)) * std::exp(0.5 * kI * ust);
}

ClassicalIngredients classical_ingredients(const ModelParams &params, PhasePoint z0, double t) {
  return {classical_trajectory(params, z0, t), classical_action(params, z0, t), stability_factor(params, z0, t),
          phase_correction(params, z0, t), full_prefactor(params, z0, t)};
}

}  // namespace hkbose
