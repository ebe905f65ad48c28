#ifndef HKBOSE_SPECTRAL_HPP
#define HKBOSE_SPECTRAL_HPP

#include <Eigen/Dense>
#include <utility>

#include "hkbose/propagator.hpp"

namespace hkbose {

// g_n sampled on an ascending tau grid in the polar form g = |g| exp(-i phi)
// with phi continuous and phi(0) = 0.
struct PhaseCurve {
  int n = 0;
  Eigen::ArrayXd tau;
  Eigen::ArrayXcd values;
  Eigen::ArrayXd modulus_sq;
  Eigen::ArrayXd phase;
  Eigen::ArrayXd delta_phi;  // phase - n (n - 1) tau / 2
  int refinements = 0;

  Eigen::Index size() const { return tau.size(); }
};

struct SlopeFit {
  double slope = 0.0;
  double stderr = 0.0;
  double intercept = 0.0;
  Eigen::Index samples = 0;
};

struct PlateauEstimate {
  int n = 0;
  double r_n = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  double spread = 0.0;
  Eigen::Index samples = 0;
};

// A window over the semiclassical variable tau_tilde = n tau, translated to
// tau. For n = 0 the scale factor is taken as 1.
std::pair<double, double> tau_window(int n, double tilde_lo, double tilde_hi);

// Samples the radial integral of `method` on tau_k = k tau_max / steps and
// unwraps the phase by nearest-branch continuation. The grid is doubled (up
// to 6 times) while any step could alias past pi; throws UnwrapFailure if it
// still does.
PhaseCurve build_phase_curve(int n, double tau_max, int steps, const PrecisionConfig &config,
                             Method method = Method::HK, const MethodOptions &options = {});

// Same, drawing samples from a shared cache.
PhaseCurve build_phase_curve(int n, double tau_max, int steps, RadialCache &cache, Method method = Method::HK,
                             const MethodOptions &options = {});

// Ordinary least squares of delta_phi against tau on [lo, hi] with an affine
// model. Throws InsufficientData below 10 samples.
SlopeFit fit_delta_phi_slope(const PhaseCurve &curve, std::pair<double, double> window);

// Mean of |g_n| over the window and its max - min spread. Throws
// InsufficientData below 2 samples.
PlateauEstimate estimate_plateau(const PhaseCurve &curve, std::pair<double, double> window);

}  // namespace hkbose

#endif  // HKBOSE_SPECTRAL_HPP
