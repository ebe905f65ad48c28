#include "hkbose/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hkbose/errors.hpp"

namespace hkbose {

namespace {

constexpr int kMaxRefinements = 6;
constexpr double kPi = std::numbers::pi;

double wrap_to_pi(double x) { return std::remainder(x, 2.0 * kPi); }

std::vector<Eigen::Index> window_indices(const PhaseCurve &curve, std::pair<double, double> window) {
  std::vector<Eigen::Index> out;
  const double eps = 1e-12 * std::max(1.0, std::abs(window.second));
  for (Eigen::Index k = 0; k < curve.size(); ++k) {
    if (curve.tau(k) >= window.first - eps && curve.tau(k) <= window.second + eps) out.push_back(k);
  }
  return out;
}

}  // namespace

std::pair<double, double> tau_window(int n, double tilde_lo, double tilde_hi) {
  const double scale = n > 0 ? static_cast<double>(n) : 1.0;
  return {tilde_lo / scale, tilde_hi / scale};
}

PhaseCurve build_phase_curve(int n, double tau_max, int steps, RadialCache &cache, Method method,
                             const MethodOptions &options) {
  if (steps < 1) throw ConfigError("steps must be positive");
  if (!(tau_max >= 0.0)) throw ConfigError("tau_max must be non-negative");
  if (method == Method::Exact) throw ConfigError("phase curves are built from radial integrals, not EXACT");
  const RadialKernel kernel = RadialKernel::for_method(method, options);
  const double nd = n;
  // Generous bound on |d phi / d tau|; keeps the grid from aliasing.
  const double rate_bound = 0.5 * nd * (nd + 1.0) + 1.0;

  for (int refinement = 0; refinement <= kMaxRefinements; ++refinement) {
    const int count = steps << refinement;
    const double dtau = tau_max / count;
    if (rate_bound * dtau >= 0.5 * kPi) continue;
    PhaseCurve curve;
    curve.n = n;
    curve.refinements = refinement;
    curve.tau = Eigen::ArrayXd::LinSpaced(count + 1, 0.0, tau_max);
    curve.values.resize(count + 1);
    for (int k = 0; k <= count; ++k) curve.values(k) = cache.get(n, curve.tau(k), kernel).value;
    curve.modulus_sq = curve.values.abs2();

    curve.phase.resize(count + 1);
    curve.phase(0) = 0.0;
    bool aliased = false;
    for (int k = 1; k <= count && !aliased; ++k) {
      // g = |g| exp(-i phi)
      const double step = wrap_to_pi(-std::arg(curve.values(k)) - curve.phase(k - 1));
      if (std::abs(step) >= 0.5 * kPi) aliased = true;
      curve.phase(k) = curve.phase(k - 1) + step;
    }
    if (aliased) continue;
    curve.delta_phi = curve.phase - 0.5 * nd * (nd - 1.0) * curve.tau;
    return curve;
  }
  throw UnwrapFailure("build_phase_curve: phase increments stay above pi/2 after " +
                      std::to_string(kMaxRefinements) + " refinements (n = " + std::to_string(n) + ")");
}

PhaseCurve build_phase_curve(int n, double tau_max, int steps, const PrecisionConfig &config, Method method,
                             const MethodOptions &options) {
  RadialCache cache(config);
  return build_phase_curve(n, tau_max, steps, cache, method, options);
}

SlopeFit fit_delta_phi_slope(const PhaseCurve &curve, std::pair<double, double> window) {
  const auto idx = window_indices(curve, window);
  const auto m = static_cast<Eigen::Index>(idx.size());
  if (m < 10) throw InsufficientData("fit_delta_phi_slope: " + std::to_string(m) + " samples in window, need 10");

  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = curve.tau(idx[i]);
    rhs(i) = curve.delta_phi(idx[i]);
  }
  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd residual = rhs - design * beta;
  const double sigma2 = residual.squaredNorm() / static_cast<double>(m - 2);
  const Eigen::Matrix2d covariance = sigma2 * (design.transpose() * design).inverse();

  SlopeFit fit;
  fit.intercept = beta(0);
  fit.slope = beta(1);
  fit.stderr = std::sqrt(std::max(covariance(1, 1), 0.0));
  fit.samples = m;
  return fit;
}

PlateauEstimate estimate_plateau(const PhaseCurve &curve, std::pair<double, double> window) {
  const auto idx = window_indices(curve, window);
  if (idx.size() < 2) throw InsufficientData("estimate_plateau: fewer than 2 samples in window");
  Eigen::ArrayXd modulus(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) modulus(static_cast<Eigen::Index>(i)) = std::sqrt(curve.modulus_sq(idx[i]));

  PlateauEstimate out;
  out.n = curve.n;
  out.window = window;
  out.r_n = modulus.mean();
  out.spread = modulus.maxCoeff() - modulus.minCoeff();
  out.samples = modulus.size();
  return out;
}

}  // namespace hkbose
