#include "hkbose/propagator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "hkbose/errors.hpp"

namespace hkbose {

std::string to_string(Method method) {
  switch (method) {
    case Method::Exact:
      return "exact";
    case Method::HK:
      return "hk";
    case Method::FGA:
      return "fga";
    case Method::HKNoTheta:
      return "hk-no-theta";
  }
  return "unknown";
}

Method parse_method(const std::string &text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "exact") return Method::Exact;
  if (lower == "hk") return Method::HK;
  if (lower == "fga") return Method::FGA;
  if (lower == "hk-no-theta" || lower == "hk_no_theta") return Method::HKNoTheta;
  throw ConfigError("unknown method '" + text + "'");
}

RadialKernel RadialKernel::for_method(Method method, const MethodOptions &options) {
  switch (method) {
    case Method::HK:
      return {0.5, true, 0.0};
    case Method::HKNoTheta:
      return {-0.5, true, 0.5};
    case Method::FGA:
      return options.fga_keep_theta ? RadialKernel{1.0, false, -0.5} : RadialKernel{0.0, false, 0.0};
    case Method::Exact:
      break;
  }
  throw ConfigError("exact propagation has no radial kernel");
}

namespace {

template <typename T>
auto make_integrand(int n, double tau_in, const RadialKernel &kernel) {
  const T tau = ScalarTraits<T>::from(tau_in);
  const T order = ScalarTraits<T>::from(static_cast<double>(n));
  const T linear = ScalarTraits<T>::from(static_cast<double>(n) - kernel.shift);
  const T log_nfact = ScalarTraits<T>::lgamma(ScalarTraits<T>::from(n + 1.0));
  const bool root = kernel.stability_root;
  return [=](const T &s) {
    using std::exp;
    using std::log;
    const T zero = ScalarTraits<T>::from(0.0);
    if (!(s > zero)) return Complex<T>{ScalarTraits<T>::from(n == 0 ? 1.0 : 0.0), zero};
    // e^{-s} s^n / n! in log space; no overflow for any n
    const T envelope = exp(order * log(s) - s - log_nfact);
    const T phase = tau * (s * s * ScalarTraits<T>::from(0.5) - linear * s);
    Complex<T> value = envelope * unit_phase(phase);
    if (root) value = value * principal_sqrt(Complex<T>{ScalarTraits<T>::from(1.0), -(tau * s)});
    return value;
  };
}

}  // namespace

IntegralResult radial_integral(int n, double tau, const RadialKernel &kernel, const PrecisionConfig &config) {
  if (n < 0) throw ConfigError("occupation number must be non-negative");
  config.validate();
  if (config.use_double(n, tau)) {
    auto result = integrate_radial<double>(make_integrand<double>(n, tau, kernel), n, config);
    result.working_digits = 16;
    return result;
  }
  const int digits = config.digits_for(n, tau);
  PrecisionScope scope(digits);
  auto result = integrate_radial<BigFloat>(make_integrand<BigFloat>(n, tau, kernel), n, config);
  result.working_digits = digits;
  return result;
}

IntegralResult g_n(int n, double tau, const PrecisionConfig &config) {
  return radial_integral(n, tau, RadialKernel::for_method(Method::HK), config);
}

IntegralResult g_n_fga(int n, double tau, const PrecisionConfig &config, const MethodOptions &options) {
  return radial_integral(n, tau, RadialKernel::for_method(Method::FGA, options), config);
}

IntegralResult g_n_no_theta(int n, double tau, const PrecisionConfig &config) {
  return radial_integral(n, tau, RadialKernel::for_method(Method::HKNoTheta), config);
}

PropagatorSample matrix_element(const ModelParams &params, Method method, int n, double t,
                                const PrecisionConfig &config, const MethodOptions &options) {
  params.validate();
  if (n < 0) throw ConfigError("occupation number must be non-negative");
  PropagatorSample sample;
  sample.n = n;
  sample.t = t;
  sample.tau = params.interaction * t;
  sample.method = method;
  if (method == Method::Exact) {
    sample.value = exact_propagator_element(params, n, t);
    return sample;
  }
  const RadialKernel kernel = RadialKernel::for_method(method, options);
  const IntegralResult g = radial_integral(n, sample.tau, kernel, config);
  sample.value = std::polar(1.0, -(n + kernel.zero_point) * params.omega_e * t) * g.value;
  sample.error_estimate = g.error_estimate;
  return sample;
}

bool OffDiagonalEstimate::vanishes_within(double k) const {
  return std::abs(value.real()) <= k * stderr_re && std::abs(value.imag()) <= k * stderr_im;
}

OffDiagonalEstimate off_diagonal_check(const ModelParams &params, int n, int n_prime, double t, long samples,
                                       std::uint64_t seed) {
  if (n == n_prime) throw ConfigError("off_diagonal_check needs n != n'");
  return phase_space_element(params, n, n_prime, t, samples, seed);
}

OffDiagonalEstimate phase_space_element(const ModelParams &params, int n, int n_prime, double t, long samples,
                                        std::uint64_t seed) {
  params.validate();
  if (n < 0 || n_prime < 0) throw ConfigError("occupation numbers must be non-negative");
  if (samples < 2) throw ConfigError("off_diagonal_check needs at least two samples");

  std::mt19937_64 rng(seed);
  // e^{-|z|^2}/pi: independent normal components with variance 1/2
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const double log_norm = 0.5 * (std::lgamma(n + 1.0) + std::lgamma(n_prime + 1.0));

  double sum_re = 0.0;
  double sum_im = 0.0;
  double sq_re = 0.0;
  double sq_im = 0.0;
  for (long k = 0; k < samples; ++k) {
    const PhasePoint z0{{gauss(rng), gauss(rng)}};
    // <n|z_t> <z0|n'> with the Gaussian weights absorbed into the sampling
    const cplx zt = classical_trajectory(params, z0, t);
    const cplx overlap = std::pow(zt, n) * std::pow(std::conj(z0.z), n_prime) * std::exp(-log_norm);
    const cplx term = full_prefactor(params, z0, t) * std::polar(1.0, classical_action(params, z0, t)) * overlap;
    sum_re += term.real();
    sum_im += term.imag();
    sq_re += term.real() * term.real();
    sq_im += term.imag() * term.imag();
  }
  const double count = static_cast<double>(samples);
  OffDiagonalEstimate out;
  out.samples = samples;
  out.value = {sum_re / count, sum_im / count};
  const double var_re = (sq_re / count - out.value.real() * out.value.real()) * count / (count - 1.0);
  const double var_im = (sq_im / count - out.value.imag() * out.value.imag()) * count / (count - 1.0);
  out.stderr_re = std::sqrt(std::max(var_re, 0.0) / count);
  out.stderr_im = std::sqrt(std::max(var_im, 0.0) / count);
  return out;
}

IntegralResult RadialCache::get(int n, double tau, const RadialKernel &kernel) {
  const Key key{n, tau, kernel.shift, kernel.stability_root};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
  }
  // Computed outside the lock so independent keys proceed in parallel.
  IntegralResult result = radial_integral(n, tau, kernel, config_);
  std::lock_guard<std::mutex> lock(mutex_);
  table_.emplace(key, result);
  return result;
}

std::size_t RadialCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return table_.size();
}

}  // namespace hkbose
