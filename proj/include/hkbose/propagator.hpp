#ifndef HKBOSE_PROPAGATOR_HPP
#define HKBOSE_PROPAGATOR_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "hkbose/model.hpp"
#include "hkbose/quadrature.hpp"

namespace hkbose {

enum class Method { Exact, HK, FGA, HKNoTheta };

std::string to_string(Method method);
// Accepts exact, hk, fga, hk-no-theta (case-insensitive); throws ConfigError.
Method parse_method(const std::string &text);

struct MethodOptions {
  // FGA keeps the zero-point phase theta_t and only drops R_t^HK. Setting
  // this to false drops the whole prefactor (R_t = 1).
  bool fga_keep_theta = true;
};

// The radial integrals of every method share the form
//   (1/n!) int_0^inf ds e^{-s} s^n [sqrt(1 - i tau s)] exp[i tau (s^2/2 - (n - shift) s)]
// and differ only in `shift` and in whether the square-root factor is kept.
struct RadialKernel {
  double shift = 0.5;
  bool stability_root = true;
  // Extra harmonic phase rate: the element carries exp(-i (n + zero_point) omega_e t).
  double zero_point = 0.0;

  static RadialKernel for_method(Method method, const MethodOptions &options = {});
};

struct PropagatorSample {
  int n = 0;
  double tau = 0.0;
  double t = 0.0;
  cplx value{1.0, 0.0};
  Method method = Method::Exact;
  double error_estimate = 0.0;
};

// Integral for an arbitrary kernel, at the precision chosen by `config`.
IntegralResult radial_integral(int n, double tau, const RadialKernel &kernel, const PrecisionConfig &config);

// g_n(tau) = (1/n!) int ds e^{-s} s^n sqrt(1 - i tau s) exp[i tau (s^2/2 - (n - 1/2) s)]
IntegralResult g_n(int n, double tau, const PrecisionConfig &config);

// FGA counterpart (R_t^HK = 1). With theta_t kept the linear coefficient
// becomes n - 1 and the element carries exp(-i (n - 1/2) omega_e t); without
// theta_t it is n and exp(-i n omega_e t).
IntegralResult g_n_fga(int n, double tau, const PrecisionConfig &config, const MethodOptions &options = {});

// HK with theta_t = 0: linear coefficient n + 1/2, element phase
// exp(-i (n + 1/2) omega_e t).
IntegralResult g_n_no_theta(int n, double tau, const PrecisionConfig &config);

// Diagonal element <n|U(t)|n> for the requested method.
PropagatorSample matrix_element(const ModelParams &params, Method method, int n, double t,
                                const PrecisionConfig &config, const MethodOptions &options = {});

struct OffDiagonalEstimate {
  cplx value{};
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  long samples = 0;

  // |Re| and |Im| both within k standard errors of zero.
  bool vanishes_within(double k) const;
};

// Monte Carlo estimate of <n|U_HK(t)|n'> from the unreduced phase-space
// integral, sampling z0 from e^{-|z0|^2}/pi. Throws ConfigError when n == n'.
OffDiagonalEstimate off_diagonal_check(const ModelParams &params, int n, int n_prime, double t, long samples,
                                       std::uint64_t seed = 20170101);

// Same estimator without the n != n' restriction; for n == n' it is an
// independent Monte Carlo route to matrix_element(HK).
OffDiagonalEstimate phase_space_element(const ModelParams &params, int n, int n_prime, double t, long samples,
                                        std::uint64_t seed = 20170101);

// Thread-safe memo of radial integrals keyed on (n, tau, kernel, tolerance).
// tau is the natural key: omega_e only enters through a trivial phase.
class RadialCache {
 public:
  explicit RadialCache(PrecisionConfig config) : config_(config) {}

  IntegralResult get(int n, double tau, const RadialKernel &kernel);
  const PrecisionConfig &config() const { return config_; }
  std::size_t size() const;

 private:
  using Key = std::tuple<int, double, double, bool>;
  PrecisionConfig config_;
  mutable std::mutex mutex_;
  std::map<Key, IntegralResult> table_;
};

}  // namespace hkbose

#endif  // HKBOSE_PROPAGATOR_HPP
