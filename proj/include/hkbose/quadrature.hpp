#ifndef HKBOSE_QUADRATURE_HPP
#define HKBOSE_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <string>
#include <vector>

#include "hkbose/errors.hpp"
#include "hkbose/scalar.hpp"

namespace hkbose {

struct PrecisionConfig {
  // Decimal digits of the arithmetic backend. Ignored when auto_digits is set,
  // in which case choose_working_digits() decides per call.
  int working_digits = 32;
  bool auto_digits = true;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 20000;
  // Extra decades of envelope decay demanded beyond abs_tol at the cut-off.
  double truncation_margin = 2.0;
  // Intervals the range is split into before adaptive bisection starts.
  int initial_intervals = 16;

  void validate() const;

  // Requested accuracy in decimal digits, ceil(-log10(rel_tol)).
  int target_digits() const;

  // Digits actually used for an integral with envelope scale n.
  int digits_for(int n, double tau) const;

  // Double arithmetic is used for n <= 12 when rel_tol >= 1e-8.
  bool use_double(int n, double tau) const;
};

struct IntegralResult {
  std::complex<double> value{};
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = false;
  int working_digits = 16;
  double upper_limit = 0.0;
};

// Default precision policy: target + 10 + ceil(3.5 n), never below 16.
// tau_max is accepted for future policies; the default ignores it.
int choose_working_digits(int n, double tau_max, int target_digits);

// Upper integration limit for an envelope e^{-s} s^n / n!: starts from
// n + 40 + 10 sqrt(n+1) and grows until the envelope drops below
// abs_tol * 10^{-truncation_margin}.
double radial_cutoff(int n, const PrecisionConfig &config);

// 15-point Kronrod extension of the 7-point Gauss-Legendre rule, in QUADPACK
// layout: nodes[0..7] descending with nodes[7] == 0, Gauss nodes at odd
// indices, gauss_weights[j] belonging to nodes[2j+1].
template <typename T>
struct GaussKronrod15 {
  std::array<T, 8> nodes;
  std::array<T, 8> kronrod_weights;
  std::array<T, 4> gauss_weights;
};

// Rule computed at the working precision of the calling thread and cached
// per thread and precision.
template <typename T>
const GaussKronrod15<T> &gauss_kronrod15();

template <>
const GaussKronrod15<double> &gauss_kronrod15<double>();
template <>
const GaussKronrod15<BigFloat> &gauss_kronrod15<BigFloat>();

namespace detail {

template <typename T>
struct Panel {
  T lo;
  T hi;
  Complex<T> value;
  double error = 0.0;

  bool operator<(const Panel &other) const { return error < other.error; }
};

template <typename T, typename F>
Panel<T> gk15_panel(F &integrand, const T &lo, const T &hi, const GaussKronrod15<T> &rule) {
  const T half = ScalarTraits<T>::from(0.5);
  const T centre = (lo + hi) * half;
  const T radius = (hi - lo) * half;

  const Complex<T> f_centre = integrand(centre);
  Complex<T> kronrod = rule.kronrod_weights[7] * f_centre;
  Complex<T> gauss = rule.gauss_weights[3] * f_centre;
  for (int j = 0; j < 7; ++j) {
    const T dx = radius * rule.nodes[j];
    Complex<T> pair = integrand(centre - dx) + integrand(centre + dx);
    kronrod += rule.kronrod_weights[j] * pair;
    if (j % 2 == 1) gauss += rule.gauss_weights[j / 2] * pair;
  }
  kronrod = radius * kronrod;
  gauss = radius * gauss;
  const double error = std::abs((kronrod - gauss).to_std());
  return {lo, hi, std::move(kronrod), error};
}

}  // namespace detail

// Integrates a complex function over [0, s_max] by globally adaptive
// Gauss-Kronrod 15 bisection in scalar type T. `decay_scale` is the n of the
// e^{-s} s^n envelope and fixes s_max (see radial_cutoff). The integrand
// takes a T and returns Complex<T>. Throws NonConvergence when the
// subdivision budget is exhausted before the tolerance is met.
template <typename T, typename F>
IntegralResult integrate_radial(F &&integrand, int decay_scale, const PrecisionConfig &config) {
  config.validate();
  const auto &rule = gauss_kronrod15<T>();
  const double upper = radial_cutoff(decay_scale, config);
  const T s_max = ScalarTraits<T>::from(upper);

  std::priority_queue<detail::Panel<T>> panels;
  Complex<T> total{ScalarTraits<T>::from(0.0), ScalarTraits<T>::from(0.0)};
  double error = 0.0;
  const int pieces = std::max(1, config.initial_intervals);
  for (int k = 0; k < pieces; ++k) {
    T lo = s_max * ScalarTraits<T>::from(static_cast<double>(k) / pieces);
    T hi = s_max * ScalarTraits<T>::from(static_cast<double>(k + 1) / pieces);
    auto panel = detail::gk15_panel(integrand, lo, hi, rule);
    total += panel.value;
    error += panel.error;
    panels.push(std::move(panel));
  }

  int subdivisions = 0;
  auto tolerance = [&] { return std::max(config.rel_tol * std::abs(total.to_std()), config.abs_tol); };
  auto fresh_error = [&] {
    double fresh = 0.0;
    auto copy = panels;
    while (!copy.empty()) {
      fresh += copy.top().error;
      copy.pop();
    }
    return fresh;
  };
  while (true) {
    if (error <= tolerance()) {
      // The running error can drift from cancellation; confirm before stopping.
      error = fresh_error();
      if (error <= tolerance()) break;
    }
    if (subdivisions >= config.max_subdivisions) {
      throw NonConvergence("integrate_radial: " + std::to_string(subdivisions) +
                           " subdivisions exhausted (error estimate " + std::to_string(error) + ", n = " +
                           std::to_string(decay_scale) + ")");
    }
    detail::Panel<T> worst = panels.top();
    panels.pop();
    const T mid = (worst.lo + worst.hi) * ScalarTraits<T>::from(0.5);
    auto left = detail::gk15_panel(integrand, worst.lo, mid, rule);
    auto right = detail::gk15_panel(integrand, mid, worst.hi, rule);
    total += left.value;
    total += right.value;
    total -= worst.value;
    error += left.error + right.error - worst.error;
    panels.push(std::move(left));
    panels.push(std::move(right));
    ++subdivisions;
    if (subdivisions % 256 == 0) error = fresh_error();
  }

  // Final sum from scratch, smallest contributions first.
  std::vector<detail::Panel<T>> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  Complex<T> sum{ScalarTraits<T>::from(0.0), ScalarTraits<T>::from(0.0)};
  double err_sum = 0.0;
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    sum += it->value;
    err_sum += it->error;
  }

  IntegralResult result;
  result.value = sum.to_std();
  result.error_estimate = err_sum;
  result.subdivisions_used = subdivisions;
  result.converged = err_sum <= std::max(config.rel_tol * std::abs(result.value), config.abs_tol);
  result.upper_limit = upper;
  return result;
}

}  // namespace hkbose

#endif  // HKBOSE_QUADRATURE_HPP
