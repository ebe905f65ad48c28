#include "hkbose/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "hkbose/errors.hpp"

namespace hkbose {

namespace {

constexpr double kPi = std::numbers::pi;

// psi_m^k(x) = sqrt(m!/(m+k)!) x^{k/2} e^{-x/2} L_m^{(k)}(x) for m = 0..count-1.
void laguerre_functions(int k, double x, int count, std::vector<double> &out) {
  out.assign(static_cast<std::size_t>(count), 0.0);
  if (count == 0) return;
  double psi0;
  if (x == 0.0) {
    psi0 = k == 0 ? 1.0 : 0.0;
  } else {
    psi0 = std::exp(0.5 * k * std::log(x) - 0.5 * x - 0.5 * std::lgamma(k + 1.0));
  }
  out[0] = psi0;
  double prev = 0.0;
  double cur = psi0;
  for (int m = 0; m + 1 < count; ++m) {
    const double next = ((2.0 * m + 1.0 + k - x) * cur - std::sqrt(static_cast<double>(m) * (m + k)) * prev) /
                        std::sqrt((m + 1.0) * (m + k + 1.0));
    prev = cur;
    cur = next;
    out[static_cast<std::size_t>(m + 1)] = cur;
  }
}

template <class Fn>
void parallel_rows(int rows, Fn fn) {
  const int workers = std::max(1, std::min<int>(rows, static_cast<int>(std::thread::hardware_concurrency())));
  if (workers == 1) {
    for (int i = 0; i < rows; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < rows; i += workers) fn(i);
    });
  }
  for (auto &th : pool) th.join();
}

}  // namespace

int choose_n_cut(cplx z_i, double tail_tol) {
  if (!(tail_tol > 0.0)) throw ConfigError("tail tolerance must be positive");
  const double mean = std::norm(z_i);
  if (mean == 0.0) return 0;
  // Accumulate the head; the tail is 1 - head, but for small tails sum terms
  // beyond N directly to avoid cancellation.
  for (int n = 0;; ++n) {
    double tail = 0.0;
    for (int m = n + 1; m < n + 400; ++m) {
      const double term = std::exp(-mean + m * std::log(mean) - std::lgamma(m + 1.0));
      tail += term;
      if (m > mean && term < 1e-3 * tail_tol) break;
    }
    if (tail < tail_tol) return n;
  }
}

NumberState coherent_number_state(cplx z_i, int n_cut) {
  if (n_cut < 0) throw ConfigError("n_cut must be non-negative");
  NumberState state;
  state.coeffs.resize(n_cut + 1);
  const double mean = std::norm(z_i);
  for (int n = 0; n <= n_cut; ++n) {
    if (mean == 0.0) {
      state.coeffs(n) = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double log_mod = -0.5 * mean + n * std::log(std::abs(z_i)) - 0.5 * std::lgamma(n + 1.0);
    state.coeffs(n) = std::polar(std::exp(log_mod), n * std::arg(z_i));
  }
  return state;
}

double initial_wigner(cplx z_i, cplx alpha) { return 2.0 * std::exp(-2.0 * std::norm(alpha - z_i)); }

NumberState evolve_number_state(const NumberState &state, const ModelParams &params, double t, Method method,
                                const PrecisionConfig &config, const MethodOptions &options) {
  NumberState out = state;
  for (int n = 0; n <= state.n_cut(); ++n) {
    out.coeffs(n) *= matrix_element(params, method, n, t, config, options).value;
  }
  return out;
}

double wigner_from_number_state(const NumberState &state, cplx alpha) {
  const int size = state.n_cut() + 1;
  const double x = 4.0 * std::norm(alpha);
  const double arg = std::arg(alpha);
  std::vector<double> psi;
  double total = 0.0;
  for (int k = 0; k < size; ++k) {
    const int count = size - k;
    laguerre_functions(k, x, count, psi);
    cplx diag_sum{};
    for (int m = 0; m < count; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      diag_sum += sign * psi[static_cast<std::size_t>(m)] * state.coeffs(m + k) * std::conj(state.coeffs(m));
    }
    const double term = 2.0 * (std::polar(1.0, -k * arg) * diag_sum).real();
    total += k == 0 ? term : 2.0 * term;
  }
  return total;
}

double exact_wigner(cplx z_i, const ModelParams &params, double t, cplx alpha, int n_cut) {
  const NumberState state =
      evolve_number_state(coherent_number_state(z_i, n_cut), params, t, Method::Exact, PrecisionConfig{});
  return wigner_from_number_state(state, alpha);
}

double hk_wigner(cplx z_i, const ModelParams &params, double t, cplx alpha, int n_cut, const PrecisionConfig &config) {
  const NumberState state = evolve_number_state(coherent_number_state(z_i, n_cut), params, t, Method::HK, config);
  return wigner_from_number_state(state, alpha);
}

double twa_wigner(cplx z_i, const ModelParams &params, double t, cplx alpha) {
  const double rate = (params.omega_e - params.interaction) + params.interaction * std::norm(alpha);
  return initial_wigner(z_i, alpha * std::polar(1.0, rate * t));
}

cplx dyad_wigner(cplx u, cplx v, cplx alpha) {
  const cplx overlap = std::exp(-0.5 * std::norm(u) - 0.5 * std::norm(v) + std::conj(v) * u);
  return 2.0 * overlap * std::exp(-2.0 * (std::conj(alpha) - std::conj(v)) * (alpha - u));
}

cplx dyad_wigner_quadrature(cplx u, cplx v, cplx alpha, double half_width, double step) {
  if (!(step > 0.0) || !(half_width > 0.0)) throw ConfigError("quadrature grid must be non-empty");
  const int count = static_cast<int>(std::ceil(half_width / step));
  cplx sum{};
  for (int i = -count; i <= count; ++i) {
    for (int j = -count; j <= count; ++j) {
      const cplx eta{i * step, j * step};
      const cplx shifted = u + eta;
      const cplx chi = std::exp(0.5 * (eta * std::conj(u) - std::conj(eta) * u) - 0.5 * std::norm(shifted) -
                                0.5 * std::norm(v) + std::conj(v) * shifted);
      sum += std::exp(std::conj(eta) * alpha - eta * std::conj(alpha)) * chi;
    }
  }
  return sum * step * step / kPi;
}

MonteCarloValue hk_wigner_direct_oracle(cplx z_i, const ModelParams &params, double t, cplx alpha, long mc_samples,
                                        std::uint64_t seed, double max_stderr) {
  params.validate();
  if (mc_samples < 10000) throw ConfigError("hk_wigner_direct_oracle needs at least 1e4 samples");
  std::mt19937_64 rng(seed);
  // |<z0|z_i>| = exp(-|z0 - z_i|^2/2): unit-variance normal components around z_i
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&] { return PhasePoint{z_i + cplx(gauss(rng), gauss(rng))}; };

  double sum = 0.0;
  double sum_sq = 0.0;
  for (long k = 0; k < mc_samples; ++k) {
    const PhasePoint a = draw();
    const PhasePoint b = draw();
    const ClassicalIngredients ia = classical_ingredients(params, a, t);
    const ClassicalIngredients ib = classical_ingredients(params, b, t);
    const double phase = std::imag(std::conj(a.z) * z_i) - std::imag(std::conj(b.z) * z_i) + ia.action - ib.action;
    const cplx term = 4.0 * std::polar(1.0, phase) * ia.full_prefactor * std::conj(ib.full_prefactor) *
                      dyad_wigner(ia.trajectory_value, ib.trajectory_value, alpha);
    sum += term.real();
    sum_sq += term.real() * term.real();
  }
  const double count = static_cast<double>(mc_samples);
  MonteCarloValue out;
  out.samples = mc_samples;
  out.value = sum / count;
  const double var = (sum_sq / count - out.value * out.value) * count / (count - 1.0);
  out.stderr = std::sqrt(std::max(var, 0.0) / count);
  if (out.stderr > max_stderr) {
    std::ostringstream msg;
    msg << "hk_wigner_direct_oracle: stderr " << out.stderr << " above " << max_stderr;
    throw NonConvergence(msg.str());
  }
  return out;
}

void GridSpec::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("grid step must be positive");
  if (!(re_max >= re_min) || !(im_max >= im_min)) throw ConfigError("grid extents must be ascending");
  if (!std::isfinite(re_min) || !std::isfinite(re_max) || !std::isfinite(im_min) || !std::isfinite(im_max))
    throw ConfigError("grid extents must be finite");
}

int GridSpec::re_count() const { return static_cast<int>(std::floor((re_max - re_min) / step + 1e-9)) + 1; }
int GridSpec::im_count() const { return static_cast<int>(std::floor((im_max - im_min) / step + 1e-9)) + 1; }

GridSpec GridSpec::parse(const std::string &text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw ConfigError("grid: cannot parse '" + item + "' in '" + text + "'");
    }
  }
  GridSpec grid;
  if (parts.size() == 3) {
    grid = {parts[0], parts[1], parts[0], parts[1], parts[2]};
  } else if (parts.size() == 5) {
    grid = {parts[0], parts[1], parts[2], parts[3], parts[4]};
  } else {
    throw ConfigError("grid: expected lo:hi:step or re_lo:re_hi:im_lo:im_hi:step, got '" + text + "'");
  }
  grid.validate();
  return grid;
}

std::string to_string(WignerMethod method) {
  switch (method) {
    case WignerMethod::Exact:
      return "exact";
    case WignerMethod::HK:
      return "hk";
    case WignerMethod::TWA:
      return "twa";
  }
  return "unknown";
}

const std::optional<Eigen::ArrayXXd> &WignerField::values(WignerMethod method) const {
  switch (method) {
    case WignerMethod::Exact:
      return exact;
    case WignerMethod::HK:
      return hk;
    case WignerMethod::TWA:
      break;
  }
  return twa;
}

double grid_integral(const Eigen::ArrayXXd &field, const GridSpec &grid) {
  return field.sum() * grid.step * grid.step / kPi;
}

WignerField render_field(cplx z_i, const ModelParams &params, double t, const GridSpec &grid,
                         const std::vector<WignerMethod> &methods, const PrecisionConfig &config, int n_cut) {
  params.validate();
  grid.validate();
  WignerField field;
  field.grid = grid;
  field.z_i = z_i;
  field.params = params;
  field.t = t;
  field.n_cut = n_cut > 0 ? n_cut : choose_n_cut(z_i);
  const int rows = grid.re_count();
  const int cols = grid.im_count();
  const NumberState initial = coherent_number_state(z_i, field.n_cut);

  auto fill = [&](auto &&eval) {
    Eigen::ArrayXXd values(rows, cols);
    parallel_rows(rows, [&](int i) {
      for (int j = 0; j < cols; ++j) values(i, j) = eval(cplx(grid.re_at(i), grid.im_at(j)));
    });
    return values;
  };

  for (WignerMethod method : methods) {
    switch (method) {
      case WignerMethod::Exact: {
        const NumberState state = evolve_number_state(initial, params, t, Method::Exact, config);
        field.exact = fill([&](cplx a) { return wigner_from_number_state(state, a); });
        field.exact_normalization = grid_integral(*field.exact, grid);
        field.exact_state_norm = state.norm_sq();
        break;
      }
      case WignerMethod::HK: {
        const NumberState state = evolve_number_state(initial, params, t, Method::HK, config);
        field.hk = fill([&](cplx a) { return wigner_from_number_state(state, a); });
        field.hk_normalization = grid_integral(*field.hk, grid);
        field.hk_state_norm = state.norm_sq();
        break;
      }
      case WignerMethod::TWA:
        field.twa = fill([&](cplx a) { return twa_wigner(z_i, params, t, a); });
        field.twa_normalization = grid_integral(*field.twa, grid);
        break;
    }
  }
  return field;
}

}  // namespace hkbose
