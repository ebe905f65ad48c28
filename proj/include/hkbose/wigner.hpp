#ifndef HKBOSE_WIGNER_HPP
#define HKBOSE_WIGNER_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkbose/propagator.hpp"

namespace hkbose {

// Wigner functions are normalized to integrate to 1 under d^2 alpha / pi, so
// the vacuum reads 2 exp(-2 |alpha|^2).

struct CoherentInitial {
  cplx z_i{};
};

struct NumberState {
  Eigen::VectorXcd coeffs;  // c_0 .. c_{n_cut}

  int n_cut() const { return static_cast<int>(coeffs.size()) - 1; }
  double norm_sq() const { return coeffs.squaredNorm(); }
};

// Smallest N with Poisson tail sum_{n>N} e^{-|z|^2} |z|^{2n}/n! below tol.
int choose_n_cut(cplx z_i, double tail_tol = 1e-12);

// c_n = e^{-|z|^2/2} z^n / sqrt(n!), n = 0..n_cut.
NumberState coherent_number_state(cplx z_i, int n_cut);

// 2 exp(-2 |alpha - z_i|^2)
double initial_wigner(cplx z_i, cplx alpha);

// c_n <- <n|U(t)|n> c_n. Diagonality of every supported propagator makes
// this exact for EXACT and the full HK result for HK; nothing is
// renormalized.
NumberState evolve_number_state(const NumberState &state, const ModelParams &params, double t, Method method,
                                const PrecisionConfig &config, const MethodOptions &options = {});

// Wigner function of the pure (possibly unnormalized) state sum c_n |n>.
// Uses the dyad closed form
//   W_{|m+k><m|}(alpha) = 2 (-1)^m sqrt(m!/(m+k)!) (2 alpha*)^k e^{-2|alpha|^2} L_m^{(k)}(4 |alpha|^2),
// evaluated through the normalized Laguerre functions, which stay bounded
// by 1 and so cannot overflow.
double wigner_from_number_state(const NumberState &state, cplx alpha);

// Exact evolution of |z_i>, truncated at n_cut.
double exact_wigner(cplx z_i, const ModelParams &params, double t, cplx alpha, int n_cut);

// HK evolution of |z_i> through the number basis.
double hk_wigner(cplx z_i, const ModelParams &params, double t, cplx alpha, int n_cut, const PrecisionConfig &config);

// W0(alpha exp[i ((omega_e - U) + U |alpha|^2) t]): the initial Gaussian
// transported along the classical flow of the Weyl symbol of H.
double twa_wigner(cplx z_i, const ModelParams &params, double t, cplx alpha);

// Wigner function of the dyad |u><v| between normalized coherent states:
//   2 <v|u> exp[-2 (alpha* - v*)(alpha - u)].
cplx dyad_wigner(cplx u, cplx v, cplx alpha);

// The same quantity by brute-force trapezoid integration of the
// characteristic function chi(eta) = <v| D(eta) |u> over the square
// |Re eta|, |Im eta| <= half_width.
cplx dyad_wigner_quadrature(cplx u, cplx v, cplx alpha, double half_width = 12.0, double step = 0.04);

struct MonteCarloValue {
  double value = 0.0;
  double stderr = 0.0;
  long samples = 0;
};

// HK Wigner function from the double phase-space integral over (z0, z0')
// with the dyad closed form, sampling both labels from the coherent overlap
// weight |<z0|z_i>|^2 up to normalization. Throws ConfigError below 10^4
// samples and NonConvergence if stderr exceeds max_stderr.
MonteCarloValue hk_wigner_direct_oracle(cplx z_i, const ModelParams &params, double t, cplx alpha, long mc_samples,
                                        std::uint64_t seed = 20170101, double max_stderr = 1e300);

struct GridSpec {
  double re_min = -4.0;
  double re_max = 4.0;
  double im_min = -4.0;
  double im_max = 4.0;
  double step = 0.05;

  // Throws ConfigError for empty extents or non-positive step.
  void validate() const;
  int re_count() const;
  int im_count() const;
  double re_at(int i) const { return re_min + i * step; }
  double im_at(int j) const { return im_min + j * step; }

  // "lo:hi:step" (square) or "re_lo:re_hi:im_lo:im_hi:step".
  static GridSpec parse(const std::string &text);
};

enum class WignerMethod { Exact, HK, TWA };

std::string to_string(WignerMethod method);

struct WignerField {
  GridSpec grid;
  cplx z_i{};
  ModelParams params;
  double t = 0.0;
  int n_cut = 0;
  // values(i, j) at alpha = re_at(i) + i im_at(j)
  std::optional<Eigen::ArrayXXd> exact;
  std::optional<Eigen::ArrayXXd> hk;
  std::optional<Eigen::ArrayXXd> twa;
  // Riemann sums of W d^2 alpha / pi over the grid.
  std::optional<double> exact_normalization;
  std::optional<double> hk_normalization;
  std::optional<double> twa_normalization;
  // sum |c_n|^2 of the evolved number states.
  std::optional<double> exact_state_norm;
  std::optional<double> hk_state_norm;

  const std::optional<Eigen::ArrayXXd> &values(WignerMethod method) const;
};

// Riemann sum of field * step^2 / pi.
double grid_integral(const Eigen::ArrayXXd &field, const GridSpec &grid);

// Evaluates the requested methods on the lattice. n_cut <= 0 selects
// choose_n_cut(z_i).
WignerField render_field(cplx z_i, const ModelParams &params, double t, const GridSpec &grid,
                         const std::vector<WignerMethod> &methods, const PrecisionConfig &config, int n_cut = 0);

}  // namespace hkbose

#endif  // HKBOSE_WIGNER_HPP
