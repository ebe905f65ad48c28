// One line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hkbose/asymptotics.hpp"
#include "hkbose/errors.hpp"
#include "hkbose/propagator.hpp"
#include "hkbose/spectral.hpp"
#include "hkbose/wigner.hpp"

using namespace hkbose;
using std::numbers::pi;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string &name, const std::function<Verdict()> &check) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception &e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.pass) ++failures;
  std::printf("[%s] %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char *format, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

const cplx kZi{2.0, 0.0};
const ModelParams kPanel{1.0, 0.05};
const double kPanelTime = 10.0 * pi;

// Random points inside the default [-4, 4]^2 grid.
std::vector<cplx> sample_points(int count, std::uint64_t seed, double half_width = 4.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-half_width, half_width);
  std::vector<cplx> out;
  for (int i = 0; i < count; ++i) out.emplace_back(coord(rng), coord(rng));
  return out;
}

}  // namespace

int main() {
  const PrecisionConfig config;

  report("Gamma identity", [&] {
    double worst = 0.0;
    for (int n = 0; n <= 40; ++n) worst = std::max(worst, std::abs(g_n(n, 0.0, config).value - 1.0));
    return Verdict{worst < 1e-10, "max_n |g_n(0) - 1| = " + fmt("%.2e", worst) + " over n = 0..40, tol 1e-10"};
  });

  report("Harmonic exactness", [&] {
    const ModelParams harmonic{1.0, 0.0};
    double worst_mod = 0.0;
    double worst_phase = 0.0;
    for (int n = 0; n <= 20; ++n) {
      for (double t = 0.0; t <= 20.0 + 1e-12; t += 0.5) {
        const cplx v = matrix_element(harmonic, Method::HK, n, t, config).value;
        worst_mod = std::max(worst_mod, std::abs(std::abs(v) - 1.0));
        // phase error against exp(-i n omega t), reduced mod 2 pi
        worst_phase = std::max(worst_phase, std::abs(std::arg(v * std::polar(1.0, n * harmonic.omega_e * t))));
      }
    }
    return Verdict{worst_mod < 1e-10 && worst_phase < 1e-10,
                   "max ||U_nn| - 1| = " + fmt("%.2e", worst_mod) + ", max phase error = " + fmt("%.2e", worst_phase) +
                       ", tol 1e-10"};
  });

  report("Unitarity decay at n = 0", [&] {
    double previous = 2.0;
    bool monotone = true;
    for (int k = 0; k <= 100; ++k) {
      const double m = std::norm(g_n(0, 0.05 * k, config).value);
      if (!(m < previous)) monotone = false;
      previous = m;
    }
    const double at1 = std::norm(g_n(0, 1.0, config).value);
    const double at5 = std::norm(g_n(0, 5.0, config).value);
    // regression values fixed by the independent tanh-sinh oracle
    const bool pinned = std::abs(at1 - 0.53577311) < 1e-6 && std::abs(at5 - 0.14342224) < 1e-6;
    return Verdict{monotone && at5 < at1 && at1 < 1.0 && pinned,
                   std::string(monotone ? "monotone" : "NOT monotone") + " on [0,5]; |g_0(1)|^2 = " + fmt("%.8f", at1) +
                       ", |g_0(5)|^2 = " + fmt("%.8f", at5) + " (pinned 0.53577311, 0.14342224 +- 1e-6)"};
  });

  // Shared curves for the plateau and phase criteria, sampled on
  // tau_k = k (10/n) / 200 so that tau_tilde in [1, 5] and [2, 10] are grid points.
  RadialCache cache(config);
  auto curve_for = [&](int n) { return build_phase_curve(n, 10.0 / n, 200, cache); };

  report("Unitarity recovery", [&] {
    std::vector<double> r;
    std::string detail;
    for (int n : {5, 10, 20, 30}) {
      const PhaseCurve curve = curve_for(n);
      const PlateauEstimate p = estimate_plateau(curve, tau_window(n, 1.0, 5.0));
      r.push_back(p.r_n);
      detail += "r_" + std::to_string(n) + " = " + fmt("%.4f", p.r_n) + " ";
    }
    const bool ordered = r[0] < r[1] && r[1] < r[2] && r[2] < r[3];
    return Verdict{ordered && r[3] >= 0.9, detail + "(need increasing, r_30 >= 0.9)"};
  });

  report("NNLO phase", [&] {
    bool ok = true;
    std::string detail;
    for (int n : {20, 25, 30}) {
      const PhaseCurve curve = curve_for(n);
      const SlopeFit fit = fit_delta_phi_slope(curve, tau_window(n, 2.0, 10.0));
      ok = ok && std::abs(fit.slope - 0.125) <= 0.005;
      detail += "n=" + std::to_string(n) + ": " + fmt("%.4f", fit.slope) + " ";
    }
    return Verdict{ok, "slopes " + detail + "(need 0.125 +- 0.005)"};
  });

  report("Spectrum identities", [&] {
    bool lo = true;
    bool no_theta = true;
    double worst_fga = 0.0;
    for (double omega : {1.0, 0.7}) {
      for (double u : {0.05, -0.3, 1.2}) {
        const ModelParams params{omega, u};
        for (int n = 0; n <= 40; ++n) {
          lo = lo && hk_spectrum_lo(params, n) == exact_energy(params, n);
          no_theta = no_theta && std::abs(hk_spectrum_no_theta(params, n) - exact_energy(params, n) -
                                          (0.5 * omega + u * n)) <= 1e-12 * std::max(1.0, exact_energy(params, n));
          for (double t : {0.5, 3.0}) {
            const double nut = n * u * t;
            worst_fga = std::max(worst_fga, std::abs(std::norm(fga_closed_form(params, n, t)) * (1.0 + nut * nut) - 1.0));
          }
        }
      }
    }
    return Verdict{lo && no_theta && worst_fga < 1e-12,
                   std::string("LO == exact: ") + (lo ? "yes" : "no") + "; no-theta offset: " + (no_theta ? "yes" : "no") +
                       "; max ||fga|^2 (1 + n^2 U^2 t^2) - 1| = " + fmt("%.3e", worst_fga) + ", tol 1e-12"};
  });

  report("FGA limit", [&] {
    const double target = 1.0 / (1.0 + 1.0);
    std::vector<double> errors;
    std::string detail;
    for (int n : {5, 10, 20}) {
      const double m = std::norm(g_n_fga(n, 1.0 / n, config).value);
      errors.push_back(std::abs(m - target) / target);
      detail += "n=" + std::to_string(n) + ": " + fmt("%.4f", m) + " ";
    }
    const bool shrinking = errors[1] < errors[0] && errors[2] < errors[1];
    return Verdict{shrinking && errors[2] < 0.1,
                   "|g_fga(n, 1/n)|^2 " + detail + "vs 1/(1+tau~^2) = 0.5; final relative error " +
                       fmt("%.3f", errors[2]) + (shrinking ? ", shrinking" : ", NOT shrinking")};
  });

  report("Diagonality", [&] {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> occupation(0, 6);
    std::uniform_real_distribution<double> u_dist(-0.5, 0.5);
    std::uniform_real_distribution<double> t_dist(0.1, 5.0);
    bool ok = true;
    std::string detail;
    for (int k = 0; k < 5; ++k) {
      int n = occupation(rng);
      int m = occupation(rng);
      while (m == n) m = occupation(rng);
      const ModelParams params{1.0, u_dist(rng)};
      const double t = t_dist(rng);
      const OffDiagonalEstimate e = off_diagonal_check(params, n, m, t, 1000000, 1000 + k);
      ok = ok && e.vanishes_within(3.0);
      detail += "(" + std::to_string(n) + "," + std::to_string(m) + "): " +
                fmt("%.1f", std::max(std::abs(e.value.real()) / e.stderr_re, std::abs(e.value.imag()) / e.stderr_im)) +
                "sigma ";
    }
    return Verdict{ok, detail + "at 1e6 samples, need <= 3 sigma"};
  });

  report("Wigner references", [&] {
    // (a) truncation at a 1e-20 probability tail keeps the amplitude-level error below 1e-8
    const NumberState initial = coherent_number_state(kZi, choose_n_cut(kZi, 1e-20));
    double worst = 0.0;
    for (cplx a : sample_points(100, 17)) {
      worst = std::max(worst, std::abs(wigner_from_number_state(initial, a) - initial_wigner(kZi, a)));
    }
    const bool a_ok = worst < 1e-8;

    // (b), (c)
    const WignerField field = render_field(kZi, kPanel, kPanelTime, GridSpec{},
                                           {WignerMethod::Exact, WignerMethod::HK, WignerMethod::TWA}, config);
    const bool b_ok = std::abs(*field.exact_normalization - 1.0) <= 1e-3;
    const bool c_ok = field.twa->minCoeff() >= 0.0 && field.exact->minCoeff() < 0.0;

    // (d)
    const NumberState hk = evolve_number_state(coherent_number_state(kZi, field.n_cut), kPanel, kPanelTime, Method::HK, config);
    int agree = 0;
    double worst_sigma = 0.0;
    std::uint64_t seed = 500;
    for (cplx a : sample_points(10, 29, 3.0)) {
      const MonteCarloValue mc = hk_wigner_direct_oracle(kZi, kPanel, kPanelTime, a, 200000, seed++);
      const double sigma = std::abs(mc.value - wigner_from_number_state(hk, a)) / mc.stderr;
      worst_sigma = std::max(worst_sigma, sigma);
      if (sigma <= 3.0) ++agree;
    }
    const bool d_ok = agree == 10;
    return Verdict{a_ok && b_ok && c_ok && d_ok,
                   "(a) max |series - W0| = " + fmt("%.1e", worst) + (a_ok ? " ok" : " FAIL") + "; (b) norm = " +
                       fmt("%.6f", *field.exact_normalization) + (b_ok ? " ok" : " FAIL") + "; (c) min W_twa = " +
                       fmt("%.2e", field.twa->minCoeff()) + ", min W_exact = " + fmt("%.3f", field.exact->minCoeff()) +
                       (c_ok ? " ok" : " FAIL") + "; (d) " + std::to_string(agree) + "/10 within 3 sigma, worst " +
                       fmt("%.2f", worst_sigma) + " sigma"};
  });

  report("U=0 revival", [&] {
    const ModelParams harmonic{1.0, 0.0};
    const double t = 2.0 * pi;
    const NumberState initial = coherent_number_state(kZi, choose_n_cut(kZi, 1e-20));
    const NumberState exact = evolve_number_state(initial, harmonic, t, Method::Exact, config);
    const NumberState hk = evolve_number_state(initial, harmonic, t, Method::HK, config);
    double worst = 0.0;
    for (cplx a : sample_points(100, 31)) {
      const double w0 = initial_wigner(kZi, a);
      worst = std::max({worst, std::abs(wigner_from_number_state(exact, a) - w0),
                        std::abs(wigner_from_number_state(hk, a) - w0), std::abs(twa_wigner(kZi, harmonic, t, a) - w0)});
    }
    return Verdict{worst < 1e-8, "max |W(2 pi) - W0| over exact/HK/TWA = " + fmt("%.1e", worst) + ", tol 1e-8"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
