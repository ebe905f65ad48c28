#include "hkbose/quadrature.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace hkbose {

void PrecisionConfig::validate() const {
  if (!(rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw ConfigError("abs_tol must be positive");
  if (max_subdivisions <= 0) throw ConfigError("max_subdivisions must be positive");
  if (initial_intervals <= 0) throw ConfigError("initial_intervals must be positive");
  if (!auto_digits) {
    if (working_digits < 16) throw ConfigError("working_digits must be at least 16");
    if (working_digits < target_digits() + 10) {
      throw ConfigError("working_digits must exceed -log10(rel_tol) by at least 10");
    }
  }
}

int PrecisionConfig::target_digits() const { return static_cast<int>(std::ceil(-std::log10(rel_tol))); }

int PrecisionConfig::digits_for(int n, double tau) const {
  return auto_digits ? choose_working_digits(n, tau, target_digits()) : working_digits;
}

bool PrecisionConfig::use_double(int n, double tau) const {
  if (n <= 12 && rel_tol >= 1e-8) return true;
  return digits_for(n, tau) <= 16;
}

int choose_working_digits(int n, double /*tau_max*/, int target_digits) {
  const int digits = target_digits + 10 + static_cast<int>(std::ceil(3.5 * n));
  return std::max(16, digits);
}

double radial_cutoff(int n, const PrecisionConfig &config) {
  const double nd = std::max(n, 0);
  const double log_floor = std::log(config.abs_tol) - config.truncation_margin * std::log(10.0);
  const double log_nfact = std::lgamma(nd + 1.0);
  auto log_envelope = [&](double s) { return nd * std::log(s) - s - log_nfact; };
  double s_max = nd + 40.0 + 10.0 * std::sqrt(nd + 1.0);
  const double step = 5.0 + std::sqrt(nd + 1.0);
  while (log_envelope(s_max) > log_floor) s_max += step;
  return s_max;
}

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
template <typename T>
std::pair<T, T> legendre(int n, const T &x) {
  T p0 = ScalarTraits<T>::from(1.0);
  if (n == 0) return {p0, ScalarTraits<T>::from(0.0)};
  T p1 = x;
  for (int k = 2; k <= n; ++k) {
    T p2 = (ScalarTraits<T>::from(2.0 * k - 1.0) * x * p1 - ScalarTraits<T>::from(k - 1.0) * p0) /
           ScalarTraits<T>::from(static_cast<double>(k));
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  const T one = ScalarTraits<T>::from(1.0);
  T dp = ScalarTraits<T>::from(static_cast<double>(n)) * (x * p1 - p0) / (x * x - one);
  return {p1, dp};
}

template <typename T>
bool converged_step(const T &dx, mpfr_prec_t bits) {
  using std::abs;
  return abs(dx) < ScalarTraits<T>::from(std::ldexp(1.0, -static_cast<int>(bits) + 4));
}

// Gauss-Legendre rule of order m: positive nodes (descending) and weights,
// plus the zero node when m is odd.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> gauss_legendre(int m, mpfr_prec_t bits) {
  std::vector<T> nodes;
  std::vector<T> weights;
  const T one = ScalarTraits<T>::from(1.0);
  for (int i = 1; i <= (m + 1) / 2; ++i) {
    T x = ScalarTraits<T>::from(std::cos(M_PI * (i - 0.25) / (m + 0.5)));
    if (m % 2 == 1 && i == (m + 1) / 2) x = ScalarTraits<T>::from(0.0);
    for (int iter = 0; iter < 200; ++iter) {
      if (m % 2 == 1 && i == (m + 1) / 2) break;
      auto [p, dp] = legendre(m, x);
      T dx = p / dp;
      x -= dx;
      if (converged_step(dx, bits)) break;
    }
    auto [p, dp] = legendre(m, x);
    nodes.push_back(x);
    weights.push_back(ScalarTraits<T>::from(2.0) / ((one - x * x) * dp * dp));
  }
  return {nodes, weights};
}

// Dense Gaussian elimination with partial pivoting; small systems only.
template <typename T>
std::vector<T> solve(std::vector<std::vector<T>> a, std::vector<T> b) {
  using std::abs;
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(a[r][col]) > abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      T factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

template <typename T>
T power(const T &x, int k) {
  T out = ScalarTraits<T>::from(1.0);
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

// Builds the 7/15 Gauss-Kronrod pair at the current working precision.
//
// The Kronrod abscissae are the roots of the Stieltjes polynomial
// E_8 = P_8 + a6 P_6 + a4 P_4 + a2 P_2 + a0, fixed by requiring
// int P_7 E_8 x^k dx = 0 for k = 1, 3, 5, 7 (even k vanish by parity).
// The 15 weights then follow from exactness on x^0, x^2, ..., x^14.
template <typename T>
GaussKronrod15<T> build_rule(mpfr_prec_t bits) {
  auto [g7_nodes, g7_weights] = gauss_legendre<T>(7, bits);
  // Exact for the degree-22 moments below.
  auto [q_nodes, q_weights] = gauss_legendre<T>(12, bits);

  auto moment = [&](int j, int k) {
    T acc = ScalarTraits<T>::from(0.0);
    for (std::size_t i = 0; i < q_nodes.size(); ++i) {
      const T &x = q_nodes[i];
      T f = legendre(7, x).first * legendre(j, x).first * power(x, k);
      // f is even in x; both +x and -x contribute equally.
      acc += ScalarTraits<T>::from(2.0) * q_weights[i] * f;
    }
    return acc;
  };

  const std::array<int, 4> degrees = {0, 2, 4, 6};
  const std::array<int, 4> powers = {1, 3, 5, 7};
  std::vector<std::vector<T>> a(4, std::vector<T>(4));
  std::vector<T> rhs(4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) a[r][c] = moment(degrees[c], powers[r]);
    rhs[r] = -moment(8, powers[r]);
  }
  const std::vector<T> coeffs = solve(a, rhs);

  auto stieltjes = [&](const T &x) {
    auto [p8, dp8] = legendre(8, x);
    T value = p8;
    T slope = dp8;
    for (int c = 0; c < 4; ++c) {
      auto [p, dp] = legendre(degrees[c], x);
      value += coeffs[c] * p;
      slope += coeffs[c] * dp;
    }
    return std::pair<T, T>{value, slope};
  };

  const std::array<double, 4> guesses = {0.991455371120813, 0.864864423359769, 0.586087235467691,
                                         0.207784955007898};
  std::array<T, 4> kronrod_nodes;
  for (int i = 0; i < 4; ++i) {
    T x = ScalarTraits<T>::from(guesses[i]);
    for (int iter = 0; iter < 200; ++iter) {
      auto [value, slope] = stieltjes(x);
      T dx = value / slope;
      x -= dx;
      if (converged_step(dx, bits)) break;
    }
    kronrod_nodes[i] = x;
  }

  GaussKronrod15<T> rule;
  for (int i = 0; i < 4; ++i) rule.nodes[2 * i] = kronrod_nodes[i];
  for (int i = 0; i < 3; ++i) rule.nodes[2 * i + 1] = g7_nodes[i];
  rule.nodes[7] = ScalarTraits<T>::from(0.0);
  for (int i = 0; i < 4; ++i) rule.gauss_weights[i] = g7_weights[i];

  // Unknowns: weights of the 7 positive nodes, then the centre weight.
  std::vector<std::vector<T>> m(8, std::vector<T>(8));
  std::vector<T> moments(8);
  for (int k = 0; k < 8; ++k) {
    for (int j = 0; j < 7; ++j) m[k][j] = ScalarTraits<T>::from(2.0) * power(rule.nodes[j], 2 * k);
    m[k][7] = ScalarTraits<T>::from(k == 0 ? 1.0 : 0.0);
    moments[k] = ScalarTraits<T>::from(2.0) / ScalarTraits<T>::from(2.0 * k + 1.0);
  }
  const std::vector<T> w = solve(m, moments);
  for (int j = 0; j < 8; ++j) rule.kronrod_weights[j] = w[j];
  return rule;
}

}  // namespace

template <>
const GaussKronrod15<BigFloat> &gauss_kronrod15<BigFloat>() {
  thread_local std::map<mpfr_prec_t, GaussKronrod15<BigFloat>> cache;
  const mpfr_prec_t bits = BigFloat::working_bits();
  auto it = cache.find(bits);
  if (it == cache.end()) it = cache.emplace(bits, build_rule<BigFloat>(bits)).first;
  return it->second;
}

template <>
const GaussKronrod15<double> &gauss_kronrod15<double>() {
  static const GaussKronrod15<double> rule = [] {
    PrecisionScope scope(40);
    const auto exact = build_rule<BigFloat>(BigFloat::working_bits());
    GaussKronrod15<double> out;
    for (int i = 0; i < 8; ++i) {
      out.nodes[i] = exact.nodes[i].to_double();
      out.kronrod_weights[i] = exact.kronrod_weights[i].to_double();
    }
    for (int i = 0; i < 4; ++i) out.gauss_weights[i] = exact.gauss_weights[i].to_double();
    return out;
  }();
  return rule;
}

}  // namespace hkbose
