#include "hkbose/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <regex>
#include <sstream>
#include <unistd.h>

#include "hkbose/asymptotics.hpp"
#include "hkbose/errors.hpp"
#include "hkbose/spectral.hpp"

namespace hkbose::cli {

namespace {

using Cell = std::optional<double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, double>> summary;
};

std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+")
     << std::abs(z.imag()) << "j";
  return os.str();
}

std::string join_ints(const std::vector<int> &values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

std::string wigner_methods_text(const std::vector<WignerMethod> &methods) {
  std::string out;
  for (std::size_t i = 0; i < methods.size(); ++i) out += (i ? "," : "") + to_string(methods[i]);
  return out;
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig &c) {
  std::ostringstream grid;
  grid << c.grid.re_min << ":" << c.grid.re_max << ":" << c.grid.im_min << ":" << c.grid.im_max << ":" << c.grid.step;
  return {
      {"command", to_string(c.command)},
      {"omega", format_number(c.model.omega_e)},
      {"U", format_number(c.model.interaction)},
      {"n", join_ints(c.n_list)},
      {"tau_max", format_number(c.tau_max)},
      {"steps", std::to_string(c.steps)},
      {"method", c.command == Command::Wigner ? wigner_methods_text(c.wigner_methods) : to_string(c.method)},
      {"window", format_number(c.window.first) + ":" + format_number(c.window.second)},
      {"zi", format_complex(c.z_i)},
      {"t", format_number(c.t)},
      {"grid", grid.str()},
      {"digits", c.precision.auto_digits ? std::string("auto") : std::to_string(c.precision.working_digits)},
      {"rel_tol", format_number(c.precision.rel_tol)},
      {"abs_tol", format_number(c.precision.abs_tol)},
      {"max_subdiv", std::to_string(c.precision.max_subdivisions)},
      {"seed", std::to_string(c.seed)},
      {"format", c.format == Format::Csv ? "csv" : "json"},
      {"out", c.output_path},
  };
}

std::string render(const RunConfig &config, const Table &table) {
  std::ostringstream os;
  if (config.format == Format::Csv) {
    os << "# hkbose " << to_string(config.command) << "\n";
    for (const auto &[key, value] : describe(config)) os << "# " << key << " = " << value << "\n";
    for (const auto &[key, value] : table.summary) os << "# " << key << " = " << format_number(value) << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << "\n";
    for (const auto &row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ",";
        if (row[i]) os << format_number(*row[i]);
      }
      os << "\n";
    }
    return os.str();
  }
  nlohmann::ordered_json doc;
  for (const auto &[key, value] : describe(config)) doc["config"][key] = value;
  for (const auto &[key, value] : table.summary) doc["summary"][key] = value;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto &row : table.rows) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto &cell : row) {
      if (cell && std::isfinite(*cell)) {
        out.push_back(*cell);
      } else {
        out.push_back(nullptr);
      }
    }
    doc["rows"].push_back(std::move(out));
  }
  return doc.dump() + "\n";
}

void write_atomically(const std::string &path, const std::string &content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("out: cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw ConfigError("out: write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("out: cannot rename onto '" + path + "': " + ec.message());
  }
}

std::string sibling_path(const std::string &path, const std::string &tag) {
  const std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / p.stem();
  out += "." + tag + p.extension().string();
  return out.string();
}

// g_n with the EXACT method reduces to exp(-i tau n (n - 1)/2).
cplx radial_value(int n, double tau, Method method, RadialCache &cache) {
  if (method == Method::Exact) return std::polar(1.0, -0.5 * tau * n * (n - 1.0));
  return cache.get(n, tau, RadialKernel::for_method(method)).value;
}

double tau_at(const RunConfig &c, int k) { return c.tau_max * k / c.steps; }

Table gn_table(const RunConfig &c, std::ostream &log, bool modulus_only) {
  RadialCache cache(c.precision);
  Table table;
  table.columns = modulus_only ? std::vector<std::string>{"n", "tau", "modulus_sq"}
                               : std::vector<std::string>{"n", "tau", "re_g", "im_g", "modulus_sq"};
  for (int n : c.n_list) {
    log << "[" << to_string(c.command) << "] n = " << n << "\n";
    for (int k = 0; k <= c.steps; ++k) {
      const double tau = tau_at(c, k);
      const cplx g = radial_value(n, tau, c.method, cache);
      if (modulus_only) {
        table.rows.push_back({n, tau, std::norm(g)});
      } else {
        table.rows.push_back({n, tau, g.real(), g.imag(), std::norm(g)});
      }
    }
  }
  return table;
}

void run_phase(const RunConfig &c, std::ostream &log) {
  RadialCache cache(c.precision);
  Table curves;
  curves.columns = {"n", "tau", "phi", "delta_phi", "modulus_sq"};
  Table slopes;
  slopes.columns = {"n", "tau_tilde_lo", "tau_tilde_hi", "slope", "stderr", "intercept", "samples", "plateau_r"};
  for (int n : c.n_list) {
    log << "[phase] n = " << n << "\n";
    const PhaseCurve curve = build_phase_curve(n, c.tau_max, c.steps, cache, c.method);
    for (Eigen::Index k = 0; k < curve.size(); ++k) {
      curves.rows.push_back({n, curve.tau(k), curve.phase(k), curve.delta_phi(k), curve.modulus_sq(k)});
    }
    const auto window = tau_window(n, c.window.first, c.window.second);
    std::vector<Cell> row{n, c.window.first, c.window.second, {}, {}, {}, {}, {}};
    try {
      const SlopeFit fit = fit_delta_phi_slope(curve, window);
      row[3] = fit.slope;
      row[4] = fit.stderr;
      row[5] = fit.intercept;
      row[6] = static_cast<double>(fit.samples);
      row[7] = estimate_plateau(curve, window).r_n;
      log << "[phase] n = " << n << " slope = " << fit.slope << " +- " << fit.stderr << "\n";
    } catch (const InsufficientData &e) {
      log << "[phase] n = " << n << ": " << e.what() << "\n";
    }
    slopes.rows.push_back(std::move(row));
  }
  write_atomically(c.output_path, render(c, curves));
  write_atomically(sibling_path(c.output_path, "slopes"), render(c, slopes));
}

Table spectrum_table(const RunConfig &c) {
  Table table;
  table.columns = {"n", "E_exact", "E_HK_LO", "E_HK_no_theta", "E_FGA", "nnlo_offset"};
  for (int n : c.n_list) {
    table.rows.push_back({n, exact_energy(c.model, n), hk_spectrum_lo(c.model, n), hk_spectrum_no_theta(c.model, n),
                          fga_spectrum(c.model, n), 0.125 * c.model.interaction});
  }
  return table;
}

Table fga_compare_table(const RunConfig &c, std::ostream &log) {
  RadialCache cache(c.precision);
  Table table;
  table.columns = {"n", "tau", "hk_modulus_sq", "fga_modulus_sq", "analytic", "closed_form_modulus_sq"};
  const RadialKernel hk = RadialKernel::for_method(Method::HK);
  const RadialKernel fga = RadialKernel::for_method(Method::FGA);
  for (int n : c.n_list) {
    log << "[fga-compare] n = " << n << "\n";
    for (int k = 0; k <= c.steps; ++k) {
      const double tau = tau_at(c, k);
      const double ntau = n * tau;
      table.rows.push_back({n, tau, std::norm(cache.get(n, tau, hk).value), std::norm(cache.get(n, tau, fga).value),
                            1.0 / (1.0 + ntau * ntau), 1.0 / std::sqrt(1.0 + ntau * ntau)});
    }
  }
  return table;
}

Table wigner_table(const RunConfig &c, std::ostream &log) {
  log << "[wigner] " << c.grid.re_count() << " x " << c.grid.im_count() << " grid, methods "
      << wigner_methods_text(c.wigner_methods) << "\n";
  const WignerField field = render_field(c.z_i, c.model, c.t, c.grid, c.wigner_methods, c.precision);
  Table table;
  table.columns = {"re_alpha", "im_alpha", "w_exact", "w_hk", "w_twa"};
  auto cell = [](const std::optional<Eigen::ArrayXXd> &values, int i, int j) -> Cell {
    if (!values) return std::nullopt;
    return (*values)(i, j);
  };
  for (int i = 0; i < c.grid.re_count(); ++i) {
    for (int j = 0; j < c.grid.im_count(); ++j) {
      table.rows.push_back({c.grid.re_at(i), c.grid.im_at(j), cell(field.exact, i, j), cell(field.hk, i, j),
                            cell(field.twa, i, j)});
    }
  }
  table.summary.push_back({"n_cut", field.n_cut});
  if (field.exact_normalization) table.summary.push_back({"exact_normalization", *field.exact_normalization});
  if (field.exact_state_norm) table.summary.push_back({"exact_state_norm", *field.exact_state_norm});
  if (field.hk_normalization) table.summary.push_back({"hk_normalization", *field.hk_normalization});
  if (field.hk_state_norm) table.summary.push_back({"hk_state_norm", *field.hk_state_norm});
  if (field.twa_normalization) table.summary.push_back({"twa_normalization", *field.twa_normalization});
  for (const auto &[key, value] : table.summary) log << "[wigner] " << key << " = " << value << "\n";
  return table;
}

bool needs_n_list(Command command) { return command != Command::Wigner; }

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::Gn:
      return "gn";
    case Command::Norm:
      return "norm";
    case Command::Phase:
      return "phase";
    case Command::Spectrum:
      return "spectrum";
    case Command::FgaCompare:
      return "fga-compare";
    case Command::Wigner:
      return "wigner";
  }
  return "unknown";
}

Command parse_command(const std::string &text) {
  for (Command c : {Command::Gn, Command::Norm, Command::Phase, Command::Spectrum, Command::FgaCompare,
                    Command::Wigner}) {
    if (to_string(c) == text) return c;
  }
  throw ConfigError("command: unknown '" + text + "'");
}

cplx parse_complex(const std::string &text) {
  static const std::regex full(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[jJ])?\s*$)");
  static const std::regex imag_only(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[jJ]\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, imag_only)) {
    const std::string mag = m[1].str();
    if (mag.empty() || mag == "+") return {0.0, 1.0};
    if (mag == "-") return {0.0, -1.0};
    return {0.0, std::stod(mag)};
  }
  if (!text.empty() && std::regex_match(text, m, full) && m[1].matched) {
    const double re = std::stod(m[1].str());
    double im = 0.0;
    if (m[2].matched) {
      im = m[3].matched ? std::stod(m[3].str()) : 1.0;
      if (m[2].str() == "-") im = -im;
    }
    return {re, im};
  }
  throw ConfigError("zi: cannot parse complex number '" + text + "' (expected e.g. 2, 1.5-0.5j)");
}

std::vector<int> parse_int_list(const std::string &text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::exception &) {
      throw ConfigError("n: cannot parse '" + item + "' in '" + text + "'");
    }
  }
  if (out.empty()) throw ConfigError("n: empty list");
  return out;
}

void RunConfig::validate() const {
  try {
    model.validate();
  } catch (const ConfigError &e) {
    throw ConfigError(std::string("omega/U: ") + e.what());
  }
  try {
    precision.validate();
  } catch (const ConfigError &e) {
    throw ConfigError(std::string("digits/rel-tol/max-subdiv: ") + e.what());
  }
  if (needs_n_list(command) && n_list.empty()) throw ConfigError("n: required for " + to_string(command));
  for (int n : n_list) {
    if (n < 0) throw ConfigError("n: occupation numbers must be non-negative");
  }
  if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) throw ConfigError("tau-max: must be finite and >= 0");
  if (steps < 1) throw ConfigError("steps: must be positive");
  if (!(window.second > window.first)) throw ConfigError("window: expected lo < hi");
  if (!std::isfinite(t)) throw ConfigError("t: must be finite");
  if (!std::isfinite(z_i.real()) || !std::isfinite(z_i.imag())) throw ConfigError("zi: must be finite");
  if (command == Command::Wigner) {
    try {
      grid.validate();
    } catch (const ConfigError &e) {
      throw ConfigError(std::string("grid: ") + e.what());
    }
    if (wigner_methods.empty()) throw ConfigError("method: no Wigner method selected");
  }
  if (output_path.empty()) throw ConfigError("out: required");
  const auto parent = std::filesystem::path(output_path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent))
    throw ConfigError("out: directory '" + parent.string() + "' does not exist");
}

bool parse_args(int argc, const char *const *argv, RunConfig &config, std::ostream &out) {
  CLI::App app{"Herman-Kluk propagator for the single-site Bose-Hubbard model"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all");

  std::string n_text;
  std::string zi_text = "2";
  std::string method_text;
  std::string window_text = "2:10";
  std::string grid_text;
  std::string format_text = "csv";
  std::optional<int> digits;

  std::vector<CLI::App *> subs;
  for (const char *name : {"gn", "norm", "phase", "spectrum", "fga-compare", "wigner"}) {
    CLI::App *sub = app.add_subcommand(name);
    sub->add_option("--n", n_text, "comma-separated occupation numbers");
    sub->add_option("--tau-max", config.tau_max, "upper end of the tau = U t grid");
    sub->add_option("--steps", config.steps, "tau grid intervals");
    sub->add_option("--omega", config.model.omega_e, "harmonic frequency omega_e");
    sub->add_option("--U", config.model.interaction, "on-site interaction U");
    sub->add_option("--zi", zi_text, "initial coherent label, e.g. 2 or 1.5-0.5j");
    sub->add_option("--t", config.t, "evolution time (wigner)");
    sub->add_option("--digits", digits, "fixed working precision in decimal digits");
    sub->add_option("--rel-tol", config.precision.rel_tol, "relative quadrature tolerance");
    sub->add_option("--max-subdiv", config.precision.max_subdivisions, "adaptive subdivision budget");
    sub->add_option("--method", method_text, "exact|hk|fga|hk-no-theta; for wigner a list of exact,hk,twa");
    sub->add_option("--window", window_text, "tau_tilde = n tau window lo:hi for slope and plateau fits");
    sub->add_option("--grid", grid_text, "lo:hi:step or re_lo:re_hi:im_lo:im_hi:step");
    sub->add_option("--seed", config.seed, "random seed for Monte Carlo paths");
    sub->add_option("--out", config.output_path, "output file");
    sub->add_option("--format", format_text, "csv or json");
    subs.push_back(sub);
  }

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return false;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return false;
  } catch (const CLI::ParseError &e) {
    throw ConfigError(e.what());
  }
  for (CLI::App *sub : subs) {
    if (sub->parsed()) config.command = parse_command(sub->get_name());
  }

  if (!n_text.empty()) config.n_list = parse_int_list(n_text);
  config.z_i = parse_complex(zi_text);
  if (!method_text.empty()) {
    if (config.command == Command::Wigner) {
      config.wigner_methods.clear();
      std::stringstream ss(method_text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item == "exact") {
          config.wigner_methods.push_back(WignerMethod::Exact);
        } else if (item == "hk") {
          config.wigner_methods.push_back(WignerMethod::HK);
        } else if (item == "twa") {
          config.wigner_methods.push_back(WignerMethod::TWA);
        } else {
          throw ConfigError("method: unknown Wigner method '" + item + "'");
        }
      }
    } else {
      try {
        config.method = parse_method(method_text);
      } catch (const ConfigError &e) {
        throw ConfigError(std::string("method: ") + e.what());
      }
    }
  }
  {
    const auto colon = window_text.find(':');
    if (colon == std::string::npos) throw ConfigError("window: expected lo:hi, got '" + window_text + "'");
    try {
      config.window = {std::stod(window_text.substr(0, colon)), std::stod(window_text.substr(colon + 1))};
    } catch (const std::exception &) {
      throw ConfigError("window: cannot parse '" + window_text + "'");
    }
  }
  if (!grid_text.empty()) config.grid = GridSpec::parse(grid_text);
  if (format_text == "csv") {
    config.format = Format::Csv;
  } else if (format_text == "json") {
    config.format = Format::Json;
  } else {
    throw ConfigError("format: expected csv or json, got '" + format_text + "'");
  }

  if (!digits) {
    if (const char *env = std::getenv("HKBOSE_DIGITS"); env != nullptr && *env != '\0') {
      try {
        std::size_t used = 0;
        digits = std::stoi(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception &) {
        throw ConfigError(std::string("HKBOSE_DIGITS: cannot parse '") + env + "'");
      }
    }
  }
  if (digits) {
    config.precision.working_digits = *digits;
    config.precision.auto_digits = false;
  }
  config.validate();
  return true;
}

int run(const RunConfig &config, std::ostream &log) {
  try {
    config.validate();
    switch (config.command) {
      case Command::Gn:
        write_atomically(config.output_path, render(config, gn_table(config, log, false)));
        break;
      case Command::Norm:
        write_atomically(config.output_path, render(config, gn_table(config, log, true)));
        break;
      case Command::Phase:
        run_phase(config, log);
        break;
      case Command::Spectrum:
        write_atomically(config.output_path, render(config, spectrum_table(config)));
        break;
      case Command::FgaCompare:
        write_atomically(config.output_path, render(config, fga_compare_table(config, log)));
        break;
      case Command::Wigner:
        write_atomically(config.output_path, render(config, wigner_table(config, log)));
        break;
    }
  } catch (const ConfigError &e) {
    log << "error: " << e.what() << "\n";
    return 2;
  } catch (const NonConvergence &e) {
    log << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error &e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &log) {
  RunConfig config;
  try {
    if (!parse_args(argc, argv, config, out)) return 0;
  } catch (const ConfigError &e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
  return run(config, log);
}

}  // namespace hkbose::cli
