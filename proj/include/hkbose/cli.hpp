#ifndef HKBOSE_CLI_HPP
#define HKBOSE_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hkbose/model.hpp"
#include "hkbose/propagator.hpp"
#include "hkbose/quadrature.hpp"
#include "hkbose/wigner.hpp"

namespace hkbose::cli {

enum class Command { Gn, Norm, Phase, Spectrum, FgaCompare, Wigner };
enum class Format { Csv, Json };

std::string to_string(Command command);
Command parse_command(const std::string &text);

struct RunConfig {
  Command command = Command::Gn;
  ModelParams model;
  PrecisionConfig precision;
  std::vector<int> n_list;
  double tau_max = 1.0;
  int steps = 200;
  Method method = Method::HK;
  std::vector<WignerMethod> wigner_methods{WignerMethod::Exact, WignerMethod::HK, WignerMethod::TWA};
  std::pair<double, double> window{2.0, 10.0};  // over tau_tilde = n tau
  cplx z_i{2.0, 0.0};
  double t = 0.0;
  GridSpec grid;
  std::uint64_t seed = 20170101;
  std::string output_path;
  Format format = Format::Csv;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// "2", "1.5-0.5j", "-1j", "0.3+2j"
cplx parse_complex(const std::string &text);
std::vector<int> parse_int_list(const std::string &text);

// Builds a RunConfig from argv. Honors HKBOSE_DIGITS when --digits is
// absent. Throws ConfigError on bad input; returns false (with usage already
// printed to `out`) for --help.
bool parse_args(int argc, const char *const *argv, RunConfig &config, std::ostream &out);

// Runs the command and writes its artifact(s) atomically. Progress goes to
// `log`. Returns 0, or 2 on ConfigError, 3 on NonConvergence, 1 otherwise.
int run(const RunConfig &config, std::ostream &log);

// Entry point shared by the executable and the tests.
int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &log);

}  // namespace hkbose::cli

#endif  // HKBOSE_CLI_HPP
