#ifndef HKBOSE_ERRORS_HPP
#define HKBOSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hkbose {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of subdivisions, or a Monte Carlo estimate
// did not reach the requested standard error.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class UnwrapFailure : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hkbose

#endif  // HKBOSE_ERRORS_HPP
