#ifndef HKBOSE_BIGFLOAT_HPP
#define HKBOSE_BIGFLOAT_HPP

#include <mpfr.h>

#include <string>
#include <utility>

namespace hkbose {

// Number of binary digits needed for `digits10` decimal digits (plus guard bits).
mpfr_prec_t bits_for_digits(int digits10);

// Arbitrary-precision real backed by MPFR.
//
// Every value carries its own precision. Newly created values take the
// calling thread's working precision (see PrecisionScope); binary operations
// produce a result at the larger precision of the two operands.
class BigFloat {
 public:
  BigFloat();
  BigFloat(double v);  // NOLINT(google-explicit-constructor): mirrors double
  BigFloat(int v);     // NOLINT(google-explicit-constructor)
  BigFloat(double v, mpfr_prec_t bits);
  explicit BigFloat(const std::string &decimal);

  BigFloat(const BigFloat &other);
  BigFloat(BigFloat &&other) noexcept;
  BigFloat &operator=(const BigFloat &other);
  BigFloat &operator=(BigFloat &&other) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  std::string to_string(int digits10 = 20) const;

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }

  // Thread-local working precision used for new values.
  static mpfr_prec_t working_bits();
  static void set_working_bits(mpfr_prec_t bits);

  BigFloat &operator+=(const BigFloat &rhs);
  BigFloat &operator-=(const BigFloat &rhs);
  BigFloat &operator*=(const BigFloat &rhs);
  BigFloat &operator/=(const BigFloat &rhs);

  BigFloat operator-() const;

  friend BigFloat operator+(const BigFloat &a, const BigFloat &b);
  friend BigFloat operator-(const BigFloat &a, const BigFloat &b);
  friend BigFloat operator*(const BigFloat &a, const BigFloat &b);
  friend BigFloat operator/(const BigFloat &a, const BigFloat &b);

  friend bool operator<(const BigFloat &a, const BigFloat &b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const BigFloat &a, const BigFloat &b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const BigFloat &a, const BigFloat &b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const BigFloat &a, const BigFloat &b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
  friend bool operator==(const BigFloat &a, const BigFloat &b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

 private:
  struct Uninitialized {};
  BigFloat(Uninitialized, mpfr_prec_t bits);

  mpfr_t value_;
};

// Sets the calling thread's working precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope &) = delete;
  PrecisionScope &operator=(const PrecisionScope &) = delete;

 private:
  mpfr_prec_t saved_;
};

BigFloat exp(const BigFloat &x);
BigFloat log(const BigFloat &x);
BigFloat sqrt(const BigFloat &x);
BigFloat sin(const BigFloat &x);
BigFloat cos(const BigFloat &x);
BigFloat atan2(const BigFloat &y, const BigFloat &x);
BigFloat abs(const BigFloat &x);
BigFloat hypot(const BigFloat &x, const BigFloat &y);
BigFloat lgamma(const BigFloat &x);
BigFloat pi_at(mpfr_prec_t bits);

}  // namespace hkbose

#endif  // HKBOSE_BIGFLOAT_HPP
