#include "hkbose/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hkbose {

namespace {

thread_local mpfr_prec_t g_working_bits = 64;

mpfr_prec_t max_prec(const BigFloat &a, const BigFloat &b) { return std::max(a.precision(), b.precision()); }

}  // namespace

mpfr_prec_t bits_for_digits(int digits10) {
  // log2(10) ~ 3.3219; a few guard bits keep the last requested digit honest.
  return static_cast<mpfr_prec_t>(std::ceil(digits10 * 3.32192809488736)) + 8;
}

mpfr_prec_t BigFloat::working_bits() { return g_working_bits; }
void BigFloat::set_working_bits(mpfr_prec_t bits) { g_working_bits = std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN); }

BigFloat::BigFloat(Uninitialized, mpfr_prec_t bits) { mpfr_init2(value_, bits); }

BigFloat::BigFloat() : BigFloat(Uninitialized{}, g_working_bits) { mpfr_set_zero(value_, 1); }

BigFloat::BigFloat(double v) : BigFloat(Uninitialized{}, g_working_bits) { mpfr_set_d(value_, v, MPFR_RNDN); }

BigFloat::BigFloat(int v) : BigFloat(Uninitialized{}, g_working_bits) { mpfr_set_si(value_, v, MPFR_RNDN); }

BigFloat::BigFloat(double v, mpfr_prec_t bits) : BigFloat(Uninitialized{}, bits) { mpfr_set_d(value_, v, MPFR_RNDN); }

BigFloat::BigFloat(const std::string &decimal) : BigFloat(Uninitialized{}, g_working_bits) {
  if (mpfr_set_str(value_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(value_);
    throw std::invalid_argument("BigFloat: cannot parse '" + decimal + "'");
  }
}

BigFloat::BigFloat(const BigFloat &other) : BigFloat(Uninitialized{}, other.precision()) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat &&other) noexcept {
  // Steal the limbs; leave `other` as a valid minimal-precision zero.
  *value_ = *other.value_;
  mpfr_init2(other.value_, MPFR_PREC_MIN);
  mpfr_set_zero(other.value_, 1);
}

BigFloat &BigFloat::operator=(const BigFloat &other) {
  if (this != &other) {
    if (precision() != other.precision()) mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat &BigFloat::operator=(BigFloat &&other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits10) const {
  char *buffer = nullptr;
  const std::string format = "%." + std::to_string(digits10) + "Rg";
  mpfr_asprintf(&buffer, format.c_str(), value_);
  std::string out = buffer ? buffer : "";
  mpfr_free_str(buffer);
  return out;
}

BigFloat &BigFloat::operator+=(const BigFloat &rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat &BigFloat::operator-=(const BigFloat &rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat &BigFloat::operator*=(const BigFloat &rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat &BigFloat::operator/=(const BigFloat &rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(Uninitialized{}, precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

BigFloat operator+(const BigFloat &a, const BigFloat &b) {
  BigFloat out(BigFloat::Uninitialized{}, max_prec(a, b));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat &a, const BigFloat &b) {
  BigFloat out(BigFloat::Uninitialized{}, max_prec(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator*(const BigFloat &a, const BigFloat &b) {
  BigFloat out(BigFloat::Uninitialized{}, max_prec(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator/(const BigFloat &a, const BigFloat &b) {
  BigFloat out(BigFloat::Uninitialized{}, max_prec(a, b));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

PrecisionScope::PrecisionScope(int digits10) : saved_(BigFloat::working_bits()) {
  BigFloat::set_working_bits(bits_for_digits(digits10));
}

PrecisionScope::~PrecisionScope() { BigFloat::set_working_bits(saved_); }

namespace {

template <typename Fn>
BigFloat unary(const BigFloat &x, Fn fn) {
  BigFloat out(0.0, x.precision());
  fn(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

}  // namespace

BigFloat exp(const BigFloat &x) { return unary(x, mpfr_exp); }
BigFloat log(const BigFloat &x) { return unary(x, mpfr_log); }
BigFloat sqrt(const BigFloat &x) { return unary(x, mpfr_sqrt); }
BigFloat sin(const BigFloat &x) { return unary(x, mpfr_sin); }
BigFloat cos(const BigFloat &x) { return unary(x, mpfr_cos); }
BigFloat abs(const BigFloat &x) { return unary(x, mpfr_abs); }

BigFloat lgamma(const BigFloat &x) { return unary(x, mpfr_lngamma); }

BigFloat atan2(const BigFloat &y, const BigFloat &x) {
  BigFloat out(0.0, std::max(x.precision(), y.precision()));
  mpfr_atan2(out.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigFloat hypot(const BigFloat &x, const BigFloat &y) {
  BigFloat out(0.0, std::max(x.precision(), y.precision()));
  mpfr_hypot(out.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return out;
}

BigFloat pi_at(mpfr_prec_t bits) {
  BigFloat out(0.0, bits);
  mpfr_const_pi(out.raw(), MPFR_RNDN);
  return out;
}

}  // namespace hkbose
