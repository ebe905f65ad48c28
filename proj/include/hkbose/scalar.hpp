#ifndef HKBOSE_SCALAR_HPP
#define HKBOSE_SCALAR_HPP

#include <cmath>
#include <complex>

#include "hkbose/bigfloat.hpp"

namespace hkbose {

// Minimal complex number over an arbitrary real scalar. std::complex<T> is
// only specified for the built-in floating types, so the high-precision path
// uses this pair instead.
template <typename T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  Complex &operator+=(const Complex &o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex &operator-=(const Complex &o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend Complex operator+(const Complex &a, const Complex &b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex &a, const Complex &b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex &a, const Complex &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const T &a, const Complex &b) { return {a * b.re, a * b.im}; }
  friend Complex operator*(const Complex &a, const T &b) { return {a.re * b, a.im * b}; }

  std::complex<double> to_std() const;
};

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double from(double v) { return v; }
  static double to_double(double v) { return v; }
  static double lgamma(double v) { return std::lgamma(v); }
  static double pi() { return 3.14159265358979323846; }
};

template <>
struct ScalarTraits<BigFloat> {
  static BigFloat from(double v) { return BigFloat(v); }
  static double to_double(const BigFloat &v) { return v.to_double(); }
  static BigFloat lgamma(const BigFloat &v) { return hkbose::lgamma(v); }
  static BigFloat pi() { return pi_at(BigFloat::working_bits()); }
};

template <typename T>
std::complex<double> Complex<T>::to_std() const {
  return {ScalarTraits<T>::to_double(re), ScalarTraits<T>::to_double(im)};
}

// exp(i * phase)
template <typename T>
Complex<T> unit_phase(const T &phase) {
  using std::cos;
  using std::sin;
  return {cos(phase), sin(phase)};
}

// |z|
template <typename T>
T modulus(const Complex<T> &z) {
  using std::hypot;
  return hypot(z.re, z.im);
}

// Principal square root, evaluated without cancellation in either component.
template <typename T>
Complex<T> principal_sqrt(const Complex<T> &z) {
  using std::abs;
  using std::sqrt;
  const T zero = ScalarTraits<T>::from(0.0);
  const T r = modulus(z);
  if (r == zero) return {zero, zero};
  if (z.re >= zero) {
    T re = sqrt((r + z.re) * ScalarTraits<T>::from(0.5));
    T im = z.im / (re + re);
    return {re, im};
  }
  T im = sqrt((r - z.re) * ScalarTraits<T>::from(0.5));
  if (z.im < zero) im = -im;
  T re = z.im / (im + im);
  return {re, im};
}

}  // namespace hkbose

#endif  // HKBOSE_SCALAR_HPP
