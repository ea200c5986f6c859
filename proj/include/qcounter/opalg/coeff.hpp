#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qcounter::opalg {

/// Complex scalar that stays exact (arbitrary-precision rational real and
/// imaginary parts) until it meets a floating-point operand.
class Coeff {
 public:
  using Rational = boost::multiprecision::cpp_rational;

  Coeff() = default;
  Coeff(long long value) : re_(value) {}  // NOLINT(google-explicit-constructor)

  static Coeff exact(Rational re, Rational im = 0);
  static Coeff inexact(std::complex<double> value);

  bool is_exact() const { return exact_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_real() const;

  std::complex<double> value() const;
  double magnitude() const { return std::abs(value()); }

  const Rational& real_exact() const { return re_; }
  const Rational& imag_exact() const { return im_; }

  Coeff conj() const;

  Coeff& operator+=(const Coeff& rhs);
  Coeff& operator-=(const Coeff& rhs);
  Coeff& operator*=(const Coeff& rhs);
  Coeff& operator/=(const Coeff& rhs);

  friend Coeff operator+(Coeff lhs, const Coeff& rhs) { return lhs += rhs; }
  friend Coeff operator-(Coeff lhs, const Coeff& rhs) { return lhs -= rhs; }
  friend Coeff operator*(Coeff lhs, const Coeff& rhs) { return lhs *= rhs; }
  friend Coeff operator/(Coeff lhs, const Coeff& rhs) { return lhs /= rhs; }
  Coeff operator-() const;

  /// Exact comparison when both sides are exact; otherwise compares values.
  friend bool operator==(const Coeff& lhs, const Coeff& rhs);

  /// Parseable text: "3", "-1/2", "(1/2+3*i)", "2.5000000000000001e-01".
  std::string str() const;

 private:
  bool exact_ = true;
  Rational re_{0};
  Rational im_{0};
  std::complex<double> approx_{0.0, 0.0};
};

}  // namespace qcounter::opalg
