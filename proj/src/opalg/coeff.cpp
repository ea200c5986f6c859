#include "qcounter/opalg/coeff.hpp"

#include <cstdio>
#include <stdexcept>

namespace qcounter::opalg {

namespace {

std::string rational_str(const Coeff::Rational& q) { return q.str(); }

std::string double_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Coeff Coeff::exact(Rational re, Rational im) {
  Coeff c;
  c.re_ = std::move(re);
  c.im_ = std::move(im);
  return c;
}

Coeff Coeff::inexact(std::complex<double> value) {
  Coeff c;
  c.exact_ = false;
  c.approx_ = value;
  return c;
}

bool Coeff::is_zero() const {
  if (exact_) return re_ == 0 && im_ == 0;
  return approx_ == std::complex<double>(0.0, 0.0);
}

bool Coeff::is_one() const {
  if (exact_) return re_ == 1 && im_ == 0;
  return approx_ == std::complex<double>(1.0, 0.0);
}

bool Coeff::is_real() const { return exact_ ? im_ == 0 : approx_.imag() == 0.0; }

std::complex<double> Coeff::value() const {
  if (!exact_) return approx_;
  return {re_.convert_to<double>(), im_.convert_to<double>()};
}

Coeff Coeff::conj() const {
  if (exact_) return exact(re_, -im_);
  return inexact(std::conj(approx_));
}

Coeff Coeff::operator-() const {
  if (exact_) return exact(-re_, -im_);
  return inexact(-approx_);
}

Coeff& Coeff::operator+=(const Coeff& rhs) {
  if (exact_ && rhs.exact_) {
    re_ += rhs.re_;
    im_ += rhs.im_;
  } else {
    *this = inexact(value() + rhs.value());
  }
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& rhs) { return *this += -rhs; }

Coeff& Coeff::operator*=(const Coeff& rhs) {
  if (exact_ && rhs.exact_) {
    Rational re = re_ * rhs.re_ - im_ * rhs.im_;
    Rational im = re_ * rhs.im_ + im_ * rhs.re_;
    re_ = std::move(re);
    im_ = std::move(im);
  } else {
    *this = inexact(value() * rhs.value());
  }
  return *this;
}

Coeff& Coeff::operator/=(const Coeff& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero coefficient");
  if (exact_ && rhs.exact_) {
    Rational den = rhs.re_ * rhs.re_ + rhs.im_ * rhs.im_;
    Rational re = (re_ * rhs.re_ + im_ * rhs.im_) / den;
    Rational im = (im_ * rhs.re_ - re_ * rhs.im_) / den;
    re_ = std::move(re);
    im_ = std::move(im);
  } else {
    *this = inexact(value() / rhs.value());
  }
  return *this;
}

bool operator==(const Coeff& lhs, const Coeff& rhs) {
  if (lhs.exact_ && rhs.exact_) return lhs.re_ == rhs.re_ && lhs.im_ == rhs.im_;
  return lhs.value() == rhs.value();
}

std::string Coeff::str() const {
  if (exact_) {
    if (im_ == 0) return rational_str(re_);
    if (re_ == 0) return "(" + rational_str(im_) + "*i)";
    std::string im = rational_str(im_);
    if (im.front() != '-') im = "+" + im;
    return "(" + rational_str(re_) + im + "*i)";
  }
  if (approx_.imag() == 0.0) return double_str(approx_.real());
  std::string im = double_str(approx_.imag());
  if (im.front() != '-') im = "+" + im;
  return "(" + double_str(approx_.real()) + im + "*i)";
}

}  // namespace qcounter::opalg
