#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace fdom {

// Working-precision real. The precision (decimal digits) is set once per
// computation by ToleranceContext and is process-wide.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(int r) : re(r), im(0) {}     // NOLINT(google-explicit-constructor)

  Complex conj() const { return {re, -im}; }
  Real norm() const { return re * re + im * im; }  // |z|^2
  Real abs() const { return boost::multiprecision::hypot(re, im); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Real d = o.norm();
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator*(Complex a, const Real& s) { return a *= s; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator/(Complex a, const Real& s) {
  a.re /= s;
  a.im /= s;
  return a;
}
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

// Real and imaginary parts of a * conj(b), i.e. the dot and cross products of
// a and b viewed as plane vectors.
inline Real dot(const Complex& a, const Complex& b) { return a.re * b.re + a.im * b.im; }
inline Real cross(const Complex& a, const Complex& b) { return a.re * b.im - a.im * b.re; }

std::string to_string(const Real& x, int digits);

}  // namespace fdom
