#pragma once

#include <cmath>
#include <ostream>

namespace newman {

// Minimal complex arithmetic over any real type, including multiprecision ones
// for which std::complex is unspecified.
template <class Real>
struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(const Real& r, const Real& i) : re(r), im(i) {}

  template <class Other>
  static Complex from(const Complex<Other>& z) {
    return Complex(Real(z.re), Real(z.im));
  }

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
    re = r;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Real den = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = r;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
  friend Complex operator*(const Real& s, const Complex& z) { return Complex(s * z.re, s * z.im); }
  friend Complex operator*(const Complex& z, const Real& s) { return Complex(s * z.re, s * z.im); }
  friend Complex operator/(const Complex& z, const Real& s) { return Complex(z.re / s, z.im / s); }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << z.re << ',' << z.im << ')';
  }
};

template <class Real>
Complex<Real> conj(const Complex<Real>& z) {
  return Complex<Real>(z.re, -z.im);
}

template <class Real>
Real norm(const Complex<Real>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class Real>
Real abs(const Complex<Real>& z) {
  using std::abs;
  using std::sqrt;
  Real ar = abs(z.re), ai = abs(z.im);
  if (ar < ai) std::swap(ar, ai);
  if (ar == 0) return Real(0);
  Real q = ai / ar;
  return ar * sqrt(Real(1) + q * q);
}

template <class Real>
Real arg(const Complex<Real>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

template <class Real>
Complex<Real> polar(const Real& r, const Real& theta) {
  using std::cos;
  using std::sin;
  return Complex<Real>(r * cos(theta), r * sin(theta));
}

template <class Real>
Complex<Real> pow(Complex<Real> z, unsigned long long n) {
  Complex<Real> result(Real(1));
  while (n) {
    if (n & 1) result *= z;
    n >>= 1;
    if (n) z *= z;
  }
  return result;
}

template <class Real>
Complex<Real> inverse(const Complex<Real>& z) {
  return Complex<Real>(Real(1)) / z;
}

}  // namespace newman
