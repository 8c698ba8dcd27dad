#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cfloat>
#include <cmath>
#include <limits>
#include <mutex>

namespace newman {

namespace mp = boost::multiprecision;

using BigInt = mp::mpz_int;
using Rational = mp::mpq_rational;
// Binary floating point whose precision is chosen at run time (see PrecisionScope).
using HighReal = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

/// Sets the working precision of HighReal for the lifetime of the object.
///
/// The underlying default precision is process-wide, so scopes are serialized:
/// a second thread constructing a scope blocks until the first is released.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  unsigned bits() const { return bits_; }

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned bits_;
  unsigned saved_digits10_;
};

unsigned bits_to_digits10(unsigned bits);

template <class Real>
Real unit_roundoff() {
  if constexpr (std::is_same_v<Real, double>) {
    return DBL_EPSILON / 2;
  } else {
    return std::numeric_limits<Real>::epsilon() / 2;
  }
}

template <class Real>
double to_double(const Real& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

template <class Real>
Real pi_v() {
  using std::acos;
  return acos(Real(-1));
}

}  // namespace newman
