#pragma once

#include "newman/complex.hpp"
#include "newman/errors.hpp"
#include "newman/real.hpp"

#include <string>
#include <vector>

namespace newman {

/// Value and derivative of a real polynomial (ascending coefficients) at z.
template <class Real>
void horner(const std::vector<Real>& c, const Complex<Real>& z, Complex<Real>& p, Complex<Real>& dp) {
  p = Complex<Real>(c.back());
  dp = Complex<Real>(Real(0));
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + Complex<Real>(c[k]);
  }
}

/// Sum of |c_k| |z|^k, the scale against which a computed p(z) is judged.
template <class Real>
Real horner_magnitude(const std::vector<Real>& c, const Real& r) {
  using std::abs;
  Real acc = abs(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * r + abs(c[k]);
  return acc;
}

/// Simultaneous Aberth-Ehrlich iteration for all roots of a real polynomial
/// (ascending coefficients, nonzero leading term), followed by two Newton steps
/// per root. A root is accepted once its correction drops below tol*(1+|z|) or
/// p(z) is at rounding level. Throws NumericFailure if max_iter is exhausted.
template <class Real>
std::vector<Complex<Real>> aberth_roots(const std::vector<Real>& coeffs, std::vector<Complex<Real>> z,
                                        const Real& tol, int max_iter = 500) {
  using C = Complex<Real>;
  const std::size_t n = coeffs.size() - 1;
  if (n == 0 || coeffs.back() == 0) throw ContractViolation("root finder needs a nonconstant polynomial");
  if (z.size() != n) throw ContractViolation("root finder needs one seed per root");
  const Real u = unit_roundoff<Real>();
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      C p, dp;
      horner(coeffs, z[k], p, dp);
      const Real zk_abs = abs(z[k]);
      if (abs(p) <= 8 * u * (n + 1) * horner_magnitude(coeffs, zk_abs)) {
        done[k] = true;
        continue;
      }
      C ratio = p / dp;
      C sum(Real(0));
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += inverse(z[k] - z[j]);
      C w = ratio / (C(Real(1)) - ratio * sum);
      z[k] -= w;
      if (abs(w) <= tol * (1 + zk_abs)) done[k] = true;
      else all_done = false;
    }
    if (all_done) {
      for (auto& zk : z) {
        for (int s = 0; s < 2; ++s) {
          C p, dp;
          horner(coeffs, zk, p, dp);
          if (abs(dp) == 0) break;
          C next = zk - p / dp;
          C pn, dpn;
          horner(coeffs, next, pn, dpn);
          if (abs(pn) <= abs(p)) zk = next;
        }
      }
      return z;
    }
  }
  throw NumericFailure("root iteration did not converge in " + std::to_string(max_iter) + " steps");
}

}  // namespace newman
