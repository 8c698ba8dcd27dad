#pragma once

#include "newman/complex.hpp"
#include "newman/errors.hpp"
#include "newman/real.hpp"
#include "newman/roots.hpp"

#include <array>
#include <string>
#include <vector>

namespace newman {

/// Roots of x^5 + t x^3 + 1 for t >= 0: alpha is the negative real root, beta the
/// upper-half-plane root with argument in (2pi/5, 4pi/5) and gamma the one with
/// argument in (0, 2pi/5). The remaining two are the conjugates of beta and gamma.
template <class Real>
struct QuinticRoots {
  Real t;
  Real alpha;
  Complex<Real> beta;
  Complex<Real> gamma;
  Real tol;

  /// alpha, beta, conj(beta), gamma, conj(gamma).
  std::array<Complex<Real>, 5> all() const {
    return {Complex<Real>(alpha), beta, conj(beta), gamma, conj(gamma)};
  }
  /// The same roots at t = 0, in the same order.
  static std::array<Complex<Real>, 5> base_points() {
    const Real pi = pi_v<Real>();
    auto b = polar(Real(1), 3 * pi / 5), g = polar(Real(1), pi / 5);
    return {Complex<Real>(Real(-1)), b, conj(b), g, conj(g)};
  }
};

template <class Real>
Real default_root_tolerance(const Real& t) {
  if constexpr (std::is_same_v<Real, double>) {
    return 1e-14 * (1 + t);
  } else {
    return 2048 * unit_roundoff<Real>() * (1 + t);
  }
}

template <class Real>
Complex<Real> quintic_value(const Real& t, const Complex<Real>& z) {
  Complex<Real> z2 = z * z;
  Complex<Real> z3 = z2 * z;
  return z3 * z2 + t * z3 + Complex<Real>(Real(1));
}

/// Roots of x^5 + t x^3 + 1 seeded at the roots of x^5 + 1; validates residuals,
/// sectors, |alpha||beta|^2|gamma|^2 = 1 and separation. Throws DomainError for
/// t < 0 and NumericFailure when the iteration or a validation fails.
template <class Real>
QuinticRoots<Real> find_roots(const Real& t, Real tol) {
  using C = Complex<Real>;
  using std::abs;
  if (t < 0) throw DomainError("quintic parameter must be nonnegative");
  if (tol <= 0) tol = default_root_tolerance(t);
  auto seeds = QuinticRoots<Real>::base_points();
  std::vector<C> z(seeds.begin(), seeds.end());
  std::vector<Real> coeffs = {Real(1), Real(0), Real(0), t, Real(0), Real(1)};
  z = aberth_roots(coeffs, z, tol / 16);

  const Real pi = pi_v<Real>();
  QuinticRoots<Real> r{t, Real(0), C(), C(), tol};
  int n_alpha = 0, n_beta = 0, n_gamma = 0, n_lower = 0;
  Real alpha_im = 0;
  for (const auto& root : z) {
    const Real theta = arg(root);
    if (abs(root.im) <= 1e3 * tol && root.re < 0) {
      r.alpha = root.re;
      alpha_im = root.im;
      ++n_alpha;
    } else if (root.im > 0 && theta > 2 * pi / 5 && theta < 4 * pi / 5) {
      r.beta = root;
      ++n_beta;
    } else if (root.im > 0 && theta > 0 && theta < 2 * pi / 5) {
      r.gamma = root;
      ++n_gamma;
    } else if (root.im < 0) {
      ++n_lower;
    }
  }
  (void)alpha_im;
  if (n_alpha != 1 || n_beta != 1 || n_gamma != 1 || n_lower != 2)
    throw NumericFailure("quintic roots at t = " + std::to_string(to_double(t)) + " do not fall into the expected sectors");

  // Real Newton polish of alpha on the real line.
  for (int s = 0; s < 3; ++s) {
    Real a2 = r.alpha * r.alpha;
    Real f = a2 * a2 * r.alpha + t * a2 * r.alpha + 1;
    Real df = 5 * a2 * a2 + 3 * t * a2;
    Real next = r.alpha - f / df;
    Real n2 = next * next;
    if (abs(n2 * n2 * next + t * n2 * next + 1) <= abs(f)) r.alpha = next;
  }

  for (const auto& root : r.all()) {
    if (abs(quintic_value(t, root)) > tol)
      throw NumericFailure("quintic residual above tolerance at t = " + std::to_string(to_double(t)));
  }
  if (abs(abs(r.alpha) * norm(r.beta) * norm(r.gamma) - 1) > tol)
    throw NumericFailure("root product check failed at t = " + std::to_string(to_double(t)));
  auto all = r.all();
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      if (abs(all[i] - all[j]) < 10 * tol)
        throw NumericFailure("quintic roots not separated at t = " + std::to_string(to_double(t)));
  return r;
}

template <class Real>
QuinticRoots<Real> find_roots(const Real& t) {
  return find_roots(t, default_root_tolerance(t));
}

template <class Real>
struct ResidueCoeffs {
  Real c_alpha;
  Complex<Real> c_beta;
  Complex<Real> c_gamma;
};

/// c_rho = -t rho^2 / ((2 rho^5 - 3)(rho^2 - 1)) for a quintic root rho.
/// Evaluated as -S / ((2 rho^5 - 3) rho (2 + t rho^3)) with S = 1 + rho^2 + ... + rho^8,
/// which follows from rho^10 - 1 = t rho^3 (2 + t rho^3) and avoids the
/// cancellation in rho^2 - 1 when t is small.
template <class Real>
Complex<Real> residue_at(const Real& t, const Complex<Real>& rho) {
  using C = Complex<Real>;
  C r2 = rho * rho;
  C r3 = r2 * rho;
  C r5 = r3 * r2;
  C s = C(Real(1)) + r2 * (C(Real(1)) + r2 * (C(Real(1)) + r2 * (C(Real(1)) + r2)));
  return -s / ((C(Real(2)) * r5 - C(Real(3))) * rho * (C(Real(2)) + t * r3));
}

/// Coefficients of the closed form y_n = sum over roots of c_rho rho^n. Requires t > 0.
template <class Real>
ResidueCoeffs<Real> residue_coeffs(const QuinticRoots<Real>& r) {
  if (!(r.t > 0)) throw DomainError("residue coefficients are degenerate at t = 0");
  return {residue_at(r.t, Complex<Real>(r.alpha)).re, residue_at(r.t, r.beta), residue_at(r.t, r.gamma)};
}

template <class Real>
Real power(Real x, unsigned long long n) {
  Real result(1);
  while (n) {
    if (n & 1) result *= x;
    n >>= 1;
    if (n) x *= x;
  }
  return result;
}

/// c_alpha alpha^n + 2 Re(c_beta beta^n + c_gamma gamma^n).
template <class Real>
Real closed_form_y(const QuinticRoots<Real>& r, const ResidueCoeffs<Real>& c, unsigned long long n) {
  Complex<Real> s = c.c_beta * pow(r.beta, n) + c.c_gamma * pow(r.gamma, n);
  return c.c_alpha * power(r.alpha, n) + 2 * s.re;
}

template <class Real>
using ComplexMatrix = std::vector<std::vector<Complex<Real>>>;

inline constexpr std::size_t vandermonde_max_nodes = 12;

/// V with V(i, j) = nodes[i]^j (0-based).
template <class Real>
ComplexMatrix<Real> vandermonde_matrix(const std::vector<Complex<Real>>& nodes) {
  const std::size_t n = nodes.size();
  ComplexMatrix<Real> v(n, std::vector<Complex<Real>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    Complex<Real> p(Real(1));
    for (std::size_t j = 0; j < n; ++j) {
      v[i][j] = p;
      p *= nodes[i];
    }
  }
  return v;
}

/// Inverse of vandermonde_matrix(nodes) from the nodes' elementary symmetric
/// functions: entry (i, j) (1-based) is
///   (rho_j^{n-i} + s_1 rho_j^{n-i-1} + ... + s_{n-i}) / f'(rho_j),
/// with f(x) = prod (x - rho_k) = x^n + s_1 x^{n-1} + ... + s_n.
/// Throws SingularityError for nodes closer than 1e-12 (relative), CapacityError past 12 nodes.
template <class Real>
ComplexMatrix<Real> vandermonde_inverse(const std::vector<Complex<Real>>& nodes) {
  using C = Complex<Real>;
  const std::size_t n = nodes.size();
  if (n == 0) throw ContractViolation("no nodes");
  if (n > vandermonde_max_nodes) throw CapacityError("at most 12 Vandermonde nodes");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Real scale = Real(1);
      if (abs(nodes[i]) > scale) scale = abs(nodes[i]);
      if (abs(nodes[j]) > scale) scale = abs(nodes[j]);
      if (abs(nodes[i] - nodes[j]) <= Real(1e-12) * scale) throw SingularityError("duplicate Vandermonde nodes");
    }
  // s[k] = coefficient of x^{n-k} in f.
  std::vector<C> s(n + 1, C(Real(0)));
  s[0] = C(Real(1));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = m + 1; k >= 1; --k) s[k] -= nodes[m] * s[k - 1];
  ComplexMatrix<Real> inv(n, std::vector<C>(n));
  for (std::size_t j = 0; j < n; ++j) {
    C fprime(Real(1));
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) fprime *= nodes[j] - nodes[k];
    // Horner in rho_j over s_0..s_{n-i}, row i = 1..n.
    for (std::size_t i = 1; i <= n; ++i) {
      C acc(Real(0));
      for (std::size_t k = 0; k <= n - i; ++k) acc = acc * nodes[j] + s[k];
      inv[i - 1][j] = acc / fprime;
    }
  }
  return inv;
}

/// Max-row-sum norm of A*B - I.
template <class Real>
Real identity_defect(const ComplexMatrix<Real>& a, const ComplexMatrix<Real>& b) {
  const std::size_t n = a.size();
  Real worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Real row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Complex<Real> acc(Real(i == j ? -1 : 0));
      for (std::size_t k = 0; k < n; ++k) acc += a[i][k] * b[k][j];
      row += abs(acc);
    }
    if (row > worst) worst = row;
  }
  return worst;
}

/// Residue coefficients recovered from y_0..y_4 through the explicit inverse:
/// with V(i, j) = rho_i^j the initial values satisfy y_m = sum_j c_j rho_j^m, so
/// c_j = sum_i inv(i, j) y_i. Returned in the order of QuinticRoots::all().
template <class Real>
std::array<Complex<Real>, 5> residues_from_initial_values(const QuinticRoots<Real>& r) {
  auto nodes = r.all();
  auto inv = vandermonde_inverse(std::vector<Complex<Real>>(nodes.begin(), nodes.end()));
  const Real q = Real(1) / (2 + r.t);
  const Real y[5] = {-q, 1 - q, -q, 1 - q, -q};
  std::array<Complex<Real>, 5> c;
  for (std::size_t j = 0; j < 5; ++j) {
    Complex<Real> acc(Real(0));
    for (std::size_t i = 0; i < 5; ++i) acc += inv[i][j] * y[i];
    c[j] = acc;
  }
  return c;
}

/// Leading-order location of the counterfactual index, using |beta| ~ 1 + (a/5)cos(pi/5):
/// 5 / cos(pi/5) * a^{-1} * log(2.5 / a). Domain 0 < a <= 0.005.
double estimate_N(double a);
/// The same expression with cos(pi/10) in place of cos(pi/5).
double estimate_N_printed(double a);

/// Derivatives of a quintic root in t.
template <class Real>
Complex<Real> root_velocity(const Real& t, const Complex<Real>& rho) {
  auto inv = inverse(rho);
  return -inv / (Complex<Real>(Real(5)) + t * 3 * inv * inv);
}

template <class Real>
Complex<Real> root_acceleration(const Real& t, const Complex<Real>& rho) {
  auto inv = inverse(rho);
  auto inv2 = inv * inv;
  auto den = Complex<Real>(Real(5)) + t * 3 * inv2;
  return Real(2) * inv2 * inv * (Complex<Real>(Real(5)) + t * 6 * inv2) / (den * den * den);
}

// ---------------------------------------------------------------- estimate battery

struct GridSpec {
  double t_step = 1e-3;          // monotonicity grid on [0, 1]
  std::size_t wide_count = 1000; // a-grid on [0.005, 0.999]
  std::size_t small_count = 500; // t-grid on (0, 0.005]
  std::size_t samples = 100000;  // random samples for the trigonometric inequality
  std::uint64_t seed = 1;
  unsigned high_precision_bits = 160;

  /// "default" or comma-separated key=value pairs over the fields above,
  /// e.g. "t_step=0.002,samples=5000". Throws DomainError on bad input.
  static GridSpec parse(const std::string& spec);
  std::string to_string() const;
};

struct CheckResult {
  std::string id;         // "a" .. "m"
  std::string statement;  // what is asserted
  std::string grid;       // where it was sampled
  double worst_margin = 0;
  double worst_at = 0;    // parameter value attaining the worst margin
  bool pass = false;
  std::string detail;
};

struct BatteryReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Runs every sampled estimate; a root-finder failure aborts with the offending t.
BatteryReport check_estimates(const GridSpec& grid = {});

}  // namespace newman
