#pragma once
// Reference implementations used only by the tests. They are deliberately
// naive and share no code with the library paths they check.

#include "newman/modpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using newman::BigInt;

// Sylvester matrix built independently of the library (rows of f shifted, then rows of g).
inline std::vector<std::vector<long long>> sylvester(const std::vector<long long>& f,
                                                     const std::vector<long long>& g) {
  const std::size_t d = f.size() - 1, e = g.size() - 1, n = d + e;
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (std::size_t r = 0; r < e; ++r)
    for (std::size_t k = 0; k <= d; ++k) m[r][r + k] = f[d - k];
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k <= e; ++k) m[e + r][r + k] = g[e - k];
  return m;
}

// Leibniz expansion: sum over all permutations. Only for n <= 8.
inline BigInt leibniz_det(const std::vector<std::vector<long long>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    BigInt term = (inversions % 2) ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Gaussian elimination over Z/pZ with Fermat inverses.
inline std::uint64_t det_mod(std::vector<std::vector<long long>> m, std::uint64_t p) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = ((m[i][j] % (long long)p) + (long long)p) % (long long)p;
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = (p - det) % p;
    }
    det = det * a[c][c] % p;
    std::uint64_t inv = powmod(a[c][c], p - 2, p);
    for (std::size_t r = c + 1; r < n; ++r) {
      std::uint64_t f = a[r][c] * inv % p;
      for (std::size_t k = c; k < n; ++k) a[r][k] = (a[r][k] + (p - f) * a[c][k]) % p;
    }
  }
  return det;
}

// Coefficients with nonzero leading entry (ascending order).
inline std::vector<long long> random_poly(std::mt19937_64& rng, std::size_t degree, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::vector<long long> c(degree + 1);
  for (auto& x : c) x = dist(rng);
  while (c.back() == 0) c.back() = dist(rng);
  return c;
}

}  // namespace oracle

#include <complex>

namespace oracle {

// Durand-Kerner (Weierstrass) iteration in long double; monic, ascending coefficients.
inline std::vector<std::complex<long double>> durand_kerner(const std::vector<long double>& c) {
  using C = std::complex<long double>;
  const std::size_t n = c.size() - 1;
  std::vector<C> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::pow(C(0.4L, 0.9L), static_cast<long double>(k));
  auto eval = [&](C x) {
    C acc = c.back();
    for (std::size_t k = n; k-- > 0;) acc = acc * x + c[k];
    return acc;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    for (std::size_t k = 0; k < n; ++k) {
      C den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) den *= z[k] - z[j];
      z[k] -= eval(z[k]) / den;
    }
  }
  return z;
}

// Dense complex solve by Gaussian elimination with partial pivoting.
inline std::vector<std::complex<long double>> solve(std::vector<std::vector<std::complex<long double>>> a,
                                                     std::vector<std::complex<long double>> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      auto f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<std::complex<long double>> x(n);
  for (std::size_t r = n; r-- > 0;) {
    auto acc = b[r];
    for (std::size_t k = r + 1; k < n; ++k) acc -= a[r][k] * x[k];
    x[r] = acc / a[r][r];
  }
  return x;
}

// y_0..y_last from y_n = -a y_{n-2} - y_{n-5}, y_0..y_4 = (0, 1, 0, 1, 0) - 1/(2+a).
inline std::vector<long double> y_sequence(long double a, std::size_t last) {
  const long double q = 1 / (2 + a);
  std::vector<long double> y = {-q, 1 - q, -q, 1 - q, -q};
  for (std::size_t n = 5; n <= last; ++n) y.push_back(-a * y[n - 2] - y[n - 5]);
  y.resize(last + 1);
  return y;
}

}  // namespace oracle
