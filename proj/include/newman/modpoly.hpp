#pragma once

#include "newman/errors.hpp"
#include "newman/real.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace newman {

/// A prime modulus, 2 <= p < 2^31, so that a product of two residues fits in 64 bits.
class Prime {
 public:
  static constexpr std::uint64_t limit = std::uint64_t{1} << 31;

  explicit Prime(std::uint64_t value);

  std::uint32_t value() const { return value_; }
  static bool is_prime(std::uint64_t n);

  friend bool operator==(Prime a, Prime b) { return a.value_ == b.value_; }
  friend auto operator<=>(Prime a, Prime b) { return a.value_ <=> b.value_; }

 private:
  std::uint32_t value_;
};

std::vector<Prime> primes_up_to(std::uint32_t bound);

/// Polynomial degree with a distinguished minus-infinity for the zero polynomial.
class Degree {
 public:
  static Degree minus_infinity() { return Degree(); }
  explicit Degree(std::size_t d) : value_(d) {}

  bool is_minus_infinity() const { return !value_.has_value(); }
  /// Throws ContractViolation for the zero polynomial's degree.
  std::size_t value() const;

  friend bool operator==(const Degree& a, const Degree& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b);

  std::string to_string() const;

 private:
  Degree() = default;
  std::optional<std::size_t> value_;
};

using FieldElem = std::uint32_t;

FieldElem add_mod(FieldElem a, FieldElem b, Prime p);
FieldElem mul_mod(FieldElem a, FieldElem b, Prime p);
FieldElem pow_mod(FieldElem a, std::uint64_t e, Prime p);
/// Multiplicative inverse; throws DivisionByZero for 0.
FieldElem inv_mod(FieldElem a, Prime p);
/// Canonical residue of a signed integer.
FieldElem reduce(std::int64_t v, Prime p);
FieldElem reduce(const BigInt& v, Prime p);

/// Dense polynomial over Z/pZ; coefficient k is the coefficient of t^k.
/// Always stored without trailing zeros.
class ModPoly {
 public:
  explicit ModPoly(Prime p) : p_(p) {}
  ModPoly(Prime p, std::initializer_list<long long> coeffs);
  ModPoly(Prime p, const std::vector<long long>& coeffs);
  /// Coefficients must already lie in [0, p-1]; throws ContractViolation otherwise.
  static ModPoly from_residues(Prime p, std::vector<FieldElem> coeffs);
  static ModPoly constant(Prime p, long long c);

  Prime modulus() const { return p_; }
  Degree degree() const;
  bool is_zero() const { return c_.empty(); }
  FieldElem coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
  /// Leading coefficient; 0 for the zero polynomial.
  FieldElem leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  FieldElem eval(FieldElem x) const;

  /// Multiplication by t^k.
  ModPoly shifted(std::size_t k) const;
  ModPoly scaled(FieldElem s) const;
  ModPoly monic() const;

  friend ModPoly operator+(const ModPoly& f, const ModPoly& g);
  friend ModPoly operator-(const ModPoly& f, const ModPoly& g);
  friend ModPoly operator-(const ModPoly& f);
  friend ModPoly operator*(const ModPoly& f, const ModPoly& g);
  friend bool operator==(const ModPoly& f, const ModPoly& g) { return f.p_ == g.p_ && f.c_ == g.c_; }

  std::string to_string() const;

 private:
  void trim();
  Prime p_;
  std::vector<FieldElem> c_;
};

void require_same_modulus(const ModPoly& f, const ModPoly& g);

/// Remainder of f modulo g; throws DivisionByZero when g is zero.
ModPoly rem(const ModPoly& f, const ModPoly& g);
/// Quotient and remainder.
std::pair<ModPoly, ModPoly> divmod(const ModPoly& f, const ModPoly& g);
/// Monic greatest common divisor (zero only when both inputs are zero).
ModPoly gcd(const ModPoly& f, const ModPoly& g);

/// Res(f, g) over Z/pZ by the Euclidean remainder sequence.
/// Conventions for a zero argument: Res(c, 0) = Res(0, c) = 1 for a nonzero
/// constant c, and 0 when the other argument has positive degree.
/// Both zero throws UndefinedResultant.
FieldElem resultant_prs(const ModPoly& f, const ModPoly& g);

/// Dense polynomial with arbitrary-size integer coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<long long> coeffs);
  explicit IntPoly(std::vector<BigInt> coeffs);

  static IntPoly constant(long long c) { return IntPoly({c}); }

  Degree degree() const;
  bool is_zero() const { return c_.empty(); }
  const BigInt& coeff(std::size_t k) const;
  const BigInt& leading() const;
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt eval(const BigInt& x) const;
  Rational eval(const Rational& x) const;
  double eval(double x) const;

  IntPoly shifted(std::size_t k) const;
  ModPoly to_mod(Prime p) const;

  friend IntPoly operator+(const IntPoly& f, const IntPoly& g);
  friend IntPoly operator-(const IntPoly& f, const IntPoly& g);
  friend IntPoly operator-(const IntPoly& f);
  friend IntPoly operator*(const IntPoly& f, const IntPoly& g);
  friend bool operator==(const IntPoly& f, const IntPoly& g) { return f.c_ == g.c_; }

  std::string to_string(char var = 't') const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

using BigMatrix = std::vector<std::vector<BigInt>>;

/// (d+e) x (d+e) Sylvester matrix of f (degree d) and g (degree e), both nonzero.
BigMatrix sylvester_matrix(const IntPoly& f, const IntPoly& g);
/// Exact determinant by fraction-free elimination.
BigInt bareiss_determinant(BigMatrix m);

inline constexpr std::size_t sylvester_degree_cap = 200;

/// Exact Res(f, g) from the Sylvester determinant. Same zero conventions as
/// resultant_prs; throws CapacityError when a degree exceeds sylvester_degree_cap.
BigInt resultant_sylvester(const IntPoly& f, const IntPoly& g);

}  // namespace newman
