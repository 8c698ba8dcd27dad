#pragma once

#include "newman/complex.hpp"
#include "newman/real.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace newman {

/// A monic 0-1 polynomial with constant term 1; bit k of `bits` is the
/// coefficient of x^k.
struct Newman01 {
  int degree = 0;
  std::uint32_t bits = 0;

  static constexpr int kMaxDegree = 24;

  Newman01() = default;
  Newman01(int degree, std::uint32_t bits);  // validates

  std::vector<int> coeffs() const;  // ascending
  Newman01 reciprocal() const;      // x^D r(1/x)
  std::string to_string() const;

  auto operator<=>(const Newman01&) const = default;
};

/// All 2^(D-1) polynomials of exact degree D, in increasing mask order.
std::vector<Newman01> enumerate_01(int degree);

/// Square-free decomposition over Q: factors[i] has multiplicity i + 1 (an
/// entry equal to {1} means no factor of that multiplicity). Ascending
/// coefficients, each factor monic.
std::vector<std::vector<Rational>> squarefree_decomposition(const std::vector<Rational>& f);

enum class SplitClass { Fair, Unfair, Indeterminate };
std::string to_string(SplitClass c);

/// A real root or a conjugate pair (stored with im > 0) with multiplicity.
struct RootUnit {
  Complex<double> root;
  bool is_real = true;
  int multiplicity = 1;

  int degree() const { return (is_real ? 1 : 2) * multiplicity; }
};

struct SplitCandidate {
  Newman01 r;
  std::vector<int> subset;  // copies of each unit assigned to P
  std::vector<double> p_coeffs, q_coeffs;
  SplitClass classification = SplitClass::Fair;
  double min_coeff = 0;        // smallest coefficient over P and Q
  double max_deviation = 0;    // largest distance of a coefficient from {0, 1}
  std::string offending;       // e.g. "P[3]" for the coefficient deciding the class
  double margin = 0;           // distance of that coefficient from the decision threshold
  double reconstruction_error = 0;
  unsigned precision_bits = 53;
};

/// Root units of r, computed by Aberth iteration on each square-free factor.
/// `bits` > 53 runs the iteration in multiprecision.
std::vector<RootUnit> root_units(const Newman01& r, unsigned bits = 53);

/// Every nontrivial conjugate-closed split of r, one per {subset, complement} pair.
std::vector<SplitCandidate> all_splits(const Newman01& r, double tol, unsigned bits = 53);

/// The splits of r that are not Fair; empty when the conjecture holds for r.
std::vector<SplitCandidate> classify(const Newman01& r, double tol, unsigned bits = 53);

SplitClass classify_coefficients(const std::vector<double>& p, const std::vector<double>& q, double tol);

struct DegreeSummary {
  int degree = 0;
  std::size_t polynomials = 0;
  std::size_t fair_only = 0;
  std::size_t unfair = 0;
  std::size_t indeterminate = 0;
  std::size_t residual_indeterminate = 0;
  std::size_t splits = 0;
};

struct ScanReport {
  int max_degree = 0;
  double tol = 0;
  std::vector<DegreeSummary> degrees;
  std::vector<SplitCandidate> findings;  // every non-Fair candidate, after escalation
  std::size_t unfair = 0;
  std::size_t indeterminate = 0;
  std::size_t residual_indeterminate = 0;
  double seconds = 0;

  bool confirmed() const { return unfair == 0 && residual_indeterminate == 0; }
};

inline constexpr double kDefaultSearchTol = 1e-8;
inline constexpr unsigned kEscalationBits = 4 * 53;

/// Runs classify over every degree 1..max_degree. Indeterminate polynomials are
/// re-run at kEscalationBits with tol/100.
ScanReport scan(int max_degree, double tol = kDefaultSearchTol, unsigned jobs = 1,
                const std::function<void(const DegreeSummary&)>& on_degree = {});

}  // namespace newman
