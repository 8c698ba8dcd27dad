#pragma once

#include "newman/analytic.hpp"
#include "newman/errors.hpp"
#include "newman/real.hpp"

#include <array>
#include <functional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace newman {

struct SimConfig {
  double a = 0.3;
  std::size_t max_n = 200000;
  unsigned precision_bits = 53;  // 53 runs in hardware double, more in MPFR
  double zero_threshold = 1e-6;
  double violation_tolerance = 1e-12;
  std::size_t window_half_width = 30;

  /// Throws DomainError unless 0 < a < 1, thresholds are positive and precision >= 53.
  void validate() const;
};

struct TraceRecord {
  std::size_t n;
  double b;
  int c;
  double d;
  double error_bound;
};
using TraceSink = std::function<void(const TraceRecord&)>;

/// Columnar text trace: header "n b_n c_n d_n err_bound", one line per record.
void write_trace_header(std::ostream& os);
TraceSink trace_writer(std::ostream& os);

struct NegativeCoefficient {
  std::size_t n;
  double value;
};
struct ExceedsOne {
  std::size_t n;
  double value;
};
struct CounterfactualNegative {
  std::size_t N;
  std::array<double, 15> b;  // b_{N-6} .. b_{N+8}
};
struct NoViolationUpTo {
  std::size_t max_n;
};

struct SimOutcome {
  std::variant<NegativeCoefficient, ExceedsOne, CounterfactualNegative, NoViolationUpTo> kind;
  double error_bound = 0;  // bound on the accumulated rounding error of the reported values
  unsigned precision_bits = 53;
};

std::string describe(const SimOutcome& o);
/// True for NegativeCoefficient, ExceedsOne and CounterfactualNegative.
bool found_violation(const SimOutcome& o);

template <class T>
T rounding_unit() {
  if constexpr (std::is_same_v<T, Rational>) {
    return T(0);
  } else {
    return unit_roundoff<T>();
  }
}

template <class T>
T magnitude(const T& x) {
  using std::abs;
  return abs(x);
}

/// The streams b_n, c_n, d_n (last five of each) for a fixed parameter a, advanced by
///   b_n = c_n - a b_{n-2} - b_{n-5},   d_n = (c_n - 1) - a d_{n-2} - d_{n-5},
/// with a first-order bound on the rounding error carried by b_n.
template <class T>
class SimState {
 public:
  /// Starts at n = 4 with b_0..b_4 = 1, 0, 1 - a, 0, 1 - a + a^2 and c_0..c_4 = 1, 0, 1, 0, 1.
  explicit SimState(const T& a) : a_(a) {
    b_ = {T(1), T(0), T(1) - a, T(0), T(1) - a + a * a};
    c_ = {1, 0, 1, 0, 1};
    d_ = {T(0), T(0), T(0), T(0), T(0)};
    const T u = rounding_unit<T>();
    err_ = {T(0), T(0), u * 2, T(0), u * 4};
  }

  std::size_t index() const { return n_; }
  const T& b(std::size_t m) const { return b_[slot(m)]; }
  int c(std::size_t m) const { return c_[slot(m)]; }
  const T& d(std::size_t m) const { return d_[slot(m)]; }
  const T& error_bound(std::size_t m) const { return err_[slot(m)]; }
  const T& a() const { return a_; }
  /// Largest |b_n + a b_{n-2} + b_{n-5} - c_n| seen, and whether each stayed within its bound.
  const T& conservation_max() const { return conservation_max_; }
  bool conservation_ok() const { return conservation_ok_; }

  void step(int c_next) {
    const std::size_t n = n_ + 1;
    const std::size_t s = n % 5, s2 = (n - 2) % 5;
    const T b2 = b_[s2], b5 = b_[s];
    const T ab2 = a_ * b2;
    const T bn = T(c_next) - ab2 - b5;
    const T dn = T(c_next - 1) - a_ * d_[s2] - d_[s];
    const T u = rounding_unit<T>();
    const T local = u * (magnitude(ab2) + magnitude(T(c_next) - ab2) + magnitude(bn) + magnitude(ab2));
    const T en = a_ * err_[s2] + err_[s] + local;

    const T residual = magnitude(bn + a_ * b2 + b5 - T(c_next));
    const T allowed = en + T(4) * u * (magnitude(bn) + magnitude(ab2) + magnitude(b5) + T(1));
    if (residual > conservation_max_) conservation_max_ = residual;
    if (residual > allowed) conservation_ok_ = false;

    b_[s] = bn;
    c_[s] = c_next;
    d_[s] = dn;
    err_[s] = en;
    n_ = n;
  }

 private:
  std::size_t slot(std::size_t m) const {
    if (m > n_ || m + 4 < n_) throw ContractViolation("index " + std::to_string(m) + " is not in the window");
    return m % 5;
  }
  T a_;
  std::array<T, 5> b_, d_, err_;
  std::array<int, 5> c_;
  std::size_t n_ = 4;
  T conservation_max_ = T(0);
  bool conservation_ok_ = true;
};

/// d_N .. d_{N+count-1} with c_N = 0, c_{N+k} = 1 for k >= 1 and d = 0 before N.
template <class T>
std::vector<T> d_stream(const T& a, std::size_t count) {
  std::vector<T> d;
  for (std::size_t k = 0; k < count; ++k) {
    const int c = k == 0 ? 0 : 1;
    const T d2 = k >= 2 ? d[k - 2] : T(0);
    const T d5 = k >= 5 ? d[k - 5] : T(0);
    d.push_back(T(c - 1) - a * d2 - d5);
  }
  return d;
}

/// y_0..y_last from y_n = -a y_{n-2} - y_{n-5}, y_0..y_4 = (0, 1, 0, 1, 0) - 1/(2+a).
template <class T>
std::vector<T> y_sequence(const T& a, std::size_t last) {
  const T q = T(1) / (T(2) + a);
  std::vector<T> y = {-q, T(1) - q, -q, T(1) - q, -q};
  y.reserve(last + 1);
  for (std::size_t n = 5; n <= last; ++n) y.push_back(-a * y[n - 2] - y[n - 5]);
  y.resize(last + 1);
  return y;
}

/// Iterates the all-ones regime from n = 5 and stops at the first b_n outside
/// [-eps, 1 + eps]. Accepts a = 0 as a boundary diagnostic.
SimOutcome run_all_ones(const SimConfig& cfg, const TraceSink& sink = {});

struct CounterfactualReport {
  double a = 0;
  std::size_t N = 0;
  double estimate = 0;          // leading-order N used to centre the window
  double estimate_printed = 0;  // the cos(pi/10) variant, for comparison
  std::size_t window_lo = 0, window_hi = 0;
  double residual_before = 0;   // |y_{N-2} + q|, |y_{N+1} + q| before conditioning (max of the two)
  double residual_y_nm2 = 0, residual_y_np1 = 0;
  double correction = 0;        // |delta|, size of the beta-mode adjustment
  std::array<double, 15> b{}, y{}, d{};  // index k + 6 for k = -6..8; y holds y_{N+k+3}
  std::array<int, 15> c{};
  double y_N_plus_4 = 0;
  double b8_unconditioned = 0;
  double conservation_max = 0;
  double error_bound = 0;
  unsigned precision_bits = 53;
  SimOutcome outcome;
};

/// Follows the all-ones regime up to the index N where the two vanishing conditions
/// y_{N-2} = y_{N+1} = -1/(2+a) are best met (argmin over a window around estimate_N),
/// switches c_N to 0 and reports b_{N-6}..b_{N+8}. The growing beta-mode is adjusted
/// so that both conditions hold exactly at the selected N. Requires 0 < a <= 0.005;
/// throws NoCandidateN when both residuals at the best index exceed 0.05.
CounterfactualReport counterfactual_run(const SimConfig& cfg, const TraceSink& sink = {});

/// |b_{N+8} - 2a y_{N+4}|.
double b8_consistency(const CounterfactualReport& r);

struct CrossCheck {
  double max_deviation = 0;
  std::size_t worst_n = 0;
  double max_abs_y = 0;
  unsigned precision_bits = 53;
};

/// max over n <= n_max of |y_n (recurrence) - y_n (closed form)|, both computed at
/// cfg.precision_bits. Requires a > 0.
CrossCheck cross_check_closed_form(const SimConfig& cfg, std::size_t n_max);

/// Working precision at which a closed-form cross-check up to n_max resolves an
/// absolute deviation of `target`.
unsigned auto_precision_bits(double a, std::size_t n_max, double target);

}  // namespace newman
