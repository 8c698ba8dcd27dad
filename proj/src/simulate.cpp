#include "newman/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace newman {

void SimConfig::validate() const {
  if (!(a > 0 && a < 1)) throw DomainError("a must lie in (0, 1)");
  if (!(zero_threshold > 0)) throw DomainError("zero threshold must be positive");
  if (!(violation_tolerance > 0)) throw DomainError("violation tolerance must be positive");
  if (precision_bits < 53) throw DomainError("precision must be at least 53 bits");
  if (max_n < 5) throw DomainError("max_n must be at least 5");
}

void write_trace_header(std::ostream& os) { os << "n b_n c_n d_n err_bound\n"; }

TraceSink trace_writer(std::ostream& os) {
  return [&os](const TraceRecord& r) {
    char line[160];
    std::snprintf(line, sizeof line, "%zu %.17g %d %.17g %.6g\n", r.n, r.b, r.c, r.d, r.error_bound);
    os << line;
  };
}

std::string describe(const SimOutcome& o) {
  std::ostringstream os;
  os.precision(10);
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, NegativeCoefficient>)
          os << "negative coefficient b_" << k.n << " = " << k.value;
        else if constexpr (std::is_same_v<K, ExceedsOne>)
          os << "coefficient above one b_" << k.n << " = " << k.value;
        else if constexpr (std::is_same_v<K, CounterfactualNegative>)
          os << "counterfactual N = " << k.N << ", b_{N+8} = " << k.b[14];
        else
          os << "no violation up to n = " << k.max_n;
      },
      o.kind);
  return os.str();
}

bool found_violation(const SimOutcome& o) { return !std::holds_alternative<NoViolationUpTo>(o.kind); }

// ---------------------------------------------------------------- all-ones

namespace {

template <class T>
SimOutcome all_ones(const SimConfig& cfg, const T& a, const TraceSink& sink) {
  SimState<T> s(a);
  if (sink)
    for (std::size_t n = 0; n <= 4; ++n) sink({n, to_double(s.b(n)), s.c(n), 0.0, to_double(s.error_bound(n))});
  const T eps(cfg.violation_tolerance);
  for (std::size_t n = 5; n <= cfg.max_n; ++n) {
    s.step(1);
    const T& b = s.b(n);
    if (sink) sink({n, to_double(b), 1, to_double(s.d(n)), to_double(s.error_bound(n))});
    SimOutcome out;
    out.error_bound = to_double(s.error_bound(n));
    out.precision_bits = cfg.precision_bits;
    if (b < -eps) {
      out.kind = NegativeCoefficient{n, to_double(b)};
      return out;
    }
    if (b > 1 + eps) {
      out.kind = ExceedsOne{n, to_double(b)};
      return out;
    }
  }
  SimOutcome out;
  out.kind = NoViolationUpTo{cfg.max_n};
  out.error_bound = to_double(s.error_bound(cfg.max_n));
  out.precision_bits = cfg.precision_bits;
  return out;
}

}  // namespace

SimOutcome run_all_ones(const SimConfig& cfg, const TraceSink& sink) {
  SimConfig check = cfg;
  if (cfg.a == 0) check.a = 0.5;  // a = 0 is allowed here as a boundary diagnostic
  check.validate();
  if (cfg.precision_bits <= 53) return all_ones<double>(cfg, cfg.a, sink);
  PrecisionScope scope(cfg.precision_bits);
  return all_ones<HighReal>(cfg, HighReal(cfg.a), sink);
}

// ---------------------------------------------------------------- counterfactual

namespace {

template <class T>
CounterfactualReport counterfactual(const SimConfig& cfg, const T& a, const TraceSink& sink) {
  using std::abs;
  CounterfactualReport rep;
  rep.a = cfg.a;
  rep.precision_bits = cfg.precision_bits;
  rep.estimate = estimate_N(cfg.a);
  rep.estimate_printed = estimate_N_printed(cfg.a);
  const auto centre = static_cast<std::size_t>(std::llround(rep.estimate));
  const std::size_t W = cfg.window_half_width;
  rep.window_lo = centre > W + 8 ? centre - W : 8;
  rep.window_hi = centre + W;
  if (rep.window_hi + 8 > cfg.max_n)
    throw DomainError("max_n " + std::to_string(cfg.max_n) + " is below the counterfactual window ending at " +
                      std::to_string(rep.window_hi));

  const std::size_t last = rep.window_hi + 11;
  const auto y = y_sequence(a, last);
  const T q = T(1) / (T(2) + a);

  // Running bound on the rounding error of y_n (the recurrence has coefficients a and 1).
  std::vector<double> ybound(last + 1, 0.0);
  const double u = to_double(rounding_unit<T>());
  for (std::size_t n = 0; n <= last; ++n) {
    const double local = u * (std::abs(to_double(y[n])) + 1);
    ybound[n] = local + (n >= 5 ? cfg.a * ybound[n - 2] + ybound[n - 5] : 0.0);
  }

  std::size_t best = rep.window_lo;
  T best_res(-1), best_r1(0), best_r2(0);
  for (std::size_t m = rep.window_lo; m <= rep.window_hi; ++m) {
    const T r1 = abs(y[m - 2] + q), r2 = abs(y[m + 1] + q);
    const T r = r1 > r2 ? r1 : r2;
    if (best_res < 0 || r < best_res) {
      best = m;
      best_res = r;
      best_r1 = r1;
      best_r2 = r2;
    }
  }
  if (best_r1 > T(0.05) && best_r2 > T(0.05))
    throw NoCandidateN("no index in [" + std::to_string(rep.window_lo) + ", " + std::to_string(rep.window_hi) +
                       "] comes within 0.05 of both vanishing conditions at a = " + std::to_string(cfg.a));
  const std::size_t N = best;
  rep.N = N;
  rep.residual_before = to_double(best_res);
  rep.residual_y_nm2 = to_double(best_r1);
  rep.residual_y_np1 = to_double(best_r2);

  // Add Re(delta beta^{m-(N-2)}) to y_m, a solution of the same recurrence, so that
  // y_{N-2} and y_{N+1} both equal -q.
  auto roots = find_roots(a);
  const Complex<T> beta = roots.beta;
  const Complex<T> beta3 = beta * beta * beta;
  const T r1 = -q - y[N - 2], r2 = -q - y[N + 1];
  const T dx = r1, dy = (dx * beta3.re - r2) / beta3.im;
  const Complex<T> delta(dx, dy);
  rep.correction = to_double(abs(delta));
  const Complex<T> beta_inv = inverse(beta);
  auto corrected = [&](std::size_t m) {
    Complex<T> w = m >= N - 2 ? delta * pow(beta, m - (N - 2)) : delta * pow(beta_inv, (N - 2) - m);
    return y[m] + w.re;
  };

  const auto d = d_stream(a, 9);
  for (int k = -6; k <= 8; ++k) {
    const std::size_t n = N + k;
    const std::size_t i = static_cast<std::size_t>(k + 6);
    const T dn = k >= 0 ? d[k] : T(0);
    const T yn = corrected(n + 3);
    rep.y[i] = to_double(yn);
    rep.d[i] = to_double(dn);
    rep.b[i] = to_double(yn + q + dn);
    rep.c[i] = k == 0 ? 0 : 1;
  }
  rep.y_N_plus_4 = to_double(corrected(N + 4));
  rep.b8_unconditioned = to_double(y[N + 11] + q + d[8]);

  // Conservation identity on the reported window, recomputed in T.
  std::array<T, 15> bt;
  for (int k = -6; k <= 8; ++k) {
    const T dn = k >= 0 ? d[k] : T(0);
    bt[k + 6] = corrected(N + k + 3) + q + dn;
  }
  T cons(0);
  for (int k = -1; k <= 8; ++k) {
    const T r = abs(bt[k + 6] + a * bt[k + 4] + bt[k + 1] - T(k == 0 ? 0 : 1));
    if (r > cons) cons = r;
  }
  rep.conservation_max = to_double(cons);
  rep.error_bound = ybound[N + 11] + 8 * u;

  if (sink) {
    Complex<T> w = delta * pow(beta_inv, N - 2);  // delta beta^{m-(N-2)} at m = 0
    for (std::size_t n = 0; n <= N + 8; ++n) {
      // b_n = y_{n+3} + q + d_n; the beta-mode term is tracked for y_{n+3}.
      const std::size_t m = n + 3;
      Complex<T> wm = w * pow(beta, m);
      const T dn = n >= N ? d[n - N] : T(0);
      const T bn = y[m] + wm.re + q + dn;
      sink({n, to_double(bn), n == N ? 0 : (n < 5 ? (n % 2 == 0 ? 1 : 0) : 1), to_double(dn), ybound[m]});
    }
  }

  SimOutcome out;
  out.error_bound = rep.error_bound;
  out.precision_bits = cfg.precision_bits;
  if (rep.b[14] < 0) {
    CounterfactualNegative cn{N, {}};
    cn.b = rep.b;
    out.kind = cn;
  } else {
    out.kind = NoViolationUpTo{N + 8};
  }
  rep.outcome = out;
  return rep;
}

}  // namespace

CounterfactualReport counterfactual_run(const SimConfig& cfg, const TraceSink& sink) {
  cfg.validate();
  if (!(cfg.a <= 0.005)) throw DomainError("counterfactual mode requires a <= 0.005");
  if (cfg.precision_bits <= 53) return counterfactual<double>(cfg, cfg.a, sink);
  PrecisionScope scope(cfg.precision_bits);
  return counterfactual<HighReal>(cfg, HighReal(cfg.a), sink);
}

double b8_consistency(const CounterfactualReport& r) { return std::abs(r.b[14] - 2 * r.a * r.y_N_plus_4); }

// ---------------------------------------------------------------- closed form

namespace {

template <class T>
CrossCheck cross_check(const T& a, std::size_t n_max) {
  using std::abs;
  auto roots = find_roots(a);
  auto coeffs = residue_coeffs(roots);
  const auto y = y_sequence(a, n_max);
  CrossCheck out;
  T worst(0), biggest(0);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const T dev = abs(y[n] - closed_form_y(roots, coeffs, n));
    if (dev > worst) {
      worst = dev;
      out.worst_n = n;
    }
    if (abs(y[n]) > biggest) biggest = abs(y[n]);
  }
  out.max_deviation = to_double(worst);
  out.max_abs_y = to_double(biggest);
  return out;
}

}  // namespace

CrossCheck cross_check_closed_form(const SimConfig& cfg, std::size_t n_max) {
  cfg.validate();
  CrossCheck out;
  if (cfg.precision_bits <= 53) {
    out = cross_check<double>(cfg.a, n_max);
  } else {
    PrecisionScope scope(cfg.precision_bits);
    out = cross_check<HighReal>(HighReal(cfg.a), n_max);
  }
  out.precision_bits = cfg.precision_bits;
  return out;
}

unsigned auto_precision_bits(double a, std::size_t n_max, double target) {
  if (!(a > 0) || !(target > 0)) throw DomainError("auto precision needs a > 0 and a positive target");
  auto roots = find_roots(a);
  const double growth = std::max(0.0, std::log2(abs(roots.beta))) * static_cast<double>(n_max);
  const double needed = growth + std::log2(1 / target) + std::log2(static_cast<double>(n_max) + 1) + 24;
  if (needed <= 53) return 53;
  return static_cast<unsigned>(std::ceil(needed / 32) * 32);
}

}  // namespace newman
