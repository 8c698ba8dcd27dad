#include "doctest.h"
#include "oracles.hpp"

#include "newman/bseq.hpp"
#include "newman/simulate.hpp"

#include <sstream>

using namespace newman;

namespace {
// First index where the all-ones stream leaves [-eps, 1 + eps], plain long double loop.
std::pair<std::size_t, long double> naive_first_violation(long double a, std::size_t max_n) {
  std::vector<long double> b = {1, 0, 1 - a, 0, 1 - a + a * a};
  for (std::size_t n = 5; n <= max_n; ++n) {
    b.push_back(1 - a * b[n - 2] - b[n - 5]);
    if (b[n] < -1e-12L || b[n] > 1 + 1e-12L) return {n, b[n]};
  }
  return {0, 0};
}

SimConfig config(double a) {
  SimConfig c;
  c.a = a;
  return c;
}
}  // namespace

TEST_CASE("all-ones run at a = 0.3") {
  std::vector<TraceRecord> trace;
  auto out = run_all_ones(config(0.3), [&](const TraceRecord& r) { trace.push_back(r); });
  auto* neg = std::get_if<NegativeCoefficient>(&out.kind);
  REQUIRE(neg);
  CHECK(neg->n == 39);
  CHECK(std::abs(neg->value - (-0.040588)) <= 1e-5);
  auto [n, v] = naive_first_violation(0.3L, 1000);
  CHECK(neg->n == n);
  CHECK(std::abs(neg->value - (double)v) < 1e-13);
  REQUIRE(trace.size() == 40);
  CHECK(trace[6].b == doctest::Approx(0.763).epsilon(1e-12));
  CHECK(std::abs(trace[9].b - 0.12) < 0.005);
  CHECK(out.error_bound < 1e-13);
  CHECK(found_violation(out));
}

TEST_CASE("boundary a = 0 stays 0-1 forever") {
  SimConfig c = config(0.0);
  c.max_n = 5000;
  std::vector<TraceRecord> trace;
  auto out = run_all_ones(c, [&](const TraceRecord& r) { trace.push_back(r); });
  CHECK(std::holds_alternative<NoViolationUpTo>(out.kind));
  for (auto& r : trace) CHECK((r.b == 0 || r.b == 1));
  CHECK_FALSE(found_violation(out));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(run_all_ones(config(1.5)), DomainError);
  CHECK_THROWS_AS(run_all_ones(config(-0.1)), DomainError);
  SimConfig c = config(0.3);
  c.precision_bits = 32;
  CHECK_THROWS_AS(run_all_ones(c), DomainError);
  CHECK_THROWS_AS(counterfactual_run(config(0.006)), DomainError);
  CHECK_THROWS_AS(counterfactual_run(config(0.3)), DomainError);
}

TEST_CASE("violations on the wide a-grid") {
  for (int i = 0; i < 200; ++i) {
    const double a = 0.005 + (0.999 - 0.005) * i / 199.0;
    SimConfig c = config(a);
    c.max_n = 10000;
    auto out = run_all_ones(c);
    CAPTURE(a);
    CHECK(found_violation(out));
    auto [n, v] = naive_first_violation(a, 10000);
    if (auto* neg = std::get_if<NegativeCoefficient>(&out.kind)) CHECK(neg->n == n);
    if (auto* big = std::get_if<ExceedsOne>(&out.kind)) CHECK(big->n == n);
  }
}

TEST_CASE("conservation identity holds within the running bound") {
  for (double a : {0.003, 0.05, 0.3, 0.77}) {
    SimState<double> s(a);
    for (int n = 5; n <= 20000; ++n) s.step(n % 97 == 0 ? 0 : 1);
    CHECK(s.conservation_ok());
  }
  SimState<Rational> exact(Rational(3, 10));
  for (int n = 5; n <= 200; ++n) exact.step(n % 13 == 0 ? 0 : 1);
  CHECK(exact.conservation_max() == 0);
  CHECK(exact.conservation_ok());
}

TEST_CASE("b_n equals B_n(a) while every c_k = 1") {
  const Rational a(3, 10);
  auto B = exact_sequence(38);
  SimState<Rational> s(a);
  for (std::size_t n = 0; n <= 4; ++n) CHECK(s.b(n) == B[n].eval(a));
  for (std::size_t n = 5; n <= 38; ++n) {
    s.step(1);
    CHECK(s.b(n) == B[n].eval(a));
  }
}

TEST_CASE("deviation stream after a vanishing coefficient") {
  const Rational a(7, 1000);
  auto d = d_stream(a, 9);
  const Rational expected[9] = {-1, 0, a, 0, -a * a, 1, a * a * a, -2 * a, -a * a * a * a};
  for (int k = 0; k < 9; ++k) CHECK(d[k] == expected[k]);
  auto df = d_stream(0.007, 9);
  for (int k = 0; k < 9; ++k) CHECK(std::abs(df[k] - expected[k].convert_to<double>()) <= 1e-12);
}

TEST_CASE("counterfactual at a = 0.003") {
  auto r = counterfactual_run(config(0.003));
  // Independent argmin over the same window.
  auto y = oracle::y_sequence(0.003L, r.window_hi + 2);
  const long double q = 1 / 2.003L;
  std::size_t best = 0;
  long double best_res = 1e9;
  for (std::size_t m = r.window_lo; m <= r.window_hi; ++m) {
    long double res = std::max(std::abs(y[m - 2] + q), std::abs(y[m + 1] + q));
    if (res < best_res) {
      best_res = res;
      best = m;
    }
  }
  CHECK(r.N == best);
  CHECK(r.N == 13873);
  CHECK(std::abs(r.b[14] - (-0.0018)) <= 4e-4);
  CHECK(std::abs(r.b[6 + 1] - 0.19) <= 0.04);
  CHECK(std::abs(r.b[6 + 3] - 0.99) <= 0.04);
  CHECK(std::abs(r.b[6 + 6] - 0.81) <= 0.04);
  for (int k : {-5, -2, 0}) CHECK(std::abs(r.b[6 + k]) <= 2 * 1e-6);
  CHECK(b8_consistency(r) <= 9e-6);
  CHECK(r.conservation_max <= 1e-12);
  CHECK(r.c[6] == 0);
  auto* cn = std::get_if<CounterfactualNegative>(&r.outcome.kind);
  REQUIRE(cn);
  CHECK(cn->N == r.N);
  CHECK(cn->b[14] < 0);
  CHECK(r.estimate_printed == doctest::Approx(11785.9).epsilon(1e-4));
}

TEST_CASE("counterfactual bounds across small a") {
  for (int i = 0; i < 20; ++i) {
    const double a = i == 19 ? 0.005 : 0.0005 + (0.005 - 0.0005) * i / 19.0;
    auto r = counterfactual_run(config(a));
    CAPTURE(a);
    CHECK(r.b[14] <= -0.5 * a);
    CHECK(b8_consistency(r) <= a * a);
  }
  auto r1 = counterfactual_run(config(0.001));
  CHECK(b8_consistency(r1) <= 1e-6);
}

TEST_CASE("counterfactual in high precision agrees") {
  SimConfig c = config(0.003);
  auto lo = counterfactual_run(c);
  c.precision_bits = 128;
  auto hi = counterfactual_run(c);
  CHECK(hi.N == lo.N);
  for (int i = 0; i < 15; ++i) CHECK(std::abs(hi.b[i] - lo.b[i]) < 1e-8);
}

TEST_CASE("closed form against the recurrence") {
  SimConfig c = config(0.003);
  auto x = cross_check_closed_form(c, 12000);
  CHECK(x.max_deviation <= 1e-6);
  auto early = cross_check_closed_form(config(0.3), 4);
  CHECK(early.max_deviation <= 1e-14);
  SimConfig h = config(0.3);
  h.precision_bits = auto_precision_bits(0.3, 500, 1e-9);
  CHECK(h.precision_bits > 53);
  CHECK(cross_check_closed_form(h, 500).max_deviation <= 1e-9);
}

TEST_CASE("trace format") {
  std::ostringstream os;
  write_trace_header(os);
  SimConfig c = config(0.3);
  run_all_ones(c, trace_writer(os));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n b_n c_n d_n err_bound");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 40);
}
