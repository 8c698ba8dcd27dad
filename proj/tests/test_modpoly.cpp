#include "doctest.h"
#include "oracles.hpp"

#include "newman/modpoly.hpp"

#include <random>

using namespace newman;

namespace {
IntPoly ip(const std::vector<long long>& c) {
  std::vector<BigInt> b(c.begin(), c.end());
  return IntPoly(b);
}
}  // namespace

TEST_CASE("prime construction") {
  CHECK(Prime(2).value() == 2);
  CHECK(Prime(17).value() == 17);
  CHECK(Prime(2147483647).value() == 2147483647u);
  CHECK_THROWS_AS(Prime(1), ContractViolation);
  CHECK_THROWS_AS(Prime(15), ContractViolation);
  CHECK_THROWS_AS(Prime(Prime::limit + 11), ContractViolation);
  auto ps = primes_up_to(17);
  REQUIRE(ps.size() == 7);
  CHECK(ps.back().value() == 17);
}

TEST_CASE("degree sentinel") {
  Prime p(7);
  CHECK(ModPoly(p).degree().is_minus_infinity());
  CHECK_THROWS_AS(ModPoly(p).degree().value(), ContractViolation);
  CHECK(Degree::minus_infinity() < Degree(0));
  CHECK(Degree(3) > Degree(2));
  CHECK(ModPoly(p, {0, 0, 7, 14}).is_zero());
  CHECK(ModPoly(p, {1, 2, 0}).degree() == Degree(1));
}

TEST_CASE("multiplication") {
  Prime p5(5), p7(7);
  CHECK(ModPoly(p5, {1, 1}) * ModPoly(p5, {1, -1}) == ModPoly(p5, {1, 0, 4}));
  CHECK((ModPoly(p7, {3, 1, 4}) * ModPoly(p7)).is_zero());
  CHECK(ModPoly(p7, {1, -1}) * ModPoly(p7, {1, 1, 1}) == ModPoly(p7, {1, 0, 0, 6}));
  CHECK_THROWS_AS(ModPoly(p5, {1}) * ModPoly(p7, {1}), ContractViolation);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = oracle::random_poly(rng, rng() % 9, 50);
    auto g = oracle::random_poly(rng, rng() % 9, 50);
    Prime p(primes_up_to(101)[rng() % 26]);
    ModPoly fm(p, f), gm(p, g);
    auto prod = fm * gm;
    CHECK(prod == (ip(f) * ip(g)).to_mod(p));
    if (!fm.is_zero() && !gm.is_zero())
      CHECK(prod.degree().value() == fm.degree().value() + gm.degree().value());
  }
}

TEST_CASE("remainder") {
  Prime p7(7), p11(11);
  CHECK(rem(ModPoly(p7, {-1, 0, 1}), ModPoly(p7, {-1, 1})).is_zero());
  ModPoly f(p7, {3, 0, 2});
  CHECK(rem(f, ModPoly(p7, {1, 2, 3, 4})) == f);
  CHECK(rem(ModPoly(p11, {1, 0, 0, 1, 0, 1}), ModPoly(p11, {1, 0, 1})) == ModPoly(p11, {1}));
  CHECK_THROWS_AS(rem(f, ModPoly(p7)), DivisionByZero);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    Prime p(primes_up_to(60)[rng() % 17]);
    ModPoly a(p, oracle::random_poly(rng, rng() % 12, 100));
    ModPoly b(p, oracle::random_poly(rng, rng() % 6, 100));
    if (b.is_zero()) continue;
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("resultant examples") {
  Prime p7(7);
  CHECK(resultant_prs(ModPoly(p7, {-1, 0, 1}), ModPoly(p7, {-1, 1})) == 0);
  CHECK(resultant_prs(ModPoly(p7, {1, 0, 0, 1, 0, 1}), ModPoly(p7, {0, 0, 3, 0, 5})) == 6);
  CHECK(resultant_sylvester(ip({1, 0, 0, 1, 0, 1}), ip({0, 0, 3, 0, 5})) == 3233);
  // Res(f, c) = c^deg f.
  CHECK(resultant_prs(ModPoly(p7, {2, 5, 1}), ModPoly(p7, {3})) == 2);
  CHECK(resultant_sylvester(ip({2, 5, 1}), ip({3})) == 9);
  CHECK(resultant_sylvester(ip({-2, 1}), ip({-3, 1})) == -1);
  // Res(x^5 + a x^3 + 1, x^2 - 1) at a = 2, and Res(x^5 + x^3 + 1, 2x^5 - 3).
  CHECK(resultant_sylvester(ip({1, 0, 0, 2, 0, 1}), ip({-1, 0, 1})) == -8);
  CHECK(resultant_sylvester(ip({1, 0, 0, 1, 0, 1}), ip({-3, 0, 0, 0, 0, 2})) == -3233);
}

TEST_CASE("resultant zero conventions") {
  Prime p(5);
  CHECK_THROWS_AS(resultant_prs(ModPoly(p), ModPoly(p)), UndefinedResultant);
  CHECK(resultant_prs(ModPoly(p, {3}), ModPoly(p)) == 1);
  CHECK(resultant_prs(ModPoly(p), ModPoly(p, {3})) == 1);
  CHECK(resultant_prs(ModPoly(p, {1, 1}), ModPoly(p)) == 0);
  CHECK_THROWS_AS(resultant_sylvester(IntPoly(), IntPoly()), UndefinedResultant);
  CHECK(resultant_sylvester(ip({4}), IntPoly()) == 1);
  CHECK(resultant_sylvester(ip({0, 1}), IntPoly()) == 0);
  std::vector<BigInt> big(202, BigInt(0));
  big.back() = 1;
  CHECK_THROWS_AS(resultant_sylvester(IntPoly(big), ip({1, 1})), CapacityError);
}

TEST_CASE("Bareiss determinant against the Leibniz expansion") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto f = oracle::random_poly(rng, 1 + rng() % 4, 9);
    auto g = oracle::random_poly(rng, 1 + rng() % 4, 9);
    auto m = oracle::sylvester(f, g);
    CHECK(resultant_sylvester(ip(f), ip(g)) == oracle::leibniz_det(m));
  }
}

TEST_CASE("resultant_prs matches the exact resultant mod p") {
  std::mt19937_64 rng(4);
  auto ps = primes_up_to(200);
  for (int trial = 0; trial < 500; ++trial) {
    Prime p = ps[rng() % ps.size()];
    auto f = oracle::random_poly(rng, 1 + rng() % 12, 30);
    auto g = oracle::random_poly(rng, 1 + rng() % 12, 30);
    if (f.back() % (long long)p.value() == 0 || g.back() % (long long)p.value() == 0) continue;
    BigInt exact = resultant_sylvester(ip(f), ip(g));
    FieldElem r = resultant_prs(ModPoly(p, f), ModPoly(p, g));
    CHECK(r == reduce(exact, p));
    CHECK(r == oracle::det_mod(oracle::sylvester(f, g), p.value()));
  }
}

TEST_CASE("resultant symmetry, multiplicativity and gcd criterion") {
  std::mt19937_64 rng(5);
  auto ps = primes_up_to(50);
  for (int trial = 0; trial < 400; ++trial) {
    Prime p = ps[rng() % ps.size()];
    ModPoly f(p, oracle::random_poly(rng, rng() % 8, 40));
    ModPoly g(p, oracle::random_poly(rng, rng() % 8, 40));
    ModPoly h(p, oracle::random_poly(rng, rng() % 8, 40));
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    std::size_t d = f.degree().value(), e = g.degree().value();
    FieldElem fg = resultant_prs(f, g), gf = resultant_prs(g, f);
    CHECK(fg == ((d * e) % 2 ? (p.value() - gf) % p.value() : gf));
    CHECK(resultant_prs(f, g * h) == mul_mod(fg, resultant_prs(f, h), p));
    CHECK((fg == 0) == (gcd(f, g).degree() > Degree(0)));
    // Forced common factor.
    CHECK(resultant_prs(f * ModPoly(p, {1, 1}), g * ModPoly(p, {1, 1})) == 0);
  }
  // Same properties over the integers.
  for (int trial = 0; trial < 100; ++trial) {
    auto f = ip(oracle::random_poly(rng, 1 + rng() % 4, 6));
    auto g = ip(oracle::random_poly(rng, 1 + rng() % 4, 6));
    auto h = ip(oracle::random_poly(rng, 1 + rng() % 3, 6));
    std::size_t d = f.degree().value(), e = g.degree().value();
    BigInt fg = resultant_sylvester(f, g);
    CHECK(fg == ((d * e) % 2 ? -1 : 1) * resultant_sylvester(g, f));
    CHECK(resultant_sylvester(f, g * h) == fg * resultant_sylvester(f, h));
  }
}

TEST_CASE("IntPoly arithmetic") {
  auto f = ip({1, -1, 1});
  CHECK((f * ip({1, 1})) == ip({1, 0, 0, 1}));
  CHECK((f - f).is_zero());
  CHECK(f.eval(BigInt(2)) == 3);
  CHECK(f.to_string() == "1 - t + t^2");
  CHECK(ip({0, 3, -2}).to_mod(Prime(3)) == ModPoly(Prime(3), {0, 0, 1}));
}
