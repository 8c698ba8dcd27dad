#include "newman/modpoly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace newman {

// ---------------------------------------------------------------- Prime

bool Prime::is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Prime::Prime(std::uint64_t value) {
  if (value >= limit) throw ContractViolation("modulus " + std::to_string(value) + " is not below 2^31");
  if (!is_prime(value)) throw ContractViolation(std::to_string(value) + " is not prime");
  value_ = static_cast<std::uint32_t>(value);
}

std::vector<Prime> primes_up_to(std::uint32_t bound) {
  std::vector<Prime> out;
  for (std::uint32_t n = 2; n <= bound; ++n)
    if (Prime::is_prime(n)) out.emplace_back(n);
  return out;
}

// ---------------------------------------------------------------- Degree

std::size_t Degree::value() const {
  if (!value_) throw ContractViolation("degree of the zero polynomial has no integer value");
  return *value_;
}

std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
  if (!a.value_ || !b.value_) return a.value_.has_value() <=> b.value_.has_value();
  return *a.value_ <=> *b.value_;
}

std::string Degree::to_string() const { return value_ ? std::to_string(*value_) : "-inf"; }

// ---------------------------------------------------------------- field

FieldElem add_mod(FieldElem a, FieldElem b, Prime p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<FieldElem>(s >= p.value() ? s - p.value() : s);
}

FieldElem mul_mod(FieldElem a, FieldElem b, Prime p) {
  return static_cast<FieldElem>(std::uint64_t{a} * b % p.value());
}

FieldElem pow_mod(FieldElem a, std::uint64_t e, Prime p) {
  std::uint64_t r = 1 % p.value(), b = a % p.value();
  while (e) {
    if (e & 1) r = r * b % p.value();
    b = b * b % p.value();
    e >>= 1;
  }
  return static_cast<FieldElem>(r);
}

FieldElem inv_mod(FieldElem a, Prime p) {
  if (a % p.value() == 0) throw DivisionByZero("zero has no inverse mod " + std::to_string(p.value()));
  // Extended Euclid on signed 64-bit values.
  std::int64_t r0 = p.value(), r1 = a % p.value(), s0 = 0, s1 = 1;
  while (r1) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  return reduce(s0, p);
}

FieldElem reduce(std::int64_t v, Prime p) {
  std::int64_t m = v % static_cast<std::int64_t>(p.value());
  return static_cast<FieldElem>(m < 0 ? m + p.value() : m);
}

FieldElem reduce(const BigInt& v, Prime p) {
  BigInt m = v % p.value();
  if (m < 0) m += p.value();
  return m.convert_to<FieldElem>();
}

// ---------------------------------------------------------------- ModPoly

ModPoly::ModPoly(Prime p, std::initializer_list<long long> coeffs)
    : ModPoly(p, std::vector<long long>(coeffs)) {}

ModPoly::ModPoly(Prime p, const std::vector<long long>& coeffs) : p_(p) {
  c_.reserve(coeffs.size());
  for (auto v : coeffs) c_.push_back(reduce(v, p));
  trim();
}

ModPoly ModPoly::from_residues(Prime p, std::vector<FieldElem> coeffs) {
  for (auto v : coeffs)
    if (v >= p.value()) throw ContractViolation("residue out of range");
  ModPoly f(p);
  f.c_ = std::move(coeffs);
  f.trim();
  return f;
}

ModPoly ModPoly::constant(Prime p, long long c) { return ModPoly(p, {c}); }

void ModPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Degree ModPoly::degree() const { return c_.empty() ? Degree::minus_infinity() : Degree(c_.size() - 1); }

FieldElem ModPoly::eval(FieldElem x) const {
  std::uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % p_.value();
  return static_cast<FieldElem>(acc);
}

ModPoly ModPoly::shifted(std::size_t k) const {
  ModPoly r(p_);
  if (c_.empty()) return r;
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

ModPoly ModPoly::scaled(FieldElem s) const {
  ModPoly r(p_);
  r.c_.reserve(c_.size());
  for (auto v : c_) r.c_.push_back(mul_mod(v, s, p_));
  r.trim();
  return r;
}

ModPoly ModPoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(inv_mod(c_.back(), p_));
}

void require_same_modulus(const ModPoly& f, const ModPoly& g) {
  if (f.modulus() != g.modulus())
    throw ContractViolation("modulus mismatch: " + std::to_string(f.modulus().value()) + " vs " +
                            std::to_string(g.modulus().value()));
}

ModPoly operator+(const ModPoly& f, const ModPoly& g) {
  require_same_modulus(f, g);
  ModPoly r(f.p_);
  r.c_.resize(std::max(f.c_.size(), g.c_.size()));
  for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = add_mod(f.coeff(k), g.coeff(k), f.p_);
  r.trim();
  return r;
}

ModPoly operator-(const ModPoly& f) {
  ModPoly r(f.p_);
  r.c_.reserve(f.c_.size());
  for (auto v : f.c_) r.c_.push_back(v ? f.p_.value() - v : 0);
  return r;
}

ModPoly operator-(const ModPoly& f, const ModPoly& g) { return f + (-g); }

ModPoly operator*(const ModPoly& f, const ModPoly& g) {
  require_same_modulus(f, g);
  ModPoly r(f.p_);
  if (f.is_zero() || g.is_zero()) return r;
  const std::uint64_t p = f.p_.value();
  std::vector<std::uint64_t> acc(f.c_.size() + g.c_.size() - 1, 0);
  for (std::size_t i = 0; i < f.c_.size(); ++i) {
    if (!f.c_[i]) continue;
    for (std::size_t j = 0; j < g.c_.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{f.c_[i]} * g.c_[j]) % p;
  }
  r.c_.assign(acc.begin(), acc.end());
  r.trim();
  return r;
}

std::string ModPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (!c_[k]) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0 || c_[k] != 1) os << c_[k];
    if (k >= 1) os << (c_[k] != 1 ? "*t" : "t");
    if (k >= 2) os << '^' << k;
  }
  return os.str();
}

std::pair<ModPoly, ModPoly> divmod(const ModPoly& f, const ModPoly& g) {
  require_same_modulus(f, g);
  if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
  const Prime p = f.modulus();
  if (f.degree() < g.degree()) return {ModPoly(p), f};
  std::vector<FieldElem> r = f.coeffs();
  const auto& gc = g.coeffs();
  const std::size_t e = gc.size() - 1;
  const FieldElem inv = inv_mod(gc.back(), p);
  std::vector<FieldElem> q(r.size() - e, 0);
  for (std::size_t top = r.size() - 1;; --top) {
    FieldElem c = mul_mod(r[top], inv, p);
    q[top - e] = c;
    if (c) {
      FieldElem m = p.value() - c;
      for (std::size_t i = 0; i <= e; ++i) r[top - e + i] = add_mod(r[top - e + i], mul_mod(m, gc[i], p), p);
    }
    if (top == e) break;
  }
  r.resize(e);
  return {ModPoly::from_residues(p, std::move(q)), ModPoly::from_residues(p, std::move(r))};
}

ModPoly rem(const ModPoly& f, const ModPoly& g) { return divmod(f, g).second; }

ModPoly gcd(const ModPoly& f, const ModPoly& g) {
  require_same_modulus(f, g);
  ModPoly a = f, b = g;
  while (!b.is_zero()) {
    ModPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

// Remainder sequence over residues kept in 64-bit words. Coefficients of the
// dividend are reduced lazily: each elimination step adds at most (p-1)^2 to a
// word, so a full reduction is only needed every `headroom` steps. Only the
// coefficient about to become the leading one is reduced eagerly.
FieldElem resultant_kernel(std::vector<std::uint64_t> f, std::vector<std::uint64_t> g, Prime prime) {
  const std::uint64_t p = prime.value();
  const std::uint64_t sq = (p - 1) * (p - 1);
  const std::uint64_t headroom = sq == 0 ? std::numeric_limits<std::uint64_t>::max()
                                         : (std::numeric_limits<std::uint64_t>::max() - (p - 1)) / sq;
  std::uint64_t acc = 1;
  for (;;) {
    const std::size_t d = f.size() - 1, e = g.size() - 1;
    const std::uint64_t lg = g[e];
    if (e == 0) return static_cast<FieldElem>(acc * pow_mod(static_cast<FieldElem>(lg), d, prime) % p);
    const std::uint64_t inv = inv_mod(static_cast<FieldElem>(lg), prime);

    std::uint64_t steps = 0;
    for (std::size_t top = d; top >= e; --top) {
      std::uint64_t lead = f[top] % p;
      if (lead) {
        if (steps == headroom) {
          for (std::size_t i = 0; i < top; ++i) f[i] %= p;
          steps = 0;
        }
        const std::uint64_t m = p - lead * inv % p;
        std::uint64_t* dst = f.data() + (top - e);
        const std::uint64_t* src = g.data();
        for (std::size_t i = 0; i < e; ++i) dst[i] += m * src[i];
        ++steps;
      }
      if (top == e) break;
    }
    std::size_t len = std::min(e, f.size());
    for (std::size_t i = 0; i < len; ++i) f[i] %= p;
    while (len && f[len - 1] == 0) --len;
    if (len == 0) return 0;
    const std::size_t dr = len - 1;
    f.resize(len);
    if ((d & 1) && (e & 1)) acc = (p - acc) % p;
    acc = acc * pow_mod(static_cast<FieldElem>(lg), d - dr, prime) % p;
    std::swap(f, g);
  }
}

}  // namespace

FieldElem resultant_prs(const ModPoly& f, const ModPoly& g) {
  require_same_modulus(f, g);
  if (f.is_zero() && g.is_zero()) throw UndefinedResultant("resultant of two zero polynomials");
  if (f.is_zero()) return g.degree() == Degree(0) ? 1 : 0;
  if (g.is_zero()) return f.degree() == Degree(0) ? 1 : 0;
  std::vector<std::uint64_t> fw(f.coeffs().begin(), f.coeffs().end());
  std::vector<std::uint64_t> gw(g.coeffs().begin(), g.coeffs().end());
  return resultant_kernel(std::move(fw), std::move(gw), f.modulus());
}

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::initializer_list<long long> coeffs) {
  for (auto v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Degree IntPoly::degree() const { return c_.empty() ? Degree::minus_infinity() : Degree(c_.size() - 1); }

const BigInt& IntPoly::coeff(std::size_t k) const {
  static const BigInt zero = 0;
  return k < c_.size() ? c_[k] : zero;
}

const BigInt& IntPoly::leading() const { return coeff(c_.empty() ? 0 : c_.size() - 1); }

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

double IntPoly::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->convert_to<double>();
  return acc;
}

IntPoly IntPoly::shifted(std::size_t k) const {
  if (c_.empty()) return {};
  std::vector<BigInt> r(k, BigInt(0));
  r.insert(r.end(), c_.begin(), c_.end());
  return IntPoly(std::move(r));
}

ModPoly IntPoly::to_mod(Prime p) const {
  std::vector<FieldElem> r;
  r.reserve(c_.size());
  for (const auto& v : c_) r.push_back(reduce(v, p));
  return ModPoly::from_residues(p, std::move(r));
}

IntPoly operator+(const IntPoly& f, const IntPoly& g) {
  std::vector<BigInt> r(std::max(f.c_.size(), g.c_.size()));
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = f.coeff(k) + g.coeff(k);
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& f) {
  std::vector<BigInt> r;
  r.reserve(f.c_.size());
  for (const auto& v : f.c_) r.push_back(-v);
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& f, const IntPoly& g) { return f + (-g); }

IntPoly operator*(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<BigInt> r(f.c_.size() + g.c_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < f.c_.size(); ++i)
    for (std::size_t j = 0; j < g.c_.size(); ++j) r[i + j] += f.c_[i] * g.c_[j];
  return IntPoly(std::move(r));
}

std::string IntPoly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const BigInt& v = c_[k];
    if (v == 0) continue;
    BigInt mag = abs(v);
    if (first)
      os << (v < 0 ? "-" : "");
    else
      os << (v < 0 ? " - " : " + ");
    first = false;
    if (k == 0 || mag != 1) os << mag;
    if (k >= 1) os << (mag != 1 ? "*" : "") << var;
    if (k >= 2) os << '^' << k;
  }
  return os.str();
}

// ---------------------------------------------------------------- Sylvester

BigMatrix sylvester_matrix(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw ContractViolation("Sylvester matrix needs nonzero polynomials");
  const std::size_t d = f.degree().value(), e = g.degree().value(), n = d + e;
  BigMatrix m(n, std::vector<BigInt>(n, BigInt(0)));
  for (std::size_t r = 0; r < e; ++r)
    for (std::size_t k = 0; k <= d; ++k) m[r][r + k] = f.coeff(d - k);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k <= e; ++k) m[e + r][r + k] = g.coeff(e - k);
  return m;
}

BigInt bareiss_determinant(BigMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt resultant_sylvester(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() && g.is_zero()) throw UndefinedResultant("resultant of two zero polynomials");
  if (f.is_zero()) return g.degree() == Degree(0) ? 1 : 0;
  if (g.is_zero()) return f.degree() == Degree(0) ? 1 : 0;
  if (f.degree().value() > sylvester_degree_cap || g.degree().value() > sylvester_degree_cap)
    throw CapacityError("Sylvester resultant limited to degree " + std::to_string(sylvester_degree_cap));
  return bareiss_determinant(sylvester_matrix(f, g));
}

}  // namespace newman
