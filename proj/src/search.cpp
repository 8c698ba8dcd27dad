#include "newman/search.hpp"

#include "newman/errors.hpp"
#include "newman/parallel.hpp"
#include "newman/roots.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace newman {

Newman01::Newman01(int d, std::uint32_t b) : degree(d), bits(b) {
  if (d < 1 || d > kMaxDegree) throw CapacityError("0-1 polynomial degree must be in 1..24");
  if ((b & 1u) == 0 || ((b >> d) & 1u) == 0 || (b >> d) > 1u)
    throw ContractViolation("0-1 polynomial needs bits 0 and degree set and nothing above");
}

std::vector<int> Newman01::coeffs() const {
  std::vector<int> c(degree + 1);
  for (int k = 0; k <= degree; ++k) c[k] = (bits >> k) & 1u;
  return c;
}

Newman01 Newman01::reciprocal() const {
  std::uint32_t rev = 0;
  for (int k = 0; k <= degree; ++k)
    if ((bits >> k) & 1u) rev |= 1u << (degree - k);
  return {degree, rev};
}

std::string Newman01::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= degree; ++k) {
    if (!((bits >> k) & 1u)) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0) os << "1";
    else if (k == 1) os << "x";
    else os << "x^" << k;
  }
  return os.str();
}

std::vector<Newman01> enumerate_01(int degree) {
  if (degree < 1 || degree > Newman01::kMaxDegree) throw CapacityError("degree must be in 1..24");
  std::vector<Newman01> out;
  out.reserve(std::size_t{1} << (degree - 1));
  const std::uint32_t top = 1u << degree;
  for (std::uint32_t mid = 0; mid < (1u << (degree - 1)); ++mid) out.emplace_back(degree, top | (mid << 1) | 1u);
  return out;
}

// ---------------------------------------------------------------------------
// Exact polynomial arithmetic over Q (ascending coefficients, no trailing zeros).

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly derivative(const QPoly& f) {
  QPoly d;
  for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * static_cast<long>(k));
  trim(d);
  return d;
}

QPoly monic(QPoly f) {
  if (f.empty()) return f;
  const Rational lead = f.back();
  for (auto& c : f) c /= lead;
  return f;
}

void divmod(const QPoly& f, const QPoly& g, QPoly& q, QPoly& r) {
  if (g.empty()) throw DivisionByZero("polynomial division by zero");
  r = f;
  trim(r);
  q.assign(r.size() >= g.size() ? r.size() - g.size() + 1 : 0, Rational(0));
  while (!r.empty() && r.size() >= g.size()) {
    const std::size_t shift = r.size() - g.size();
    const Rational c = r.back() / g.back();
    q[shift] = c;
    for (std::size_t k = 0; k < g.size(); ++k) r[shift + k] -= c * g[k];
    trim(r);
  }
  trim(q);
}

QPoly exact_quotient(const QPoly& f, const QPoly& g) {
  QPoly q, r;
  divmod(f, g, q, r);
  if (!r.empty()) throw ContractViolation("inexact polynomial division");
  return q;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t k = 0; k < a.size(); ++k) c[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) c[k] -= b[k];
  trim(c);
  return c;
}

}  // namespace

std::vector<QPoly> squarefree_decomposition(const QPoly& f_in) {
  QPoly f = f_in;
  trim(f);
  if (f.size() < 2) throw ContractViolation("square-free decomposition needs a nonconstant polynomial");
  f = monic(f);
  // Yun's algorithm.
  std::vector<QPoly> out;
  QPoly a = gcd(f, derivative(f));
  QPoly b = exact_quotient(f, a);
  QPoly c = exact_quotient(derivative(f), a);
  QPoly d = sub(c, derivative(b));
  while (b.size() > 1) {
    QPoly g = gcd(b, d);
    out.push_back(g);
    b = exact_quotient(b, g);
    c = exact_quotient(d, g);
    d = sub(c, derivative(b));
  }
  while (!out.empty() && out.back().size() == 1) out.pop_back();
  return out;
}

std::string to_string(SplitClass c) {
  switch (c) {
    case SplitClass::Fair: return "fair";
    case SplitClass::Unfair: return "unfair";
    case SplitClass::Indeterminate: return "indeterminate";
  }
  return "?";
}

// ---------------------------------------------------------------------------

namespace {

template <class Real>
struct Unit {
  Complex<Real> root;
  bool is_real;
  int multiplicity;
};

template <class Real>
Real from_rational(const Rational& q) {
  if constexpr (std::is_same_v<Real, double>) {
    return q.convert_to<double>();
  } else {
    return Real(mp::numerator(q).str()) / Real(mp::denominator(q).str());
  }
}

template <class Real>
std::vector<Unit<Real>> units_of(const Newman01& r) {
  using C = Complex<Real>;
  using std::abs;
  using std::cos;
  using std::pow;
  using std::sin;
  using std::sqrt;
  QPoly f;
  for (int c : r.coeffs()) f.emplace_back(c);
  const auto factors = squarefree_decomposition(f);
  const Real u = unit_roundoff<Real>();
  const Real real_cut = sqrt(u);
  const Real root_tol = 64 * u;

  std::vector<Unit<Real>> units;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const QPoly& g = factors[i];
    const std::size_t m = g.size() - 1;
    if (m == 0) continue;
    const int mult = static_cast<int>(i) + 1;
    std::vector<Real> coeffs;
    for (const auto& q : g) coeffs.push_back(from_rational<Real>(q));
    const Real radius = pow(abs(coeffs[0]), Real(1) / Real(m));
    std::vector<C> seeds;
    const Real two_pi = 2 * pi_v<Real>();
    for (std::size_t k = 0; k < m; ++k) {
      const Real angle = two_pi * Real(k) / Real(m) + Real(0.4);
      seeds.emplace_back(radius * cos(angle), radius * sin(angle));
    }
    std::vector<C> roots;
    try {
      roots = aberth_roots(coeffs, seeds, root_tol);
    } catch (const NumericFailure& e) {
      throw NumericFailure("root finder failed for " + r.to_string() + ": " + e.what());
    }
    std::vector<C> upper, lower;
    for (auto& z : roots) {
      if (abs(z.im) <= real_cut * (1 + abs(z))) units.push_back({C(z.re), true, mult});
      else if (z.im > 0) upper.push_back(z);
      else lower.push_back(z);
    }
    if (upper.size() != lower.size())
      throw NumericFailure("unpaired complex roots for " + r.to_string());
    std::vector<bool> used(lower.size(), false);
    for (auto& z : upper) {
      std::size_t best = lower.size();
      Real best_d = 0;
      for (std::size_t j = 0; j < lower.size(); ++j) {
        if (used[j]) continue;
        const Real dist = abs(conj(z) - lower[j]);
        if (best == lower.size() || dist < best_d) {
          best = j;
          best_d = dist;
        }
      }
      if (best_d > real_cut * (1 + abs(z)))
        throw NumericFailure("complex roots not conjugate-closed for " + r.to_string());
      used[best] = true;
      const C mid((z.re + lower[best].re) / 2, (z.im - lower[best].im) / 2);
      units.push_back({mid, false, mult});
    }
  }
  std::sort(units.begin(), units.end(), [](const Unit<Real>& a, const Unit<Real>& b) {
    if (a.is_real != b.is_real) return a.is_real;
    if (a.root.re != b.root.re) return a.root.re < b.root.re;
    return a.root.im < b.root.im;
  });
  return units;
}

template <class Real>
std::vector<Complex<Real>> multiply_linear(std::vector<Complex<Real>> p, const Complex<Real>& z) {
  p.push_back(Complex<Real>(Real(0)));
  for (std::size_t k = p.size() - 1; k > 0; --k) p[k] = p[k - 1] - z * p[k];
  p[0] = Complex<Real>(Real(0)) - z * p[0];
  return p;
}

template <class Real>
std::vector<Real> drop_imaginary(const std::vector<Complex<Real>>& p, double tol, const Newman01& r) {
  using std::abs;
  std::vector<Real> out;
  for (const auto& c : p) {
    if (abs(c.im) > tol) throw NumericFailure("factor coefficients not real for " + r.to_string());
    out.push_back(c.re);
  }
  return out;
}

template <class Real>
SplitClass classify_impl(const std::vector<Real>& p, const std::vector<Real>& q, double tol, SplitCandidate* cand) {
  using std::abs;
  using std::min;
  Real neg = 0, dev = 0;
  std::string neg_at, dev_at;
  bool first = true;
  auto visit = [&](const std::vector<Real>& v, const char* name) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      const Real d = min(abs(v[k]), abs(v[k] - 1));
      const std::string at = std::string(name) + "[" + std::to_string(k) + "]";
      if (first || v[k] < neg) {
        neg = v[k];
        neg_at = at;
      }
      if (first || d > dev) {
        dev = d;
        dev_at = at;
      }
      first = false;
    }
  };
  visit(p, "P");
  visit(q, "Q");
  const Real t(tol);
  SplitClass cls;
  std::string at;
  Real margin;
  if (neg < -1000 * t) {
    cls = SplitClass::Fair;
    at = neg_at;
    margin = -1000 * t - neg;
  } else if (neg < -t) {
    cls = SplitClass::Indeterminate;
    at = neg_at;
    margin = -t - neg;
  } else if (dev > t) {
    cls = SplitClass::Unfair;
    at = dev_at;
    margin = dev - t;
  } else {
    cls = SplitClass::Fair;
    at = dev_at;
    margin = t - dev;
  }
  if (cand) {
    cand->classification = cls;
    cand->min_coeff = to_double(neg);
    cand->max_deviation = to_double(dev);
    cand->offending = at;
    cand->margin = to_double(margin);
  }
  return cls;
}

template <class Real>
std::vector<SplitCandidate> splits_impl(const Newman01& r, double tol, unsigned bits) {
  using C = Complex<Real>;
  using std::abs;
  using std::max;
  const auto units = units_of<Real>(r);
  const std::size_t n = units.size();
  const auto rc = r.coeffs();
  const double recon_bound = r.degree * std::ldexp(1.0, r.degree) * tol;

  std::vector<SplitCandidate> out;
  std::vector<int> counts(n, 0);
  while (true) {
    // Advance the mixed-radix counter; stop after wrapping.
    std::size_t i = 0;
    while (i < n && counts[i] == units[i].multiplicity) counts[i++] = 0;
    if (i == n) break;
    ++counts[i];

    std::vector<int> comp(n);
    bool full = true;
    for (std::size_t k = 0; k < n; ++k) {
      comp[k] = units[k].multiplicity - counts[k];
      if (comp[k] != 0) full = false;
    }
    if (full) continue;
    if (comp < counts) continue;  // the complement carries this split

    std::vector<C> pc{C(Real(1))}, qc{C(Real(1))};
    for (std::size_t k = 0; k < n; ++k) {
      const auto& un = units[k];
      for (int s = 0; s < un.multiplicity; ++s) {
        auto& target = s < counts[k] ? pc : qc;
        target = multiply_linear(target, un.root);
        if (!un.is_real) target = multiply_linear(target, conj(un.root));
      }
    }
    const auto p = drop_imaginary(pc, tol, r);
    const auto q = drop_imaginary(qc, tol, r);

    Real recon = 0;
    for (std::size_t k = 0; k < rc.size(); ++k) {
      Real acc = 0;
      for (std::size_t j = 0; j < p.size(); ++j)
        if (k >= j && k - j < q.size()) acc += p[j] * q[k - j];
      recon = max(recon, Real(abs(acc - Real(rc[k]))));
    }
    if (recon > recon_bound)
      throw NumericFailure("split does not reproduce " + r.to_string() + " (error " +
                           std::to_string(to_double(recon)) + ")");

    SplitCandidate cand;
    cand.r = r;
    cand.subset = counts;
    for (const auto& c : p) cand.p_coeffs.push_back(to_double(c));
    for (const auto& c : q) cand.q_coeffs.push_back(to_double(c));
    cand.reconstruction_error = to_double(recon);
    cand.precision_bits = bits;
    classify_impl(p, q, tol, &cand);
    out.push_back(std::move(cand));
  }
  return out;
}

void check_tol(double tol) {
  if (!(tol >= 1e-10 && tol <= 1e-4)) throw DomainError("search tolerance must be in [1e-10, 1e-4]");
}

std::vector<SplitCandidate> splits_at(const Newman01& r, double tol, unsigned bits) {
  if (bits <= 53) return splits_impl<double>(r, tol, 53);
  PrecisionScope scope(bits);
  return splits_impl<HighReal>(r, tol, bits);
}

std::vector<SplitCandidate> non_fair(std::vector<SplitCandidate> all) {
  std::vector<SplitCandidate> out;
  for (auto& c : all)
    if (c.classification != SplitClass::Fair) out.push_back(std::move(c));
  return out;
}

}  // namespace

SplitClass classify_coefficients(const std::vector<double>& p, const std::vector<double>& q, double tol) {
  return classify_impl(p, q, tol, nullptr);
}

std::vector<RootUnit> root_units(const Newman01& r, unsigned bits) {
  std::vector<RootUnit> out;
  auto convert = [&](const auto& units) {
    for (const auto& un : units)
      out.push_back({Complex<double>(to_double(un.root.re), to_double(un.root.im)), un.is_real, un.multiplicity});
  };
  if (bits <= 53) {
    convert(units_of<double>(r));
  } else {
    PrecisionScope scope(bits);
    convert(units_of<HighReal>(r));
  }
  return out;
}

std::vector<SplitCandidate> all_splits(const Newman01& r, double tol, unsigned bits) {
  check_tol(tol);
  return splits_at(r, tol, bits);
}

std::vector<SplitCandidate> classify(const Newman01& r, double tol, unsigned bits) {
  return non_fair(all_splits(r, tol, bits));
}

ScanReport scan(int max_degree, double tol, unsigned jobs,
                const std::function<void(const DegreeSummary&)>& on_degree) {
  if (max_degree < 1 || max_degree > Newman01::kMaxDegree) throw CapacityError("degree must be in 1..24");
  check_tol(tol);
  const auto start = std::chrono::steady_clock::now();
  ScanReport report;
  report.max_degree = max_degree;
  report.tol = tol;

  struct PerPoly {
    std::size_t splits = 0;
    std::size_t indeterminate = 0;
    std::vector<SplitCandidate> findings;  // after escalation
  };

  for (int d = 1; d <= max_degree; ++d) {
    const auto polys = enumerate_01(d);
    std::vector<PerPoly> results(polys.size());
    parallel_for(jobs, polys.size(), [&](std::size_t i) {
      auto all = all_splits(polys[i], tol);
      PerPoly& res = results[i];
      res.splits = all.size();
      bool escalate = false;
      for (auto& c : all) {
        if (c.classification == SplitClass::Indeterminate) {
          ++res.indeterminate;
          escalate = true;
        }
      }
      if (escalate) {
        res.findings = non_fair(splits_at(polys[i], tol / 100, kEscalationBits));
      } else {
        for (auto& c : all)
          if (c.classification == SplitClass::Unfair) res.findings.push_back(std::move(c));
      }
    });

    DegreeSummary summary;
    summary.degree = d;
    summary.polynomials = polys.size();
    for (auto& res : results) {
      summary.splits += res.splits;
      summary.indeterminate += res.indeterminate;
      if (res.findings.empty()) ++summary.fair_only;
      for (auto& c : res.findings) {
        if (c.classification == SplitClass::Unfair) ++summary.unfair;
        else ++summary.residual_indeterminate;
        report.findings.push_back(std::move(c));
      }
    }
    report.unfair += summary.unfair;
    report.indeterminate += summary.indeterminate;
    report.residual_indeterminate += summary.residual_indeterminate;
    report.degrees.push_back(summary);
    if (on_degree) on_degree(summary);
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace newman
