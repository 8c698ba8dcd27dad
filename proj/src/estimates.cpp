#include "newman/analytic.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace newman {

bool BatteryReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

GridSpec GridSpec::parse(const std::string& spec) {
  GridSpec g;
  if (spec.empty() || spec == "default") return g;
  std::istringstream items(spec);
  std::string item;
  while (std::getline(items, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("grid item '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      if (key == "t_step") {
        g.t_step = std::stod(value, &used);
        if (!(g.t_step > 0 && g.t_step <= 0.1)) throw DomainError("t_step must lie in (0, 0.1]");
      } else if (key == "wide_count") {
        g.wide_count = std::stoul(value, &used);
        if (g.wide_count < 2) throw DomainError("wide_count must be at least 2");
      } else if (key == "small_count") {
        g.small_count = std::stoul(value, &used);
        if (g.small_count < 2) throw DomainError("small_count must be at least 2");
      } else if (key == "samples") {
        g.samples = std::stoul(value, &used);
        if (g.samples < 1) throw DomainError("samples must be positive");
      } else if (key == "seed") {
        g.seed = std::stoull(value, &used);
      } else if (key == "bits") {
        g.high_precision_bits = static_cast<unsigned>(std::stoul(value, &used));
        if (g.high_precision_bits < 64) throw DomainError("bits must be at least 64");
      } else {
        throw DomainError("unknown grid key '" + key + "'");
      }
      if (used != value.size()) throw DomainError("bad value for " + key);
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const DomainError*>(&e)) throw;
      throw DomainError("bad value for " + key + ": '" + value + "'");
    }
  }
  return g;
}

std::string GridSpec::to_string() const {
  std::ostringstream os;
  os << std::setprecision(17) << "t_step=" << t_step << ",wide_count=" << wide_count << ",small_count=" << small_count
     << ",samples=" << samples << ",seed=" << seed << ",bits=" << high_precision_bits;
  return os.str();
}

namespace {

// Tracks the smallest margin seen and where it occurred.
struct Worst {
  double margin = std::numeric_limits<double>::infinity();
  double at = 0;
  void see(double m, double x) {
    if (m < margin) {
      margin = m;
      at = x;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

CheckResult make(const std::string& id, const std::string& statement, const std::string& grid, const Worst& w,
                 std::string detail = {}) {
  CheckResult c;
  c.id = id;
  c.statement = statement;
  c.grid = grid;
  c.worst_margin = w.margin;
  c.worst_at = w.at;
  c.pass = std::isfinite(w.margin) && w.margin > 0;
  c.detail = std::move(detail);
  return c;
}

template <class Real>
QuinticRoots<Real> roots_or_abort(const Real& t) {
  try {
    return find_roots(t);
  } catch (const NumericFailure& e) {
    throw NumericFailure(std::string("estimate battery aborted at t = ") + fmt(to_double(t)) + ": " + e.what());
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return v;
}

}  // namespace

BatteryReport check_estimates(const GridSpec& g) {
  BatteryReport report;
  using C = Complex<double>;

  // Unit grid [0, 1] in steps of t_step.
  std::vector<double> unit;
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / g.t_step));
  for (std::size_t i = 0; i <= steps; ++i) unit.push_back(std::min(1.0, static_cast<double>(i) * g.t_step));
  std::vector<QuinticRoots<double>> unit_roots;
  for (double t : unit) unit_roots.push_back(roots_or_abort(t));
  const std::string unit_grid = "t in [0, 1], step " + fmt(g.t_step);

  const std::vector<double> wide = linspace(0.005, 0.999, g.wide_count);
  std::vector<QuinticRoots<double>> wide_roots;
  for (double a : wide) wide_roots.push_back(roots_or_abort(a));
  const std::string wide_grid = "a in [0.005, 0.999], " + std::to_string(g.wide_count) + " points";

  // (a) monotonicity of the moduli.
  {
    Worst w;
    for (std::size_t i = 0; i + 1 < unit.size(); ++i) {
      const auto &r0 = unit_roots[i], &r1 = unit_roots[i + 1];
      w.see(std::abs(r0.alpha) - std::abs(r1.alpha), unit[i]);
      w.see(abs(r1.beta) - abs(r0.beta), unit[i]);
      w.see(abs(r0.gamma) - abs(r1.gamma), unit[i]);
    }
    report.checks.push_back(make("a", "|alpha(t)|, |gamma(t)| strictly decreasing and |beta(t)| strictly increasing",
                                 unit_grid, w, "margin: smallest step change in the required direction"));
  }

  // (b) modulus bounds for 0.005 <= a < 1.
  {
    Worst w;
    for (std::size_t i = 0; i < wide.size(); ++i) {
      const auto& r = wide_roots[i];
      const double ma = std::abs(r.alpha), mb = abs(r.beta), mg = abs(r.gamma);
      for (double m : {ma - 0.8375, 0.999002 - ma, mb - 1.000809, 1.1872 - mb, mg - 0.9203, 0.999692 - mg})
        w.see(m, wide[i]);
    }
    report.checks.push_back(make("b",
                                 "0.8375 <= |alpha| <= 0.999002, 1.000809 <= |beta| <= 1.1872, "
                                 "0.9203 <= |gamma| <= 0.999692",
                                 wide_grid, w, "margin: smallest slack to any bound"));
  }

  // (c) residue coefficient bounds.
  {
    Worst w;
    for (std::size_t i = 0; i < wide.size(); ++i) {
      auto c = residue_coeffs(wide_roots[i]);
      w.see(2 - std::abs(c.c_alpha), wide[i]);
      w.see(abs(c.c_beta) - 1.0 / 2007, wide[i]);
      w.see(1 - abs(c.c_gamma), wide[i]);
    }
    report.checks.push_back(
        make("c", "|c_alpha| <= 2, |c_beta| >= 1/2007, |c_gamma| <= 1", wide_grid, w, "margin: smallest slack"));
  }

  // (d) max(2|Re z|, 2|Re zw|) >= |z| |w|^{-1} |Im w| for |w| >= 1.
  {
    Worst w;
    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> angle(0, 2 * M_PI), radius(1, 3), zr(0.01, 10);
    for (std::size_t s = 0; s < g.samples; ++s) {
      C z = polar(zr(rng), angle(rng));
      C v = polar(radius(rng), angle(rng));
      const double lhs = std::max(2 * std::abs(z.re), 2 * std::abs((z * v).re));
      const double rhs = abs(z) / abs(v) * std::abs(v.im);
      w.see((lhs - rhs) / abs(z), static_cast<double>(s));
    }
    report.checks.push_back(make("d", "max(2|Re z|, 2|Re zw|) >= |z| |w|^-1 |Im w| whenever |w| >= 1",
                                 std::to_string(g.samples) + " random (z, w), |z| in [0.01, 10], |w| in [1, 3]", w,
                                 "margin: (lhs - rhs) / |z|; worst_at is the sample index"));
  }

  // (e) Im beta increasing in t, and Im beta >= 0.95 for a >= 0.005.
  {
    Worst mono, floor;
    for (std::size_t i = 0; i + 1 < unit.size(); ++i) mono.see(unit_roots[i + 1].beta.im - unit_roots[i].beta.im, unit[i]);
    for (std::size_t i = 0; i < wide.size(); ++i) floor.see(wide_roots[i].beta.im - 0.95, wide[i]);
    Worst w = mono.margin < floor.margin ? mono : floor;
    report.checks.push_back(make("e", "Im beta(t) strictly increasing; Im beta >= 0.95 for a >= 0.005",
                                 unit_grid + "; " + wide_grid, w,
                                 "increase margin " + fmt(mono.margin) + ", floor margin " + fmt(floor.margin)));
  }

  // (f) distance from fifth roots of unity, and |gamma - 1|.
  {
    Worst w;
    for (std::size_t i = 0; i < unit.size(); ++i) {
      for (const auto& rho : unit_roots[i].all())
        for (int k = 0; k < 5; ++k) w.see(abs(rho - polar(1.0, 2 * M_PI * k / 5)) - 0.1, unit[i]);
      w.see(abs(unit_roots[i].gamma - C(1.0)) - 0.2, unit[i]);
    }
    report.checks.push_back(make("f", "|rho(t) - mu| >= 1/10 for every fifth root of unity mu; |gamma(t) - 1| >= 0.2",
                                 unit_grid, w, "margin: smallest slack"));
  }

  // (k) root identity rho^10 - 1 = 2 t rho^3 + t^2 rho^6.
  {
    const double tol = 1e-12;
    Worst w;
    for (std::size_t i = 0; i < unit.size(); ++i) {
      const double t = unit[i];
      for (const auto& rho : unit_roots[i].all()) {
        C r3 = pow(rho, 3), r6 = pow(rho, 6), r10 = pow(rho, 10);
        C defect = r10 - C(1.0) - 2 * t * r3 - t * t * r6;
        w.see(1 - abs(defect) / tol, t);
      }
    }
    report.checks.push_back(make("k", "rho^10 - 1 = 2 t rho^3 + t^2 rho^6 at every computed root", unit_grid, w,
                                 "margin: 1 - |defect| / 1e-12"));
  }

  // (m) Re(5 gamma^2 + 3t) > 0.
  {
    Worst w;
    for (std::size_t i = 0; i < unit.size(); ++i) {
      const C gm = unit_roots[i].gamma;
      w.see((C(5.0) * gm * gm).re + 3 * unit[i], unit[i]);
    }
    report.checks.push_back(make("m", "Re(5 gamma(t)^2 + 3t) > 0", unit_grid, w, "margin: the real part itself"));
  }

  // (i) scalar expansions on |x| <= 0.01.
  {
    Worst w;
    for (double x : linspace(-0.01, 0.01, 2001)) {
      if (x == 0) continue;
      w.see(0.512 - std::abs(std::log1p(x) - x) / (x * x), x);
      w.see(1.02 - std::abs(1 / (1 + x) - 1) / std::abs(x), x);
    }
    report.checks.push_back(make("i", "|log(1+x) - x| <= 0.512 x^2 and |1/(1+x) - 1| <= 1.02 |x| for |x| <= 0.01",
                                 "x in [-0.01, 0.01], 2001 points", w, "margin: bound constant minus observed ratio"));
  }

  // Small-t checks need differences far below double resolution: run them in MPFR.
  {
    PrecisionScope scope(g.high_precision_bits);
    using R = HighReal;
    using CR = Complex<R>;
    const auto base = QuinticRoots<R>::base_points();
    const std::vector<double> small = linspace(0.005 / static_cast<double>(g.small_count), 0.005, g.small_count);
    const std::string small_grid = "t in (0, 0.005], " + std::to_string(g.small_count) + " points";

    Worst taylor2, taylor1, modsq, band, vel, acc, rel;
    std::vector<double> fd_errors;
    for (double td : small) {
      const R t(td);
      auto r = roots_or_abort(t);
      auto all = r.all();
      for (std::size_t k = 0; k < 5; ++k) {
        const CR& rho = all[k];
        const CR& rho0 = base[k];
        const CR lin = rho - rho0 + t / (R(5) * rho0);
        taylor2.see(0.04065 - to_double(abs(lin) / (t * t)), td);
        taylor1.see(0.2009 - to_double(abs(rho - rho0) / t), td);
        const R sq = norm(rho) - 1 - 2 * t / 5 * pow(rho0, 3).re;
        modsq.see(0.13 - to_double(abs(sq) / (t * t)), td);
        const double m = to_double(abs(rho));
        band.see(std::min(m - 0.9990009, 1.0008097 - m), td);
        vel.see(0.2009 - to_double(abs(root_velocity(t, rho))), td);
        acc.see(0.0813 - to_double(abs(root_acceleration(t, rho))), td);
      }
      // (j) exponents of |alpha| and |gamma| relative to |beta|.
      using std::log;
      const R lb = log(abs(r.beta));
      const R x = log(abs(r.alpha)) / lb, y = log(abs(r.gamma)) / lb;
      rel.see(std::min(0.008 - std::abs(to_double(x) + 1.236), 0.005 - std::abs(to_double(y) + 0.382)), td);
    }
    // The band and derivative bounds include t = 0.
    for (std::size_t k = 0; k < 5; ++k) {
      band.see(std::min(1 - 0.9990009, 1.0008097 - 1), 0);
      vel.see(0.2009 - to_double(abs(root_velocity(R(0), base[k]))), 0);
      acc.see(0.0813 - to_double(abs(root_acceleration(R(0), base[k]))), 0);
    }
    // Finite-difference guard on the derivative formulas.
    double fd_worst = 0;
    for (double td : {0.001, 0.0025, 0.005}) {
      const R t(td), h("1e-12");
      auto lo = find_roots(R(t - h)).all(), mid = find_roots(t).all(), hi = find_roots(R(t + h)).all();
      for (std::size_t k = 0; k < 5; ++k) {
        CR d1 = (hi[k] - lo[k]) / (2 * h);
        CR d2 = (hi[k] - 2 * mid[k] + lo[k]) / (h * h);
        fd_worst = std::max(fd_worst, to_double(abs(d1 - root_velocity(t, mid[k]))));
        fd_worst = std::max(fd_worst, to_double(abs(d2 - root_acceleration(t, mid[k]))));
      }
    }

    report.checks.push_back(make("g",
                                 "|rho(t) - rho(0) + t/(5 rho(0))| <= 0.04065 t^2 and |rho(t) - rho(0)| <= 0.2009 t",
                                 small_grid, taylor2.margin < taylor1.margin ? taylor2 : taylor1,
                                 "quadratic margin " + fmt(taylor2.margin) + " (per t^2), linear margin " +
                                     fmt(taylor1.margin) + " (per t)"));
    report.checks.push_back(make("h", "| |rho(t)|^2 - 1 - (2t/5) Re(rho(0)^3) | <= 0.13 t^2", small_grid, modsq,
                                 "margin: 0.13 minus observed ratio to t^2"));
    report.checks.push_back(make("j",
                                 "|alpha| = |beta|^x, x in -1.236 +- 0.008; |gamma| = |beta|^y, y in -0.382 +- 0.005",
                                 small_grid, rel, "margin: smallest slack of either exponent"));
    Worst l = band;
    for (const Worst* o : {&vel, &acc})
      if (o->margin < l.margin) l = *o;
    if (fd_worst > 1e-6) l.see(-fd_worst, 0);
    report.checks.push_back(make("l",
                                 "0.9990009 <= |rho(t)| <= 1.0008097, |rho'(t)| <= 0.2009, |rho''(t)| <= 0.0813 "
                                 "on [0, 0.005]",
                                 "t in [0, 0.005], " + std::to_string(g.small_count + 1) + " points", l,
                                 "band margin " + fmt(band.margin) + ", first-derivative margin " + fmt(vel.margin) +
                                     ", second-derivative margin " + fmt(acc.margin) +
                                     ", finite-difference disagreement " + fmt(fd_worst)));
  }

  std::sort(report.checks.begin(), report.checks.end(), [](auto& x, auto& y) { return x.id < y.id; });
  return report;
}

}  // namespace newman
