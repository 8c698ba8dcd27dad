// Command-line front end. Every run prints one JSON document on stdout and a
// short human summary on stderr. Exit codes: 0 outcome confirmed, 1 outcome not
// confirmed, 2 usage, I/O or domain error.

#include "newman/analytic.hpp"
#include "newman/errors.hpp"
#include "newman/parallel.hpp"
#include "newman/search.hpp"
#include "newman/simulate.hpp"
#include "newman/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef NEWMAN_VERSION
#define NEWMAN_VERSION "0.0.0"
#endif

using nlohmann::json;
using namespace newman;

namespace {

constexpr int kConfirmed = 0;
constexpr int kNotConfirmed = 1;
constexpr int kUsage = 2;

struct Outcome {
  json result;
  bool confirmed = false;
  std::string summary;
};

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json complex_json(const Complex<double>& z) {
  return {{"re", z.re}, {"im", z.im}, {"abs", abs(z)}, {"arg", arg(z)}};
}

// "2,3,5" or "2..17" or a mix such as "2..7,11".
std::vector<Prime> parse_primes(const std::string& text) {
  std::vector<Prime> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.emplace_back(static_cast<std::uint32_t>(std::stoul(item)));
      } else {
        const auto lo = std::stoul(item.substr(0, dots)), hi = std::stoul(item.substr(dots + 2));
        for (auto p : primes_up_to(static_cast<std::uint32_t>(hi)))
          if (p.value() >= lo) out.push_back(p);
      }
    } catch (const std::invalid_argument&) {
      throw DomainError("cannot parse prime list entry '" + item + "'");
    } catch (const std::out_of_range&) {
      throw DomainError("prime list entry out of range '" + item + "'");
    }
  }
  if (out.empty()) throw DomainError("empty prime list");
  return out;
}

// Complex numbers as "re" or "re:im", comma separated.
std::vector<Complex<double>> parse_nodes(const std::string& text) {
  std::vector<Complex<double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      const auto colon = item.find(':');
      if (colon == std::string::npos) out.emplace_back(std::stod(item));
      else out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw DomainError("cannot parse node '" + item + "'");
    }
  }
  if (out.empty()) throw DomainError("empty node list");
  return out;
}

// ------------------------------------------------------------------ subcommands

struct VerifyArgs {
  std::size_t max_n = 10000;
  std::string primes = "2..17";
  std::string checkpoint;
};

Outcome run_verify(const VerifyArgs& args, unsigned jobs, json& params) {
  const auto primes = parse_primes(args.primes);
  json plist = json::array();
  for (auto p : primes) plist.push_back(p.value());
  params = {{"max_n", args.max_n}, {"primes", plist}, {"checkpoint", args.checkpoint}, {"jobs", jobs}};

  VerifyOptions opt;
  opt.jobs = jobs;
  if (!args.checkpoint.empty()) opt.checkpoint = args.checkpoint;
  opt.on_pass = [](const PassSummary& s) {
    std::cerr << "  p = " << s.prime << ": proved up to " << s.proved_up_to << " (+" << s.newly_proven << ", "
              << s.skipped << " skipped, " << s.zero_resultants << " zero)"
              << (s.from_checkpoint ? " [checkpoint]" : "") << "  " << s.seconds << " s\n";
  };
  auto res = verify_range(args.max_n, primes, opt);
  const auto& table = res.table;

  Outcome o;
  json passes = json::array();
  for (auto& s : res.passes)
    passes.push_back({{"prime", s.prime},
                      {"proved_up_to", s.proved_up_to},
                      {"newly_proven", s.newly_proven},
                      {"resultants", s.resultants},
                      {"skipped", s.skipped},
                      {"zero_resultants", s.zero_resultants},
                      {"from_checkpoint", s.from_checkpoint}});
  // Witnesses as runs of consecutive n sharing one.
  json runs = json::array();
  std::map<std::string, std::size_t> counts;
  for (std::size_t n = 5; n <= table.max_n(); ++n) {
    const std::string w = to_string(table.status(n));
    ++counts[w];
    if (!runs.empty() && runs.back()["witness"] == w && runs.back()["to"] == n - 1) runs.back()["to"] = n;
    else runs.push_back({{"from", n}, {"to", n}, {"witness", w}});
  }
  json bases = json::array();
  for (auto& [n, bc] : base_cases())
    bases.push_back({{"n", n}, {"member", bc.member}, {"polynomial", bc.polynomial.to_string()},
                     {"recheck_passed", bc.recheck_passed}});
  const auto first = table.first_unproven();
  o.result = {{"complete", table.complete()},
              {"proved_up_to", table.proved_up_to()},
              {"unproven_count", table.unproven_count()},
              {"first_unproven", first ? json(*first) : json(nullptr)},
              {"resumed", res.resumed},
              {"passes", passes},
              {"witness_counts", counts},
              {"witnesses", runs},
              {"base_cases", bases}};
  o.confirmed = table.complete();
  std::ostringstream s;
  s << "verify-resultants: claims 5.." << args.max_n << (o.confirmed ? " all proven" : " NOT all proven")
    << ", proved up to " << table.proved_up_to();
  if (first) s << ", first unproven n = " << *first;
  o.summary = s.str();
  return o;
}

struct SimArgs {
  double a = 0;
  std::size_t max_n = SimConfig{}.max_n;
  std::string mode = "all-ones";
  std::string trace;
  unsigned precision = 53;
  std::size_t window = SimConfig{}.window_half_width;
};

json profile_json(const std::array<double, 15>& v) { return std::vector<double>(v.begin(), v.end()); }

Outcome run_simulate(const SimArgs& args, json& params) {
  params = {{"a", args.a}, {"max_n", args.max_n}, {"mode", args.mode}, {"trace", args.trace},
            {"precision", args.precision}, {"window_half_width", args.window}};
  if (!(args.a > 0 && args.a < 1)) throw DomainError("a must lie in (0, 1)");
  SimConfig cfg;
  cfg.a = args.a;
  cfg.max_n = args.max_n;
  cfg.precision_bits = args.precision;
  cfg.window_half_width = args.window;
  cfg.validate();

  std::ofstream trace_file;
  TraceSink sink;
  if (!args.trace.empty()) {
    trace_file.open(args.trace);
    if (!trace_file) throw IoError("cannot write trace " + args.trace);
    write_trace_header(trace_file);
    sink = trace_writer(trace_file);
  }

  Outcome o;
  if (args.mode == "all-ones") {
    auto out = run_all_ones(cfg, sink);
    json r = {{"mode", "all-ones"}, {"error_bound", out.error_bound}, {"precision_bits", out.precision_bits},
              {"description", describe(out)}};
    if (auto* v = std::get_if<NegativeCoefficient>(&out.kind))
      r["outcome"] = {{"kind", "negative-coefficient"}, {"n", v->n}, {"value", v->value}};
    else if (auto* v = std::get_if<ExceedsOne>(&out.kind))
      r["outcome"] = {{"kind", "exceeds-one"}, {"n", v->n}, {"value", v->value}};
    else if (auto* v = std::get_if<NoViolationUpTo>(&out.kind))
      r["outcome"] = {{"kind", "no-violation"}, {"max_n", v->max_n}};
    o.result = r;
    o.confirmed = found_violation(out);
    o.summary = "simulate all-ones a = " + std::to_string(args.a) + ": " + describe(out);
  } else if (args.mode == "counterfactual") {
    if (args.a > 0.005) throw DomainError("counterfactual mode requires a <= 0.005");
    auto rep = counterfactual_run(cfg, sink);
    std::vector<int> c(rep.c.begin(), rep.c.end());
    o.result = {{"mode", "counterfactual"},
                {"N", rep.N},
                {"estimate", rep.estimate},
                {"estimate_printed", rep.estimate_printed},
                {"window", {rep.window_lo, rep.window_hi}},
                {"residual_before", rep.residual_before},
                {"residual_y_nm2", rep.residual_y_nm2},
                {"residual_y_np1", rep.residual_y_np1},
                {"correction", rep.correction},
                {"offsets", {-6, 8}},
                {"b", profile_json(rep.b)},
                {"y", profile_json(rep.y)},
                {"d", profile_json(rep.d)},
                {"c", c},
                {"b_N_plus_8", rep.b[14]},
                {"b_N_plus_8_unconditioned", rep.b8_unconditioned},
                {"y_N_plus_4", rep.y_N_plus_4},
                {"b8_consistency", b8_consistency(rep)},
                {"conservation_max", rep.conservation_max},
                {"error_bound", rep.error_bound},
                {"precision_bits", rep.precision_bits},
                {"description", describe(rep.outcome)}};
    o.confirmed = found_violation(rep.outcome);
    std::ostringstream s;
    s << "simulate counterfactual a = " << args.a << ": N = " << rep.N << " (estimate " << rep.estimate
      << "), b_{N+8} = " << rep.b[14];
    o.summary = s.str();
  } else {
    throw DomainError("mode must be all-ones or counterfactual");
  }
  return o;
}

Outcome run_roots(double t, unsigned precision, json& params) {
  params = {{"t", t}, {"precision", precision}};
  if (!(t >= 0)) throw DomainError("t must be nonnegative");
  Outcome o;
  auto emit = [&](const auto& r) {
    using Real = std::decay_t<decltype(r.alpha)>;
    auto text = [](const Real& x) {
      std::ostringstream s;
      s.precision(std::numeric_limits<double>::max_digits10);
      if constexpr (!std::is_same_v<Real, double>) s.precision(x.precision());
      s << x;
      return s.str();
    };
    auto cj = [&](const Complex<Real>& z) {
      auto j = complex_json(Complex<double>(to_double(z.re), to_double(z.im)));
      j["re_text"] = text(z.re);
      j["im_text"] = text(z.im);
      return j;
    };
    double residual = 0;
    for (auto& z : r.all()) residual = std::max(residual, to_double(abs(quintic_value(r.t, z))));
    o.result = {{"alpha", cj(Complex<Real>(r.alpha))},
                {"beta", cj(r.beta)},
                {"gamma", cj(r.gamma)},
                {"max_residual", residual},
                {"tolerance", to_double(r.tol)},
                {"precision_bits", precision}};
    std::ostringstream s;
    s << "roots t = " << t << ": alpha = " << to_double(r.alpha) << ", |beta| = " << to_double(abs(r.beta))
      << ", |gamma| = " << to_double(abs(r.gamma));
    o.summary = s.str();
  };
  if (precision <= 53) {
    emit(find_roots(t));
  } else {
    PrecisionScope scope(precision);
    emit(find_roots(HighReal(t)));
  }
  o.confirmed = true;
  return o;
}

Outcome run_estimates(const std::string& grid_text, json& params) {
  const auto grid = GridSpec::parse(grid_text);
  params = {{"grid", grid.to_string()}};
  auto rep = check_estimates(grid);
  Outcome o;
  json checks = json::array();
  std::ostringstream s;
  s << "estimates (" << grid.to_string() << "):";
  for (auto& c : rep.checks) {
    checks.push_back({{"id", c.id},
                      {"statement", c.statement},
                      {"grid", c.grid},
                      {"worst_margin", c.worst_margin},
                      {"worst_at", c.worst_at},
                      {"pass", c.pass},
                      {"detail", c.detail}});
    s << "\n  (" << c.id << ") " << (c.pass ? "pass" : "FAIL") << "  margin " << c.worst_margin << " at "
      << c.worst_at;
  }
  o.result = {{"checks", checks}, {"all_pass", rep.all_pass()}};
  o.confirmed = rep.all_pass();
  o.summary = s.str();
  return o;
}

Outcome run_vandermonde(const std::string& nodes_text, const std::optional<double>& quintic_t, json& params) {
  std::vector<Complex<double>> nodes;
  if (quintic_t) {
    if (!nodes_text.empty()) throw DomainError("give either --nodes or --quintic, not both");
    params = {{"quintic_t", *quintic_t}};
    auto r = find_roots(*quintic_t);
    auto all = r.all();
    nodes.assign(all.begin(), all.end());
  } else {
    params = {{"nodes", nodes_text}};
    nodes = parse_nodes(nodes_text);
  }
  auto v = vandermonde_matrix(nodes);
  auto inv = vandermonde_inverse(nodes);
  const double right = identity_defect(v, inv), left = identity_defect(inv, v);
  constexpr double kLimit = 1e-10;
  Outcome o;
  json nj = json::array();
  for (auto& z : nodes) nj.push_back({{"re", z.re}, {"im", z.im}});
  o.result = {{"nodes", nj}, {"defect_v_vinv", right}, {"defect_vinv_v", left}, {"limit", kLimit},
              {"pass", right <= kLimit}};
  o.confirmed = right <= kLimit;
  std::ostringstream s;
  s << "vandermonde-check: " << nodes.size() << " nodes, |V Vinv - I|_inf = " << right;
  o.summary = s.str();
  return o;
}

Outcome run_search(int max_degree, double tol, unsigned jobs, json& params) {
  params = {{"max_degree", max_degree}, {"tol", tol}, {"jobs", jobs}};
  auto rep = scan(max_degree, tol, jobs, [](const DegreeSummary& d) {
    std::cerr << "  degree " << d.degree << ": " << d.polynomials << " polynomials, " << d.splits << " splits, "
              << d.unfair << " unfair, " << d.indeterminate << " indeterminate\n";
  });
  Outcome o;
  json degrees = json::array();
  for (auto& d : rep.degrees)
    degrees.push_back({{"degree", d.degree},
                       {"polynomials", d.polynomials},
                       {"fair_only", d.fair_only},
                       {"unfair", d.unfair},
                       {"indeterminate", d.indeterminate},
                       {"residual_indeterminate", d.residual_indeterminate},
                       {"splits", d.splits}});
  json findings = json::array();
  for (auto& f : rep.findings)
    findings.push_back({{"degree", f.r.degree},
                        {"mask", f.r.bits},
                        {"polynomial", f.r.to_string()},
                        {"subset", f.subset},
                        {"classification", to_string(f.classification)},
                        {"offending", f.offending},
                        {"margin", f.margin},
                        {"min_coeff", f.min_coeff},
                        {"max_deviation", f.max_deviation},
                        {"p", f.p_coeffs},
                        {"q", f.q_coeffs},
                        {"precision_bits", f.precision_bits}});
  o.result = {{"degrees", degrees},
              {"unfair", rep.unfair},
              {"indeterminate", rep.indeterminate},
              {"residual_indeterminate", rep.residual_indeterminate},
              {"findings", findings}};
  o.confirmed = rep.confirmed();
  o.summary = "search up to degree " + std::to_string(max_degree) + ": " + std::to_string(rep.unfair) + " unfair, " +
              std::to_string(rep.residual_indeterminate) + " residual indeterminate";
  return o;
}

Outcome run_estimate_n(double a, json& params) {
  params = {{"a", a}};
  Outcome o;
  const double est = estimate_N(a), printed = estimate_N_printed(a);
  json argmin = nullptr;
  try {
    SimConfig cfg;
    cfg.a = a;
    argmin = counterfactual_run(cfg).N;
  } catch (const NoCandidateN&) {
  }
  o.result = {{"estimate", est}, {"estimate_rounded", std::llround(est)}, {"estimate_printed", printed},
              {"estimate_printed_rounded", std::llround(printed)}, {"argmin_N", argmin}};
  o.confirmed = true;
  std::ostringstream s;
  s << "estimate-N a = " << a << ": " << est << " (cos(pi/10) variant " << printed << ")";
  if (!argmin.is_null()) s << ", argmin N = " << argmin.get<std::size_t>();
  o.summary = s.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resultant verification, coefficient simulation and factorization search for 0-1 polynomials"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(NEWMAN_VERSION));
  unsigned jobs = default_jobs();
  app.add_option("--jobs", jobs, "Worker threads (default: logical cores)")->check(CLI::Range(1u, 1024u));

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify-resultants", "Prove the resultant claims n <= max-n modulo primes");
  cmd_verify->add_option("--max-n", verify.max_n, "Largest n")->capture_default_str()->check(CLI::Range(5, 10000000));
  cmd_verify->add_option("--primes", verify.primes, "Primes, e.g. 2,3,5 or 2..17")->capture_default_str();
  cmd_verify->add_option("--checkpoint", verify.checkpoint, "Claims file to resume from and append to");

  SimArgs sim;
  auto* cmd_sim = app.add_subcommand("simulate", "Coefficient recurrence with all c_k = 1 or one counterfactual zero");
  cmd_sim->add_option("--a", sim.a, "Parameter a in (0, 1)")->required();
  cmd_sim->add_option("--max-n", sim.max_n, "Last index")->capture_default_str();
  cmd_sim->add_option("--mode", sim.mode, "all-ones | counterfactual")->capture_default_str();
  cmd_sim->add_option("--trace", sim.trace, "Write a per-index trace to this file");
  cmd_sim->add_option("--precision", sim.precision, "Working precision in bits")->capture_default_str();
  cmd_sim->add_option("--window", sim.window, "Half width of the counterfactual index window")->capture_default_str();

  double roots_t = 0;
  unsigned roots_precision = 53;
  auto* cmd_roots = app.add_subcommand("roots", "Roots of x^5 + t x^3 + 1");
  cmd_roots->add_option("--t", roots_t, "Parameter t >= 0")->required();
  cmd_roots->add_option("--precision", roots_precision, "Working precision in bits")->capture_default_str();

  std::string grid = "default";
  auto* cmd_est = app.add_subcommand("estimates", "Sampled estimate battery");
  cmd_est->add_option("--grid", grid, "default or key=value list")->capture_default_str();

  std::string nodes;
  std::optional<double> quintic_t;
  auto* cmd_vdm = app.add_subcommand("vandermonde-check", "Explicit Vandermonde inverse against the matrix");
  cmd_vdm->add_option("--nodes", nodes, "Nodes re or re:im, comma separated");
  cmd_vdm->add_option("--quintic", quintic_t, "Use the roots of x^5 + t x^3 + 1 at this t");

  int max_degree = 12;
  double tol = kDefaultSearchTol;
  auto* cmd_search = app.add_subcommand("search", "Unfair factorizations of 0-1 polynomials");
  cmd_search->add_option("--max-degree", max_degree, "Largest degree")->capture_default_str();
  cmd_search->add_option("--tol", tol, "Classification tolerance")->capture_default_str();

  double est_a = 0;
  auto* cmd_estn = app.add_subcommand("estimate-N", "Leading-order counterfactual index");
  cmd_estn->add_option("--a", est_a, "Parameter a in (0, 0.005]")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  json params;
  Outcome out;
  std::string name;
  try {
    if (*cmd_verify) out = run_verify(verify, jobs, params), name = "verify-resultants";
    else if (*cmd_sim) out = run_simulate(sim, params), name = "simulate";
    else if (*cmd_roots) out = run_roots(roots_t, roots_precision, params), name = "roots";
    else if (*cmd_est) out = run_estimates(grid, params), name = "estimates";
    else if (*cmd_vdm) out = run_vandermonde(nodes, quintic_t, params), name = "vandermonde-check";
    else if (*cmd_search) out = run_search(max_degree, tol, jobs, params), name = "search";
    else if (*cmd_estn) out = run_estimate_n(est_a, params), name = "estimate-N";
  } catch (const NoCandidateN& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotConfirmed;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNotConfirmed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string canonical = out.result.dump();
  json report = {{"manifest",
                  {{"subcommand", name},
                   {"parameters", params},
                   {"version", NEWMAN_VERSION},
                   {"duration_seconds", seconds},
                   {"digest", "fnv1a64:" + hex64(fnv1a64(canonical))}}},
                 {"confirmed", out.confirmed},
                 {"result", out.result}};
  std::cout << report.dump(2) << "\n";
  std::cerr << out.summary << "\n" << (out.confirmed ? "confirmed" : "not confirmed") << " (" << seconds << " s)\n";
  return out.confirmed ? kConfirmed : kNotConfirmed;
}
