#include "newman/verifier.hpp"

#include "newman/checkpoint.hpp"
#include "newman/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace newman {

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string to_string(const ClaimStatus& s) {
  switch (s.kind) {
    case ClaimKind::Unproven:
      return "unproven";
    case ClaimKind::ProvenModPrime:
      return "proven-mod " + std::to_string(s.witness);
    case ClaimKind::ProvenCaseAnalysis:
      return "case-analysis";
  }
  return "?";
}

// ---------------------------------------------------------------- ClaimTable

ClaimTable::ClaimTable(std::size_t max_n) : max_n_(max_n) {
  if (max_n < 5) throw ContractViolation("claim table needs max_n >= 5");
  status_.resize(max_n - 4);
  for (std::size_t n = 5; n <= std::min<std::size_t>(max_n, 10); ++n) status_[n - 5] = ClaimStatus::case_analysis();
}

const ClaimStatus& ClaimTable::status(std::size_t n) const {
  if (n < 5 || n > max_n_) throw ContractViolation("claim index " + std::to_string(n) + " out of range");
  return status_[n - 5];
}

bool ClaimTable::prove(std::size_t n, std::uint32_t prime) {
  if (n < first_resultant_index || n > max_n_)
    throw ContractViolation("no modular claim for index " + std::to_string(n));
  auto& s = status_[n - 5];
  if (s.proven()) return false;
  s = ClaimStatus::mod_prime(prime);
  return true;
}

std::optional<std::size_t> ClaimTable::first_unproven() const {
  for (std::size_t i = 0; i < status_.size(); ++i)
    if (!status_[i].proven()) return i + 5;
  return std::nullopt;
}

std::size_t ClaimTable::unproven_count() const {
  return static_cast<std::size_t>(std::count_if(status_.begin(), status_.end(), [](auto& s) { return !s.proven(); }));
}

std::size_t ClaimTable::proved_up_to() const {
  auto f = first_unproven();
  return f ? *f - 1 : max_n_;
}

void ClaimTable::merge(const ClaimTable& other) {
  if (other.max_n_ != max_n_) throw ContractViolation("merging claim tables of different ranges");
  for (std::size_t i = 0; i < status_.size(); ++i) {
    const auto& o = other.status_[i];
    auto& s = status_[i];
    if (!o.proven()) continue;
    if (!s.proven() || (s.kind == ClaimKind::ProvenModPrime && o.kind == ClaimKind::ProvenModPrime && o.witness < s.witness))
      s = o;
  }
}

// ---------------------------------------------------------------- passes

bool skip_rule(std::size_t n, Prime p) {
  if (n < first_resultant_index) throw ContractViolation("skip rule is defined for n >= 11");
  const std::size_t k = n / 2;
  return (n % 2 == 0 ? k - 5 : k - 3) % p.value() == 0;
}

namespace {

// Resultants for the given ascending indices, split across workers. Each worker
// runs its own copy of the recurrence, so only the resultants are divided.
std::vector<FieldElem> resultants_for(const std::vector<std::size_t>& indices, Prime p, unsigned jobs) {
  std::vector<FieldElem> out(indices.size(), 0);
  if (indices.empty()) return out;
  jobs = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), indices.size()));
  run_workers(jobs, [&](unsigned w, unsigned total) {
    auto window = b_init(p);
    for (std::size_t i = w; i < indices.size(); i += total) {
      const std::size_t n = indices[i];
      while (window.index() < n - 2) window.step();
      out[i] = resultant_prs(window.at(n - 2), window.at(n - 5));
    }
  });
  return out;
}

}  // namespace

std::vector<std::optional<FieldElem>> local_resultants(std::size_t last, Prime p) {
  std::vector<std::optional<FieldElem>> out(last + 1);
  std::vector<std::size_t> indices;
  for (std::size_t n = first_resultant_index; n <= last; ++n)
    if (!skip_rule(n, p)) indices.push_back(n);
  auto values = resultants_for(indices, p, 1);
  for (std::size_t i = 0; i < indices.size(); ++i) out[indices[i]] = values[i];
  return out;
}

VerifyResult verify_range(std::size_t max_n, const std::vector<Prime>& primes, const VerifyOptions& options) {
  if (primes.empty()) throw ContractViolation("at least one prime is required");
  for (std::size_t i = 1; i < primes.size(); ++i)
    if (!(primes[i - 1] < primes[i])) throw ContractViolation("primes must be strictly ascending");

  VerifyResult result{ClaimTable(max_n), {}, false};
  ClaimTable& table = result.table;

  CheckpointHeader header{max_n, {}};
  for (auto p : primes) header.primes.push_back(p.value());

  std::map<std::uint32_t, std::size_t> finished;
  std::optional<CheckpointWriter> writer;
  if (options.checkpoint) {
    const auto& path = *options.checkpoint;
    if (std::filesystem::exists(path)) {
      auto contents = read_checkpoint(path);
      if (!(contents.header == header))
        throw CheckpointMismatch("checkpoint " + path.string() + " was written for different max_n or primes");
      std::set<std::uint32_t> known(header.primes.begin(), header.primes.end());
      for (const auto& [n, s] : contents.claims) {
        if (s.kind == ClaimKind::ProvenModPrime) {
          if (!known.count(s.witness) || n < first_resultant_index || n > max_n)
            throw CheckpointMismatch("checkpoint claim for n = " + std::to_string(n) + " is inconsistent");
          table.prove(n, s.witness);
        }
      }
      for (const auto& [p, upto] : contents.passes) finished[p] = upto;
      writer = CheckpointWriter::append(path);
      result.resumed = true;
    } else {
      writer = CheckpointWriter::create(path, header);
      for (std::size_t n = 5; n <= std::min<std::size_t>(max_n, 10); ++n) writer->claim(n, table.status(n));
      writer->flush();
    }
  }

  for (auto p : primes) {
    PassSummary summary;
    summary.prime = p.value();
    if (auto it = finished.find(p.value()); it != finished.end()) {
      summary.proved_up_to = it->second;
      summary.from_checkpoint = true;
      result.passes.push_back(summary);
      if (options.on_pass) options.on_pass(summary);
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::size_t> indices;
    for (std::size_t n = first_resultant_index; n <= max_n; ++n) {
      if (table.status(n).proven()) continue;
      if (skip_rule(n, p)) {
        ++summary.skipped;
        continue;
      }
      indices.push_back(n);
    }
    auto values = resultants_for(indices, p, options.jobs);
    summary.resultants = indices.size();
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (values[i] == 0) {
        ++summary.zero_resultants;
        continue;
      }
      table.prove(indices[i], p.value());
      ++summary.newly_proven;
      if (writer) writer->claim(indices[i], table.status(indices[i]));
    }
    summary.proved_up_to = table.proved_up_to();
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (writer) {
      writer->pass_done(p.value(), summary.proved_up_to);
      writer->flush();
    }
    result.passes.push_back(summary);
    if (options.on_pass) options.on_pass(summary);
  }
  return result;
}

BigInt verify_exact_small(std::size_t n) {
  if (n < first_resultant_index || n > 60)
    throw CapacityError("exact resultant oracle supports 11 <= n <= 60, got " + std::to_string(n));
  auto seq = exact_sequence(n - 2);
  return resultant_sylvester(seq[n - 2], seq[n - 5]);
}

// ---------------------------------------------------------------- base cases

namespace {

// Divide by (t - r) for r in {0, 1} as long as it is a root; the quotient stays integral.
IntPoly deflate(IntPoly f, long long r) {
  while (!f.is_zero() && f.degree() > Degree(0) && f.eval(BigInt(r)) == 0) {
    const std::size_t d = f.degree().value();
    std::vector<BigInt> q(d);
    BigInt carry = 0;
    for (std::size_t k = d; k >= 1; --k) {
      carry = f.coeff(k) + carry * r;
      q[k - 1] = carry;
    }
    f = IntPoly(std::move(q));
  }
  return f;
}

}  // namespace

std::map<std::size_t, BaseCase> base_cases() {
  const auto b = exact_sequence(8);
  struct Entry {
    std::size_t n, member;
    const char* reason;
  };
  const Entry entries[] = {
      {5, 0, "does not vanish anywhere"},       {6, 4, "has no real roots"},
      {7, 2, "vanishes only at t = 1"},         {8, 6, "has t = 1 as its only real root"},
      {9, 4, "has no real roots"},              {10, 8, "has no real roots"},
  };
  std::map<std::size_t, BaseCase> out;
  for (const auto& e : entries) {
    BaseCase c{e.n, e.member, b[e.member], {}, false, 0};
    const std::string role = e.member == e.n - 2 ? "B_{n-2}" : "B_{n-5}";
    c.justification = role + " = B_" + std::to_string(e.member) + " = " + b[e.member].to_string() + " " + e.reason;

    IntPoly q = deflate(deflate(b[e.member], 0), 1);
    if (q.degree() == Degree(0)) {
      c.cofactor_min_abs = std::abs(q.coeff(0).convert_to<double>());
      c.recheck_passed = true;
    } else {
      // Every real root lies in [-R, R] with R the Cauchy bound.
      const double lead = std::abs(q.leading().convert_to<double>());
      double bound = 0;
      for (const auto& v : q.coeffs()) bound = std::max(bound, std::abs(v.convert_to<double>()) / lead);
      bound += 1;
      const int steps = 200000;
      double min_abs = INFINITY;
      bool same_sign = true;
      const double first = q.eval(-bound);
      for (int i = 0; i <= steps; ++i) {
        const double t = -bound + 2 * bound * i / steps;
        const double v = q.eval(t);
        min_abs = std::min(min_abs, std::abs(v));
        if (v == 0 || (v > 0) != (first > 0)) same_sign = false;
      }
      c.cofactor_min_abs = min_abs;
      c.recheck_passed = same_sign && min_abs > 0;
    }
    out.emplace(e.n, std::move(c));
  }
  return out;
}

}  // namespace newman
