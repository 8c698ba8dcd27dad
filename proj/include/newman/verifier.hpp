#pragma once

#include "newman/bseq.hpp"
#include "newman/modpoly.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace newman {

enum class ClaimKind { Unproven, ProvenModPrime, ProvenCaseAnalysis };

/// Status of the claim "B_{n-2} and B_{n-5} have no common root" for one n.
struct ClaimStatus {
  ClaimKind kind = ClaimKind::Unproven;
  std::uint32_t witness = 0;  // the prime, for ProvenModPrime

  static ClaimStatus unproven() { return {}; }
  static ClaimStatus mod_prime(std::uint32_t p) { return {ClaimKind::ProvenModPrime, p}; }
  static ClaimStatus case_analysis() { return {ClaimKind::ProvenCaseAnalysis, 0}; }
  bool proven() const { return kind != ClaimKind::Unproven; }
  friend bool operator==(const ClaimStatus&, const ClaimStatus&) = default;
};

std::string to_string(const ClaimStatus& s);

inline constexpr std::size_t first_resultant_index = 11;

class ClaimTable {
 public:
  /// Entries 5..max_n; 5..10 start as case-analysis, the rest unproven.
  explicit ClaimTable(std::size_t max_n);

  std::size_t max_n() const { return max_n_; }
  const ClaimStatus& status(std::size_t n) const;
  /// Record a modular proof. Returns false (and changes nothing) if n was already proven.
  bool prove(std::size_t n, std::uint32_t prime);
  std::optional<std::size_t> first_unproven() const;
  std::size_t unproven_count() const;
  bool complete() const { return unproven_count() == 0; }
  /// Largest m such that every claim up to m is proven.
  std::size_t proved_up_to() const;

  /// Union of proofs; when both tables hold a witness the smaller prime is kept.
  void merge(const ClaimTable& other);

  friend bool operator==(const ClaimTable&, const ClaimTable&) = default;

 private:
  std::size_t max_n_;
  std::vector<ClaimStatus> status_;  // index n - 5
};

/// True when p divides the leading coefficient of B_{n-2} or B_{n-5}, in which case
/// reduction mod p does not preserve the resultant. Requires n >= 11.
bool skip_rule(std::size_t n, Prime p);

/// R_{n,p} = Res(B_{n-2} mod p, B_{n-5} mod p) for first_resultant_index <= n <= last,
/// indexed by n; skipped indices are empty.
std::vector<std::optional<FieldElem>> local_resultants(std::size_t last, Prime p);

struct PassSummary {
  std::uint32_t prime = 0;
  std::size_t proved_up_to = 0;
  std::size_t newly_proven = 0;
  std::size_t resultants = 0;
  std::size_t skipped = 0;
  std::size_t zero_resultants = 0;
  double seconds = 0;
  bool from_checkpoint = false;
};

struct VerifyOptions {
  unsigned jobs = 1;
  std::optional<std::filesystem::path> checkpoint;
  std::function<void(const PassSummary&)> on_pass;
};

struct VerifyResult {
  ClaimTable table;
  std::vector<PassSummary> passes;
  bool resumed = false;
};

/// One recurrence pass per prime, in the given (strictly ascending) order; each pass
/// proves the still-unproven, non-skipped n with a nonzero local resultant.
/// An incomplete table is a valid result. Requires max_n >= 5.
VerifyResult verify_range(std::size_t max_n, const std::vector<Prime>& primes, const VerifyOptions& options = {});

/// Exact Res(B_{n-2}, B_{n-5}) from the Sylvester determinant; 11 <= n <= 60.
BigInt verify_exact_small(std::size_t n);

struct BaseCase {
  std::size_t n;
  std::size_t member;   // index m of the polynomial B_m the argument rests on
  IntPoly polynomial;   // B_member
  std::string justification;
  /// Real roots of B_member outside {0, 1}, found by deflating 0 and 1 exactly and
  /// scanning the cofactor for sign changes; the claim needs this to be empty.
  bool recheck_passed;
  double cofactor_min_abs;  // smallest |cofactor| on the scan grid
};

/// The six claims 5 <= n <= 10 settled without resultants.
std::map<std::size_t, BaseCase> base_cases();

}  // namespace newman
