#pragma once

#include "newman/modpoly.hpp"

#include <array>
#include <optional>
#include <vector>

namespace newman {

/// Degree and leading coefficient of B_n given by the closed-form law.
struct LeadingTerm {
  std::size_t degree;
  long long coefficient;
  friend bool operator==(const LeadingTerm&, const LeadingTerm&) = default;
};

/// Leading term of B_n; empty for n in {1, 3, 5} where B_n = 0 and the law does not apply.
std::optional<LeadingTerm> b_leading(std::size_t n);

/// B_n(0): 1 for even n, 0 for odd n.
int b_constant(std::size_t n);

/// The last five members B_{n-4}..B_n of the sequence
///   B_0 = 1, B_1 = 0, B_2 = 1 - t, B_3 = 0, B_4 = 1 - t + t^2,
///   B_n = 1 - t B_{n-2} - B_{n-5},
/// either reduced mod p (Poly = ModPoly) or exact (Poly = IntPoly).
template <class Poly>
class BWindow {
 public:
  BWindow(std::array<Poly, 5> initial, std::size_t cap) : slots_(std::move(initial)), cap_(cap) {}

  std::size_t index() const { return index_; }
  /// B_m for index()-4 <= m <= index().
  const Poly& at(std::size_t m) const {
    if (m > index_ || m + 4 < index_) throw ContractViolation("B_" + std::to_string(m) + " is not in the window");
    return slots_[m % 5];
  }
  const Poly& newest() const { return slots_[index_ % 5]; }

  /// Advance to B_{index()+1}; throws CapacityError past the configured cap.
  void step();

 private:
  std::array<Poly, 5> slots_;  // B_m lives in slot m % 5
  std::size_t index_ = 4;
  std::size_t cap_;
};

inline constexpr std::size_t exact_index_cap = 200;

BWindow<ModPoly> b_init(Prime p);
BWindow<IntPoly> b_init_exact(std::size_t cap = exact_index_cap);

template <class Poly>
BWindow<Poly> b_step(BWindow<Poly> w) {
  w.step();
  return w;
}

/// 1 - t*b2 - b5, the recurrence step on explicit arguments.
ModPoly b_next(const ModPoly& b2, const ModPoly& b5);
IntPoly b_next(const IntPoly& b2, const IntPoly& b5);

/// B_0..B_last exactly (last <= cap).
std::vector<IntPoly> exact_sequence(std::size_t last, std::size_t cap = exact_index_cap);

template <class Poly>
void BWindow<Poly>::step() {
  const std::size_t n = index_ + 1;
  if (n > cap_) throw CapacityError("B_n index cap " + std::to_string(cap_) + " reached");
  slots_[n % 5] = b_next(slots_[(n - 2) % 5], slots_[n % 5]);
  index_ = n;
}

}  // namespace newman
