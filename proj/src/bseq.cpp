#include "newman/bseq.hpp"

#include <limits>

namespace newman {

std::optional<LeadingTerm> b_leading(std::size_t n) {
  const std::size_t k = n / 2;
  if (n % 2 == 0) return LeadingTerm{k, k % 2 ? -1 : 1};
  if (k < 3) return std::nullopt;
  const long long m = static_cast<long long>(k - 2);
  return LeadingTerm{k - 2, (k - 1) % 2 ? -m : m};
}

int b_constant(std::size_t n) { return n % 2 == 0 ? 1 : 0; }

ModPoly b_next(const ModPoly& b2, const ModPoly& b5) {
  require_same_modulus(b2, b5);
  const Prime p = b2.modulus();
  const auto& u = b2.coeffs();
  const auto& v = b5.coeffs();
  std::vector<FieldElem> r(std::max<std::size_t>({u.size() + 1, v.size(), 1}), 0);
  r[0] = 1 % p.value();
  for (std::size_t k = 0; k < u.size(); ++k) r[k + 1] = u[k] ? p.value() - u[k] : 0;
  for (std::size_t k = 0; k < v.size(); ++k) r[k] = add_mod(r[k], v[k] ? p.value() - v[k] : 0, p);
  return ModPoly::from_residues(p, std::move(r));
}

IntPoly b_next(const IntPoly& b2, const IntPoly& b5) { return IntPoly::constant(1) - b2.shifted(1) - b5; }

BWindow<ModPoly> b_init(Prime p) {
  return BWindow<ModPoly>({ModPoly(p, {1}), ModPoly(p), ModPoly(p, {1, -1}), ModPoly(p), ModPoly(p, {1, -1, 1})},
                          std::numeric_limits<std::size_t>::max());
}

BWindow<IntPoly> b_init_exact(std::size_t cap) {
  return BWindow<IntPoly>({IntPoly{1}, IntPoly{}, IntPoly{1, -1}, IntPoly{}, IntPoly{1, -1, 1}}, cap);
}

std::vector<IntPoly> exact_sequence(std::size_t last, std::size_t cap) {
  if (last > cap) throw CapacityError("B_n index cap " + std::to_string(cap) + " reached");
  auto w = b_init_exact(cap);
  std::vector<IntPoly> out;
  for (std::size_t m = 0; m <= std::min<std::size_t>(last, 4); ++m) out.push_back(w.at(m));
  while (w.index() < last) {
    w.step();
    out.push_back(w.newest());
  }
  return out;
}

}  // namespace newman
