#include "newman/analytic.hpp"

#include <cmath>

namespace newman {

namespace {
double leading_term(double a, double angle) {
  if (!(a > 0 && a <= 0.005)) throw DomainError("N estimate is defined for 0 < a <= 0.005");
  return 5.0 / std::cos(angle) / a * std::log(2.5 / a);
}
}  // namespace

double estimate_N(double a) { return leading_term(a, M_PI / 5); }

double estimate_N_printed(double a) { return leading_term(a, M_PI / 10); }

}  // namespace newman
