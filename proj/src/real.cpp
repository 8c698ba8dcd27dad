#include "newman/real.hpp"

#include <cmath>

namespace newman {

namespace {
std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}
}  // namespace

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(unsigned bits)
    : lock_(precision_mutex()), bits_(bits), saved_digits10_(HighReal::default_precision()) {
  HighReal::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { HighReal::default_precision(saved_digits10_); }

}  // namespace newman
