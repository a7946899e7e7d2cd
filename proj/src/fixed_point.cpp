#include "expsum/fixed_point.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace expsum {

double FixedPointFormat::resolution() const { return std::ldexp(1.0, -m2); }

double FixedPointFormat::max_value() const {
  return std::ldexp(1.0, m1 + 1) - resolution();
}

void FixedPointFormat::validate() const {
  if (m1 < 0 || m2 < 0 || m1 + m2 + 1 > 62) {
    throw std::domain_error("fixed point format out of range (m1=" +
                            std::to_string(m1) + ", m2=" + std::to_string(m2) +
                            ")");
  }
}

FixedPointValue encode_fixed_point(double x, const FixedPointFormat& fmt) {
  fmt.validate();
  if (!(x >= 0.0)) {
    throw std::domain_error("fixed point encode requires x >= 0");
  }
  double scaled_real = std::ldexp(x, fmt.m2);
  auto scaled = static_cast<std::uint64_t>(std::floor(scaled_real));
  // floor(x * 2^m2) computed in floating point can land one step high when
  // the product rounds up across an integer; correct for it.
  while (scaled > 0 && std::ldexp(static_cast<double>(scaled), -fmt.m2) > x) {
    --scaled;
  }
  if (scaled >> fmt.bit_count() != 0) {
    throw std::overflow_error("value " + std::to_string(x) +
                              " does not fit m1=" + std::to_string(fmt.m1));
  }
  FixedPointValue out;
  out.scaled = scaled;
  out.bits.resize(fmt.bit_count());
  for (int i = 0; i < fmt.bit_count(); ++i) {
    out.bits[i] = static_cast<int>((scaled >> i) & 1u);
  }
  out.value = std::ldexp(static_cast<double>(scaled), -fmt.m2);
  out.truncation_error = x - out.value;
  return out;
}

}  // namespace expsum
