#pragma once

#include <cstdint>
#include <vector>

namespace expsum {

// Unsigned binary format with bits of weight 2^{m1} ... 2^{-m2}; a value
// f = sum_i q_i 2^i is held in m1 + m2 + 1 bits.
struct FixedPointFormat {
  int m1;  // highest bit weight is 2^{m1}
  int m2;  // lowest bit weight is 2^{-m2}

  int bit_count() const { return m1 + m2 + 1; }
  double resolution() const;  // 2^{-m2}
  double max_value() const;   // 2^{m1+1} - 2^{-m2}
  void validate() const;      // m1,m2 >= 0 and m1+m2+1 <= 62
};

struct FixedPointValue {
  // bits[i] is the digit of weight 2^{i - m2}: index 0 is the least
  // significant fraction bit, index m1+m2 the top integer bit.
  std::vector<int> bits;
  std::uint64_t scaled;     // value * 2^{m2} as an integer
  double value;             // sum q_i 2^i
  double truncation_error;  // x - value, in [0, 2^{-m2})
};

// Truncates x >= 0 to the format. Throws std::overflow_error when
// x >= 2^{m1+1} and std::domain_error for negative x.
FixedPointValue encode_fixed_point(double x, const FixedPointFormat& fmt);

}  // namespace expsum
