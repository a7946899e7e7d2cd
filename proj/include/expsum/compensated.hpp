#pragma once

#include <cmath>
#include <complex>

namespace expsum {

// Neumaier-compensated accumulator: keeps long sums accurate to ~1 ulp of
// the result regardless of term count or cancellation order.
struct Compensated {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double total() const { return sum + comp; }
};

struct CompensatedComplex {
  Compensated re, im;

  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> total() const { return {re.total(), im.total()}; }
};

}  // namespace expsum
