#include "expsum/func_rotation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace expsum {

namespace {
constexpr double kPi = std::numbers::pi;
}

double Polynomial::eval(double x) const {
  validate();
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

void Polynomial::validate() const {
  if (coefficients.empty()) {
    throw std::domain_error("polynomial needs at least one coefficient");
  }
}

double canonical_rotation_value(double v, double scale) {
  if (scale == 0.0) return v;
  double period = 2.0 * kPi / std::abs(scale);
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;  // fmod rounding at the boundary
  return r;
}

Circuit rotation_ladder_circuit(const std::vector<int>& reg,
                                const FixedPointFormat& fmt, int ancilla,
                                double t) {
  fmt.validate();
  if (static_cast<int>(reg.size()) != fmt.bit_count()) {
    throw std::domain_error("register size does not match format");
  }
  Circuit c;
  c.n_qubits = ancilla + 1;
  for (int q : reg) {
    if (q == ancilla) throw std::domain_error("ancilla overlaps register");
    c.n_qubits = std::max(c.n_qubits, q + 1);
  }
  for (std::size_t i = 0; i < reg.size(); ++i) {
    double weight = std::ldexp(1.0, static_cast<int>(i) - fmt.m2);
    c.add(Gate::rotation(weight * t, ancilla)
              .with_controls({Control{reg[i], true}}));
  }
  return c;
}

void apply_rotation_ladder(StateVector& state, const std::vector<int>& reg,
                           const FixedPointFormat& fmt, int ancilla,
                           double t) {
  rotation_ladder_circuit(reg, fmt, ancilla, t).apply(state);
}

std::map<std::uint64_t, double> monomial_expansion(
    const Polynomial& poly, const FixedPointFormat& fmt) {
  poly.validate();
  fmt.validate();
  int bits = fmt.bit_count();
  std::map<std::uint64_t, double> total;
  // Powers of x = sum_i 2^{i-m2} q_i expanded iteratively; q^2 = q merges
  // repeated factors into the same support mask.
  std::map<std::uint64_t, double> power{{0, 1.0}};
  for (std::size_t p = 0; p < poly.coefficients.size(); ++p) {
    double coef = poly.coefficients[p];
    if (coef != 0.0) {
      for (const auto& [mask, c] : power) total[mask] += coef * c;
    }
    if (p + 1 == poly.coefficients.size()) break;
    std::map<std::uint64_t, double> next;
    for (const auto& [mask, c] : power) {
      for (int i = 0; i < bits; ++i) {
        next[mask | (std::uint64_t{1} << i)] +=
            c * std::ldexp(1.0, i - fmt.m2);
      }
    }
    power = std::move(next);
  }
  return total;
}

Circuit polynomial_rotation_circuit(const std::vector<int>& reg,
                                    const FixedPointFormat& fmt, int ancilla,
                                    const Polynomial& poly, double t) {
  if (static_cast<int>(reg.size()) != fmt.bit_count()) {
    throw std::domain_error("register size does not match format");
  }
  Circuit c;
  c.n_qubits = ancilla + 1;
  for (int q : reg) {
    if (q == ancilla) throw std::domain_error("ancilla overlaps register");
    c.n_qubits = std::max(c.n_qubits, q + 1);
  }
  for (const auto& [mask, coef] : monomial_expansion(poly, fmt)) {
    if (coef == 0.0) continue;
    std::vector<Control> controls;
    for (std::size_t i = 0; i < reg.size(); ++i) {
      if ((mask >> i) & 1u) controls.push_back(Control{reg[i], true});
    }
    c.add(Gate::rotation(coef * t, ancilla).with_controls(std::move(controls)));
  }
  return c;
}

void apply_polynomial_rotation(StateVector& state, const std::vector<int>& reg,
                               const FixedPointFormat& fmt, int ancilla,
                               const Polynomial& poly, double t) {
  polynomial_rotation_circuit(reg, fmt, ancilla, poly, t).apply(state);
}

ConditionedRotation conditioned_rotation_circuit(
    const std::function<double(std::uint64_t)>& value, int n,
    const FixedPointFormat& fmt, double scale, UfPath path) {
  fmt.validate();
  if (n < 1) throw std::domain_error("need at least one register qubit");
  int ancilla = n;

  ConditionedRotation out;
  out.ancilla = ancilla;
  out.max_truncation_error = 0.0;

  auto truncated = [value, fmt, scale](std::uint64_t k) {
    return encode_fixed_point(canonical_rotation_value(value(k), scale), fmt);
  };
  std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t k = 0; k < dim; ++k) {
    out.max_truncation_error =
        std::max(out.max_truncation_error, truncated(k).truncation_error);
  }

  std::vector<int> reg(n);
  for (int i = 0; i < n; ++i) reg[i] = i;

  if (path == UfPath::Direct) {
    out.circuit.n_qubits = n + 1;
    out.circuit.add(RotationOp{
        reg, ancilla,
        [truncated, scale](std::uint64_t k) {
          return scale * truncated(k).value;
        },
        {}});
    return out;
  }

  // HelperLadder: XOR the encoded value into a helper register above the
  // ancilla, run the bit ladder, uncompute.
  int bits = fmt.bit_count();
  out.helper.resize(bits);
  for (int i = 0; i < bits; ++i) out.helper[i] = n + 1 + i;
  out.circuit.n_qubits = n + 1 + bits;

  XorOp compute{reg, out.helper,
                [truncated](std::uint64_t k) { return truncated(k).scaled; },
                {}};
  out.circuit.add(compute);
  out.circuit.append(rotation_ladder_circuit(out.helper, fmt, ancilla, scale));
  out.circuit.add(compute);
  return out;
}

ConditionedRotation build_uf(const std::function<double(std::uint64_t)>& f,
                             int n, const FixedPointFormat& fmt, UfPath path) {
  return conditioned_rotation_circuit(f, n, fmt, kPi, path);
}

}  // namespace expsum
