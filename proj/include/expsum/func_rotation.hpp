#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "expsum/circuit.hpp"
#include "expsum/fixed_point.hpp"

namespace expsum {

// Real-coefficient polynomial, coefficients[i] multiplying x^i.
struct Polynomial {
  std::vector<double> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  double eval(double x) const;
  void validate() const;  // nonempty coefficient list
};

// Reduction of a rotation argument into the canonical period of the rotation
// R(scale * v): v is taken mod 2*pi/|scale| into [0, period).
double canonical_rotation_value(double v, double scale);

// One singly-controlled rotation per register bit: the ancilla accumulates
// R(value * t) where value = sum_i q_i 2^{i-m2} is held in the register.
// reg[i] carries the bit of weight 2^{i-m2}.
Circuit rotation_ladder_circuit(const std::vector<int>& reg,
                                const FixedPointFormat& fmt, int ancilla,
                                double t);
void apply_rotation_ladder(StateVector& state, const std::vector<int>& reg,
                           const FixedPointFormat& fmt, int ancilla, double t);

// Expands p(x) over register bits using q^2 = q, merging monomials that share
// a support set. Key: bitmask over register positions (bit i <-> reg[i]);
// value: the merged coefficient.
std::map<std::uint64_t, double> monomial_expansion(const Polynomial& poly,
                                                   const FixedPointFormat& fmt);

// Multi-controlled rotation network applying R(p(x) * t) directly, one
// rotation per monomial of the expansion (about n^d gates for degree d).
Circuit polynomial_rotation_circuit(const std::vector<int>& reg,
                                    const FixedPointFormat& fmt, int ancilla,
                                    const Polynomial& poly, double t);
void apply_polynomial_rotation(StateVector& state, const std::vector<int>& reg,
                               const FixedPointFormat& fmt, int ancilla,
                               const Polynomial& poly, double t);

enum class UfPath {
  Direct,        // per-index conditioned rotation, no helper qubits
  HelperLadder,  // compute |f(k)> into a helper register, ladder, uncompute
};

struct ConditionedRotation {
  Circuit circuit;
  int ancilla;
  std::vector<int> helper;       // helper register (HelperLadder path only)
  double max_truncation_error;   // max_k |v(k) - truncated v(k)| after reduction
};

// Circuit rotating the ancilla by R(scale * v~(k)) conditioned on the value k
// of qubits [0, n); v~ is the fixed-point truncation of value(k) after
// canonical period reduction. The two paths are unitarily identical on the
// shared qubits; HelperLadder additionally uses fmt.bit_count() helper qubits
// above the ancilla.
ConditionedRotation conditioned_rotation_circuit(
    const std::function<double(std::uint64_t)>& value, int n,
    const FixedPointFormat& fmt, double scale, UfPath path = UfPath::Direct);

// U_f of the exponential-sum pipelines: |k>|0> -> |k>(cos(pi f~(k))|0> +
// sin(pi f~(k))|1>) with f in cycles, reduced mod 2 and truncated to fmt.
ConditionedRotation build_uf(const std::function<double(std::uint64_t)>& f,
                             int n, const FixedPointFormat& fmt,
                             UfPath path = UfPath::Direct);

}  // namespace expsum
