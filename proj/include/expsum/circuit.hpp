#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "expsum/statevector.hpp"

namespace expsum {

enum class GateKind { Hadamard, RY, PhaseZ, PauliX, ControlledOr };

struct Control {
  int qubit;
  bool value;  // true: condition on |1>, false: condition on |0>
};

// Primitive gate. RY(theta) acts as the real rotation
//   |0> -> cos(theta/2)|0> + sin(theta/2)|1>,
//   |1> -> -sin(theta/2)|0> + cos(theta/2)|1>;
// circuits built from rotation angles alpha use Gate::rotation(alpha),
// which is RY(2*alpha), so that rotation(a)|0> = cos(a)|0> + sin(a)|1>.
struct Gate {
  GateKind kind;
  double angle = 0.0;
  int target = 0;
  std::vector<Control> controls;     // all must match (AND)
  std::vector<int> or_register;      // ControlledOr only: flip target iff != 0

  static Gate hadamard(int target);
  static Gate ry(double theta, int target);
  static Gate rotation(double alpha, int target);  // RY(2*alpha)
  static Gate phase_z(double theta, int target);
  static Gate pauli_x(int target);
  static Gate controlled_or(std::vector<int> or_register, int target);

  Gate with_controls(std::vector<Control> ctrls) const;
  Gate inverse() const;
};

// amp[idx] *= exp(i * phase(v)) where v is the value read from reg
// (reg[i] contributes bit i of v).
struct DiagonalOp {
  std::vector<int> reg;
  std::function<double(std::uint64_t)> phase;
  std::vector<Control> controls;
};

// rotation(angle(v)) applied to `target`, conditioned on the value v held in
// reg. This is the dense-simulation form of a value-conditioned rotation; it
// is unitarily identical to expanding one multi-controlled rotation per
// basis value of reg.
struct RotationOp {
  std::vector<int> reg;
  int target;
  std::function<double(std::uint64_t)> angle;
  std::vector<Control> controls;
};

// helper ^= value(v): classical reversible compute into a helper register.
// An involution (applying twice restores the state).
struct XorOp {
  std::vector<int> reg;
  std::vector<int> helper;
  std::function<std::uint64_t(std::uint64_t)> value;
  std::vector<Control> controls;
};

// Inversion about the mean over the subspace spanned by reg (for each
// assignment of the remaining qubits).
struct MeanInversionOp {
  std::vector<int> reg;
  std::vector<Control> controls;
};

using CircuitOp =
    std::variant<Gate, DiagonalOp, RotationOp, XorOp, MeanInversionOp>;

struct Circuit {
  int n_qubits = 0;
  std::vector<CircuitOp> ops;

  void add(CircuitOp op) { ops.push_back(std::move(op)); }
  void append(const Circuit& other);

  void apply(StateVector& state) const;
  StateVector applied_to(const StateVector& state) const;

  Circuit inverse() const;

  // Same circuit with every operation additionally conditioned on
  // control_qubit == control_value.
  Circuit controlled(int control_qubit, bool control_value = true) const;

  std::size_t op_count() const { return ops.size(); }
};

void apply_op(StateVector& state, const CircuitOp& op);
void apply_gate(StateVector& state, const Gate& gate);
CircuitOp invert_op(const CircuitOp& op);

}  // namespace expsum
