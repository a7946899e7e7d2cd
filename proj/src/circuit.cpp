#include "expsum/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace expsum {

namespace {

struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
};

ControlMask build_control_mask(const std::vector<Control>& controls,
                               int n_qubits, std::uint64_t exclude_bits) {
  ControlMask cm;
  for (const Control& c : controls) {
    if (c.qubit < 0 || c.qubit >= n_qubits) {
      throw std::domain_error("control qubit out of range");
    }
    std::uint64_t bit = std::uint64_t{1} << c.qubit;
    if (bit & exclude_bits) {
      throw std::domain_error("control qubit collides with operand qubits");
    }
    if (bit & cm.mask) {
      throw std::domain_error("duplicate control qubit");
    }
    cm.mask |= bit;
    if (c.value) cm.value |= bit;
  }
  return cm;
}

std::uint64_t bits_of(const std::vector<int>& qubits, int n_qubits) {
  std::uint64_t bits = 0;
  for (int q : qubits) {
    if (q < 0 || q >= n_qubits) {
      throw std::domain_error("qubit index out of range");
    }
    std::uint64_t bit = std::uint64_t{1} << q;
    if (bit & bits) throw std::domain_error("duplicate qubit in register");
    bits |= bit;
  }
  return bits;
}

inline std::uint64_t extract_bits(std::uint64_t idx,
                                  const std::vector<int>& reg) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    v |= ((idx >> reg[i]) & 1u) << i;
  }
  return v;
}

inline std::uint64_t deposit_bits(std::uint64_t v,
                                  const std::vector<int>& reg) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    idx |= ((v >> i) & 1u) << reg[i];
  }
  return idx;
}

// Sanity check required of the parameterized gates: the 2x2 block must be
// unitary to 1e-12.
void check_block_unitary(double a00, double a01, double a10, double a11) {
  double c0 = a00 * a00 + a10 * a10;
  double c1 = a01 * a01 + a11 * a11;
  double x = a00 * a01 + a10 * a11;
  if (std::abs(c0 - 1.0) > 1e-12 || std::abs(c1 - 1.0) > 1e-12 ||
      std::abs(x) > 1e-12) {
    throw std::logic_error("gate block is not unitary");
  }
}

void apply_pair_gate(StateVector& state, const Gate& gate) {
  int n = state.n_qubits();
  if (gate.target < 0 || gate.target >= n) {
    throw std::domain_error("gate target out of range");
  }
  std::uint64_t tbit = std::uint64_t{1} << gate.target;
  std::uint64_t or_mask =
      gate.kind == GateKind::ControlledOr ? bits_of(gate.or_register, n) : 0;
  if (or_mask & tbit) {
    throw std::domain_error("or-register overlaps gate target");
  }
  ControlMask cm = build_control_mask(gate.controls, n, tbit | or_mask);

  auto& amps = state.amplitudes();
  std::uint64_t dim = state.size();

  switch (gate.kind) {
    case GateKind::Hadamard: {
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      for (std::uint64_t k = 0; k < dim; ++k) {
        if ((k & tbit) || (k & cm.mask) != cm.value) continue;
        cdouble a = amps[k], b = amps[k | tbit];
        amps[k] = (a + b) * inv_sqrt2;
        amps[k | tbit] = (a - b) * inv_sqrt2;
      }
      break;
    }
    case GateKind::RY: {
      double c = std::cos(gate.angle / 2.0), s = std::sin(gate.angle / 2.0);
      check_block_unitary(c, -s, s, c);
      for (std::uint64_t k = 0; k < dim; ++k) {
        if ((k & tbit) || (k & cm.mask) != cm.value) continue;
        cdouble a = amps[k], b = amps[k | tbit];
        amps[k] = c * a - s * b;
        amps[k | tbit] = s * a + c * b;
      }
      break;
    }
    case GateKind::PhaseZ: {
      cdouble phase{std::cos(gate.angle), std::sin(gate.angle)};
      check_block_unitary(1.0, 0.0, 0.0, std::abs(phase));
      for (std::uint64_t k = 0; k < dim; ++k) {
        if (!(k & tbit) || (k & cm.mask) != cm.value) continue;
        amps[k] *= phase;
      }
      break;
    }
    case GateKind::PauliX: {
      for (std::uint64_t k = 0; k < dim; ++k) {
        if ((k & tbit) || (k & cm.mask) != cm.value) continue;
        std::swap(amps[k], amps[k | tbit]);
      }
      break;
    }
    case GateKind::ControlledOr: {
      // Flip the target iff the or-register is nonzero: a multi-controlled X
      // on the all-zero pattern composed with an unconditional X.
      for (std::uint64_t k = 0; k < dim; ++k) {
        if ((k & tbit) || (k & cm.mask) != cm.value) continue;
        if ((k & or_mask) != 0) std::swap(amps[k], amps[k | tbit]);
      }
      break;
    }
  }
}

}  // namespace

Gate Gate::hadamard(int target) { return {GateKind::Hadamard, 0.0, target, {}, {}}; }
Gate Gate::ry(double theta, int target) { return {GateKind::RY, theta, target, {}, {}}; }
Gate Gate::rotation(double alpha, int target) { return ry(2.0 * alpha, target); }
Gate Gate::phase_z(double theta, int target) { return {GateKind::PhaseZ, theta, target, {}, {}}; }
Gate Gate::pauli_x(int target) { return {GateKind::PauliX, 0.0, target, {}, {}}; }
Gate Gate::controlled_or(std::vector<int> or_register, int target) {
  return {GateKind::ControlledOr, 0.0, target, {}, std::move(or_register)};
}

Gate Gate::with_controls(std::vector<Control> ctrls) const {
  Gate g = *this;
  g.controls = std::move(ctrls);
  return g;
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (kind == GateKind::RY || kind == GateKind::PhaseZ) g.angle = -angle;
  return g;
}

void apply_gate(StateVector& state, const Gate& gate) {
  apply_pair_gate(state, gate);
}

void apply_op(StateVector& state, const CircuitOp& op) {
  int n = state.n_qubits();
  auto& amps = state.amplitudes();
  std::uint64_t dim = state.size();

  if (const Gate* g = std::get_if<Gate>(&op)) {
    apply_pair_gate(state, *g);
    return;
  }
  if (const DiagonalOp* d = std::get_if<DiagonalOp>(&op)) {
    std::uint64_t reg_bits = bits_of(d->reg, n);
    ControlMask cm = build_control_mask(d->controls, n, reg_bits);
    for (std::uint64_t k = 0; k < dim; ++k) {
      if ((k & cm.mask) != cm.value) continue;
      double p = d->phase(extract_bits(k, d->reg));
      amps[k] *= cdouble{std::cos(p), std::sin(p)};
    }
    return;
  }
  if (const RotationOp* r = std::get_if<RotationOp>(&op)) {
    std::uint64_t reg_bits = bits_of(r->reg, n);
    std::uint64_t tbit = std::uint64_t{1} << r->target;
    if (r->target < 0 || r->target >= n) {
      throw std::domain_error("rotation target out of range");
    }
    if (reg_bits & tbit) {
      throw std::domain_error("rotation target inside its own register");
    }
    ControlMask cm = build_control_mask(r->controls, n, reg_bits | tbit);
    for (std::uint64_t k = 0; k < dim; ++k) {
      if ((k & tbit) || (k & cm.mask) != cm.value) continue;
      double alpha = r->angle(extract_bits(k, r->reg));
      double c = std::cos(alpha), s = std::sin(alpha);
      cdouble a = amps[k], b = amps[k | tbit];
      amps[k] = c * a - s * b;
      amps[k | tbit] = s * a + c * b;
    }
    return;
  }
  if (const XorOp* x = std::get_if<XorOp>(&op)) {
    std::uint64_t reg_bits = bits_of(x->reg, n);
    std::uint64_t helper_bits = bits_of(x->helper, n);
    if (reg_bits & helper_bits) {
      throw std::domain_error("xor helper overlaps its input register");
    }
    ControlMask cm = build_control_mask(x->controls, n, helper_bits);
    std::uint64_t value_mask =
        x->helper.size() >= 64 ? ~std::uint64_t{0}
                               : ((std::uint64_t{1} << x->helper.size()) - 1);
    for (std::uint64_t k = 0; k < dim; ++k) {
      if ((k & cm.mask) != cm.value) continue;
      std::uint64_t v = x->value(extract_bits(k, x->reg)) & value_mask;
      std::uint64_t partner = k ^ deposit_bits(v, x->helper);
      if (partner > k) std::swap(amps[k], amps[partner]);
    }
    return;
  }
  if (const MeanInversionOp* m = std::get_if<MeanInversionOp>(&op)) {
    std::uint64_t reg_bits = bits_of(m->reg, n);
    ControlMask cm = build_control_mask(m->controls, n, reg_bits);
    std::vector<int> outer;
    for (int q = 0; q < n; ++q) {
      if (!((reg_bits >> q) & 1u)) outer.push_back(q);
    }
    std::uint64_t inner_dim = std::uint64_t{1} << m->reg.size();
    std::uint64_t outer_dim = std::uint64_t{1} << outer.size();
    for (std::uint64_t o = 0; o < outer_dim; ++o) {
      std::uint64_t base = deposit_bits(o, outer);
      if ((base & cm.mask) != cm.value) continue;
      cdouble sum{0.0, 0.0};
      for (std::uint64_t i = 0; i < inner_dim; ++i) {
        sum += amps[base | deposit_bits(i, m->reg)];
      }
      cdouble two_b = 2.0 * sum / static_cast<double>(inner_dim);
      for (std::uint64_t i = 0; i < inner_dim; ++i) {
        std::uint64_t k = base | deposit_bits(i, m->reg);
        amps[k] = two_b - amps[k];
      }
    }
    return;
  }
  throw std::logic_error("unknown circuit op");
}

CircuitOp invert_op(const CircuitOp& op) {
  if (const Gate* g = std::get_if<Gate>(&op)) return g->inverse();
  if (const DiagonalOp* d = std::get_if<DiagonalOp>(&op)) {
    DiagonalOp inv = *d;
    auto phase = d->phase;
    inv.phase = [phase](std::uint64_t v) { return -phase(v); };
    return inv;
  }
  if (const RotationOp* r = std::get_if<RotationOp>(&op)) {
    RotationOp inv = *r;
    auto angle = r->angle;
    inv.angle = [angle](std::uint64_t v) { return -angle(v); };
    return inv;
  }
  // XorOp and MeanInversionOp are involutions.
  return op;
}

void Circuit::append(const Circuit& other) {
  for (const CircuitOp& op : other.ops) ops.push_back(op);
}

void Circuit::apply(StateVector& state) const {
  if (state.n_qubits() < n_qubits) {
    throw std::domain_error("state too small for circuit");
  }
  for (const CircuitOp& op : ops) apply_op(state, op);
}

StateVector Circuit::applied_to(const StateVector& state) const {
  StateVector out = state;
  apply(out);
  return out;
}

Circuit Circuit::inverse() const {
  Circuit inv;
  inv.n_qubits = n_qubits;
  inv.ops.reserve(ops.size());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    inv.ops.push_back(invert_op(*it));
  }
  return inv;
}

Circuit Circuit::controlled(int control_qubit, bool control_value) const {
  Circuit out;
  out.n_qubits = std::max(n_qubits, control_qubit + 1);
  out.ops.reserve(ops.size());
  for (const CircuitOp& op : ops) {
    CircuitOp copy = op;
    std::visit(
        [&](auto& o) {
          o.controls.push_back(Control{control_qubit, control_value});
        },
        copy);
    out.ops.push_back(std::move(copy));
  }
  return out;
}

}  // namespace expsum
