#pragma once

#include <cstdint>
#include <vector>

#include "expsum/circuit.hpp"
#include "expsum/statevector.hpp"

namespace expsum {

// Preparation unitary with the amplitude-estimation decomposition
//   A|0...0> = cos(theta_a)|psi0>|0>_anc + sin(theta_a)|psi1>|1>_anc,
// theta_a in [0, pi/2]; a = cos(theta_a) is the quantity estimators target.
struct PreparedAmplitude {
  Circuit prep;
  int n_qubits;
  int ancilla;

  StateVector prepared_state() const;
  // theta_a from the exact ancilla marginal of A|0>. Estimators never read
  // this; it exists for oracles and eigenstate construction.
  double exact_theta() const;
};

enum class AEMethod { Exact, QFT, ClassicalPP, Kitaev };

struct AEConfig {
  AEMethod method = AEMethod::Exact;
  int precision_bits = 6;              // QFT / Kitaev
  std::uint64_t shots = 0;             // ClassicalPP; 0 derives from epsilon
  double epsilon = 0.01;               // ClassicalPP accuracy target
  double delta = 0.05;                 // ClassicalPP failure budget
  std::uint64_t shots_per_bit = 1000;  // Kitaev
  std::uint64_t seed = 0;
};

// Hoeffding shot count ceil(2/eps^2 * ln(2/delta)).
std::uint64_t classical_pp_shots(double epsilon, double delta);

// Grover-type operator Q = -A S0 A^{-1} S_chi. Rotates the plane spanned by
// the two ancilla branches of A|0> by 2*theta_a per application, so
//   Q^m A|0> = cos((2m+1)theta_a)|psi0>|0> + sin((2m+1)theta_a)|psi1>|1>.
Circuit build_q(const PreparedAmplitude& prep);

// Eigenvector of Q in the rotation plane with eigenvalue exp(+2i*theta_a)
// (eigenphase theta_a/pi). Falls back to A|0> itself when theta_a is 0 or
// pi/2, where A|0> is already an eigenstate.
StateVector q_plane_eigenstate(const PreparedAmplitude& prep);

// QFT over the listed qubits, little-endian: |x> -> 2^{-m/2} sum_l
// exp(2 pi i x l / 2^m)|l>.
Circuit qft_circuit(const std::vector<int>& qubits);

enum class QftMode {
  Auto,           // joint register when cheap, kickback otherwise
  JointRegister,  // materialize control + system qubits, apply gate by gate
  Kickback,       // exact eigenphase kickback onto a standalone control register
};

struct QftEstimate {
  double phi_hat;                    // outcome / 2^m
  std::uint64_t outcome;
  std::vector<double> distribution;  // exact outcome distribution (2^m)
  std::uint64_t u_applications;      // 2^m - 1
};

// Textbook eigenvalue-estimation circuit: m Hadamarded controls, controlled
// U^{2^j}, inverse QFT, measurement. `eigenstate` must satisfy
// ||U|xi> - lambda|xi>|| <= 1e-8. Both modes produce the same distribution;
// Kickback phase-kicks the control register directly, which is bit-identical
// for an exact eigenstate and does not materialize the joint register.
QftEstimate qft_phase_estimate(const Circuit& u, const StateVector& eigenstate,
                               int m_bits, std::uint64_t seed,
                               QftMode mode = QftMode::Auto);

// Exact p0 of the measurement circuit H - Z(theta) - controlled-U^M - H on
// the control qubit: (1 + cos(2 pi M phi + theta)) / 2.
double hadamard_test_probability(const Circuit& u,
                                 const StateVector& eigenstate,
                                 std::uint64_t power, double theta);

// Noiseless two-angle inversion: phi from exact p0(theta=0), p0(theta=pi/2).
double classical_pp_invert(double p0_theta0, double p0_theta90);

struct PhaseEstimate {
  double phi_hat;
  std::uint64_t u_applications;
};

// Sampled two-angle Hadamard tests at M=1; the theta=pi/2 run resolves the
// phi vs 1-phi ambiguity.
PhaseEstimate classical_pp_estimate(const Circuit& u,
                                    const StateVector& eigenstate,
                                    std::uint64_t shots, std::uint64_t seed);

// Kitaev's iterative scheme: two-angle estimates of frac(2^{j-1} phi) for
// j = m..1, each sharpened against the bits already fixed. Throws
// EstimationFailure when a reconciliation step is ambiguous.
PhaseEstimate kitaev_estimate(const Circuit& u, const StateVector& eigenstate,
                              int m_bits, std::uint64_t shots_per_bit,
                              std::uint64_t seed);

struct AmplitudeEstimate {
  double a_hat;
  double theta_hat;
  double error_bound;  // 95%-confidence bound on |a_hat - a|, 0 for Exact
  std::uint64_t q_applications;
  AEMethod method;
};

// Smallest k with the QFT tail bound P(|x - 2^m phi| >= k) <= 1/(2(k-1))
// at or below delta; the phase error bound is k * 2^{-m}.
double qft_phase_error_bound(int m_bits, double delta);

// Dispatches on cfg.method. QFT and Kitaev phase-estimate Q on its plane
// eigenstate (eigenphase theta_a/pi, folded into [0, 1/2]); ClassicalPP runs
// Hadamard tests on Q. Exact reads the prepared statevector.
AmplitudeEstimate estimate_amplitude(const PreparedAmplitude& prep,
                                     const AEConfig& cfg);

}  // namespace expsum
