#pragma once

#include <complex>
#include <cstdint>

#include "expsum/amp_est.hpp"
#include "expsum/exp_sum.hpp"
#include "expsum/func_rotation.hpp"
#include "expsum/state_prep.hpp"
#include "expsum/zeta.hpp"

namespace expsum {

// Weights w_k = k^{-sigma} / H_N for k = 1..N embedded in 2^n basis states
// (w_0 = 0, indices past N carry zero weight).
struct PowerWeightOracle {
  int n_qubits;
  std::uint64_t n_terms;
  double sigma;

  WeightOracle weight_oracle() const;
  double h_n() const;  // H_N = sum_{k<=N} k^{-sigma}
};

// Weights w_k = k^j / H_{K-1,j} for k = 0..K-1; the k = 0 weight is zero for
// every j (its j = 0 term is restored classically by quantum_block_sum).
struct BlockWeightOracle {
  int n_qubits;
  std::uint64_t block;  // K
  int power;            // j

  WeightOracle weight_oracle() const;
  double h_norm() const;  // H_{K-1, j}
};

StateVector prepare_power_weight_state(const PowerWeightOracle& oracle);

struct QuantumPartialSum {
  // Oracle-matching value: sum_{k<=N} k^{-s} (with e^{-i t ln k} phases).
  std::complex<double> value;
  // The recombination exactly as displayed, H_N((2Sr-1) + i(2Si-1)), which
  // is the conjugate of `value`.
  std::complex<double> value_displayed;
  double s_r;
  double s_i;
  double ae_error_bound;      // 95%-confidence bound on |value - true|
  double truncation_bound;    // from fixed-point ln k on the ladder path
  std::uint64_t q_applications;
};

// sum_{k=1}^{N} k^{-s} via the rotation pipeline: power-weight state,
// ancilla rotations by theta_k = (t/2) ln k for S_r and by pi/4 - theta_k
// for S_i, recombined through H_N((2Sr-1) -+ i(2Si-1)).
QuantumPartialSum quantum_partial_sum(std::uint64_t n_terms,
                                      std::complex<double> s,
                                      const AEConfig& cfg,
                                      UfPath path = UfPath::Direct);

struct QuantumBlockSum {
  std::complex<double> value;  // (1/K^j) sum_{k<K} k^j e^{2 pi i p(k)}
  double ae_error_bound;
  std::uint64_t q_applications;
};

// Block primitive of the t^{1/D} scheme: k^j-weighted exponential sum with a
// polynomial phase, rescaled by H_{K-1,j}/K^j; the k = 0 term is added
// classically when j = 0.
QuantumBlockSum quantum_block_sum(std::uint64_t block, int power,
                                  const Polynomial& poly, const AEConfig& cfg);

enum class HybridMode { EulerMaclaurin, RiemannSiegel };

struct ZetaHybridResult {
  std::complex<double> value;
  double ae_error_bound;         // propagated from the quantum main sums
  double classical_error_bound;  // correction/remainder budget
  long long n_terms;             // main-sum cutoff used
  int order;                     // EM correction order (0 for RS)
  std::uint64_t q_applications;
};

// zeta with the main partial sum(s) replaced by quantum_partial_sum; all
// corrections and remainders stay classical.
ZetaHybridResult zeta_hybrid(std::complex<double> s, int digits,
                             HybridMode mode, const AEConfig& cfg);

}  // namespace expsum
