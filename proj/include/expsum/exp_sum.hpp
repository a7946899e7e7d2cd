#pragma once

#include <complex>
#include <cstdint>
#include <functional>

#include "expsum/amp_est.hpp"
#include "expsum/fixed_point.hpp"
#include "expsum/func_rotation.hpp"
#include "expsum/state_prep.hpp"

namespace expsum {

// Weighted exponential sum over 2^n indices: weights through the prefix-sum
// oracle, phase function f in cycles (term phase e^{2 pi i f(k)}), fmt the
// fixed-point format f is truncated to on the quantum side (after reduction
// into the canonical range [0,2)).
struct ExpSumProblem {
  int n_qubits;
  WeightOracle weights;
  std::function<double(std::uint64_t)> f;
  FixedPointFormat fmt{0, 52};

  // mod-2-reduced, fixed-point-truncated phase actually applied in circuits.
  double f_truncated(std::uint64_t k) const;
};

struct RealEstimate {
  double value;
  double error_bound;
  std::uint64_t q_applications;
};

struct ExpSumResult {
  std::complex<double> value;
  AEMethod method;
  double ae_error_bound;
  std::uint64_t q_applications;
};

// Direct summation oracles (compensated). The phase pipelines target the
// w_k-weighted sum; the magnitude pipelines target the sqrt(w_k)-weighted
// magnitude. Both are provided explicitly so each pipeline is tested against
// the sum it actually estimates.
std::complex<double> es_classical_oracle(const ExpSumProblem& problem,
                                         bool truncated_f = false);
double es_magnitude_oracle(const ExpSumProblem& problem,
                           bool truncated_f = false);

// Prepare sqrt(w_k)|k>, rotate the ancilla by pi*(f - offset_cycles): the
// ancilla-|0> amplitude is sqrt(sum w_k cos^2(pi f'(k))).
PreparedAmplitude es_phase_pipeline(const ExpSumProblem& problem,
                                    double offset_cycles,
                                    UfPath path = UfPath::Direct);

// Re sum_k w_k e^{2 pi i f~(k)} via amplitude estimation: 2 a^2 - 1.
RealEstimate es_real(const ExpSumProblem& problem, const AEConfig& cfg,
                     UfPath path = UfPath::Direct);
// Im S(f) = Re S(f - 1/4).
RealEstimate es_imag(const ExpSumProblem& problem, const AEConfig& cfg,
                     UfPath path = UfPath::Direct);
// Both parts, with sub-seeds split off cfg.seed.
ExpSumResult es_value(const ExpSumProblem& problem, const AEConfig& cfg,
                      UfPath path = UfPath::Direct);

// The two magnitude constructions. Both leave the register in
//   a sum_k |k>|0> + sum_k (a - a_k)|k>|1>,   a = mean(a_k),
// so their final statevectors agree elementwise.
Circuit magnitude_pipeline_inversion(const ExpSumProblem& problem);
Circuit magnitude_pipeline_hadamard(const ExpSumProblem& problem);

// |sum_k sqrt(w_k) e^{2 pi i f~(k)}| = 2^n |a|, read from the ancilla-|0>
// amplitude sqrt(2^n)|a| of the pipeline above.
RealEstimate es_magnitude_inversion(const ExpSumProblem& problem,
                                    const AEConfig& cfg);
RealEstimate es_magnitude_hadamard(const ExpSumProblem& problem,
                                   const AEConfig& cfg);

}  // namespace expsum
