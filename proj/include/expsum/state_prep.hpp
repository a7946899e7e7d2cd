#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "expsum/circuit.hpp"
#include "expsum/statevector.hpp"

namespace expsum {

// Weight distribution over 2^n basis states, presented only through its
// prefix sums S_w(M) = sum_{k<M} w_k. S_w(0) = 0 and S_w(2^n) = 1 within
// 1e-12; S_w must be nondecreasing.
struct WeightOracle {
  int n_qubits;
  std::function<double(std::uint64_t)> prefix_sum;

  static WeightOracle uniform(int n_qubits);
  // Explicit weight table (length 2^n). Prefix sums are precomputed.
  static WeightOracle from_weights(int n_qubits,
                                   const std::vector<double>& weights);

  double weight(std::uint64_t k) const {
    return prefix_sum(k + 1) - prefix_sum(k);
  }
  // Throws OracleViolation if the normalization invariants fail.
  void validate() const;
};

// Binary-splitting preparation circuit: one multi-controlled rotation per
// dyadic subtree with nonzero mass, driven solely by prefix sums queried at
// block boundaries. Amplitudes come out real and nonnegative.
//
// If query_log is non-null it receives every (recursion level, M) prefix-sum
// query the construction makes, level 0 being the root split.
Circuit weighted_prep_circuit(
    const WeightOracle& oracle,
    std::vector<std::pair<int, std::uint64_t>>* query_log = nullptr);

// Applies the preparation circuit to |0...0>.
StateVector prepare_weighted_state(const WeightOracle& oracle);

// max_k | |amp_k|^2 - w_k |.
double verify_preparation(const StateVector& state, const WeightOracle& oracle);

}  // namespace expsum
