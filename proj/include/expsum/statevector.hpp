#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace expsum {

using cdouble = std::complex<double>;

// Largest register the dense simulator accepts. 2^26 amplitudes is 1 GiB of
// doubles; callers needing more should rethink, not raise the cap.
inline constexpr int kMaxQubits = 26;

// Dense statevector over n qubits. Basis convention throughout the project:
// index k = sum_i q_i * 2^i with qubit 0 the least significant bit.
class StateVector {
 public:
  StateVector() = default;

  // |index> on n_qubits qubits.
  static StateVector basis(int n_qubits, std::uint64_t index);

  // Takes ownership of an amplitude array of length 2^n_qubits.
  static StateVector from_amplitudes(int n_qubits, std::vector<cdouble> amps);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_qubits_; }

  cdouble amp(std::uint64_t k) const { return amps_[k]; }
  const std::vector<cdouble>& amplitudes() const { return amps_; }
  std::vector<cdouble>& amplitudes() { return amps_; }

  double norm_squared() const;

  // amp[k] *= exp(i * phase(k)).
  void apply_diagonal(const std::function<double(std::uint64_t)>& phase);

  // amp[k] <- 2b - amp[k] with b the mean of all amplitudes. Unitary
  // reflection about the uniform vector; an involution.
  void invert_about_mean();

  // Exact marginal probability of reading `outcome` on `qubit`. The two
  // outcomes sum to 1 exactly: outcome 1 is computed as the complement.
  double probability_of(int qubit, int outcome) const;

  // Binomial draw of `shots` measurements of `qubit`; returns (zeros, ones).
  // Reproducible from the seed independent of platform.
  std::pair<std::uint64_t, std::uint64_t> sample_measurements(
      int qubit, std::uint64_t shots, std::uint64_t seed) const;

  // <this|other>.
  cdouble inner_product(const StateVector& other) const;

 private:
  int n_qubits_ = 0;
  std::vector<cdouble> amps_;
};

}  // namespace expsum
