#include "expsum/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "expsum/compensated.hpp"
#include "expsum/rng.hpp"

namespace expsum {

namespace {

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::domain_error("qubit count " + std::to_string(n_qubits) +
                            " outside [1, " + std::to_string(kMaxQubits) +
                            "]");
  }
}

}  // namespace

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  check_qubit_count(n_qubits);
  std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (index >= dim) {
    throw std::domain_error("basis index " + std::to_string(index) +
                            " out of range for " + std::to_string(n_qubits) +
                            " qubits");
  }
  StateVector sv;
  sv.n_qubits_ = n_qubits;
  sv.amps_.assign(dim, cdouble{0.0, 0.0});
  sv.amps_[index] = cdouble{1.0, 0.0};
  return sv;
}

StateVector StateVector::from_amplitudes(int n_qubits,
                                         std::vector<cdouble> amps) {
  check_qubit_count(n_qubits);
  if (amps.size() != (std::uint64_t{1} << n_qubits)) {
    throw std::domain_error("amplitude array length does not match 2^n");
  }
  StateVector sv;
  sv.n_qubits_ = n_qubits;
  sv.amps_ = std::move(amps);
  return sv;
}

double StateVector::norm_squared() const {
  Compensated acc;
  for (const cdouble& a : amps_) acc.add(std::norm(a));
  return acc.total();
}

void StateVector::apply_diagonal(
    const std::function<double(std::uint64_t)>& phase) {
  for (std::uint64_t k = 0; k < amps_.size(); ++k) {
    double p = phase(k);
    amps_[k] *= cdouble{std::cos(p), std::sin(p)};
  }
}

void StateVector::invert_about_mean() {
  cdouble sum{0.0, 0.0};
  Compensated re, im;
  for (const cdouble& a : amps_) {
    re.add(a.real());
    im.add(a.imag());
  }
  cdouble two_b =
      2.0 * cdouble{re.total(), im.total()} / static_cast<double>(amps_.size());
  for (cdouble& a : amps_) a = two_b - a;
}

double StateVector::probability_of(int qubit, int outcome) const {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw std::domain_error("qubit index out of range");
  }
  if (outcome != 0 && outcome != 1) {
    throw std::domain_error("outcome must be 0 or 1");
  }
  std::uint64_t mask = std::uint64_t{1} << qubit;
  Compensated p0;
  for (std::uint64_t k = 0; k < amps_.size(); ++k) {
    if ((k & mask) == 0) p0.add(std::norm(amps_[k]));
  }
  // The 1-outcome is the exact complement so the two marginals always sum
  // to 1.0 exactly.
  return outcome == 0 ? p0.total() : 1.0 - p0.total();
}

std::pair<std::uint64_t, std::uint64_t> StateVector::sample_measurements(
    int qubit, std::uint64_t shots, std::uint64_t seed) const {
  if (shots < 1) throw std::domain_error("shots must be >= 1");
  double p0 = probability_of(qubit, 0);
  std::mt19937_64 gen(seed);
  std::uint64_t zeros = 0;
  for (std::uint64_t i = 0; i < shots; ++i) {
    if (canonical_double(gen) < p0) ++zeros;
  }
  return {zeros, shots - zeros};
}

cdouble StateVector::inner_product(const StateVector& other) const {
  if (other.n_qubits_ != n_qubits_) {
    throw std::domain_error("inner product dimension mismatch");
  }
  Compensated re, im;
  for (std::uint64_t k = 0; k < amps_.size(); ++k) {
    cdouble term = std::conj(amps_[k]) * other.amps_[k];
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.total(), im.total()};
}

}  // namespace expsum
