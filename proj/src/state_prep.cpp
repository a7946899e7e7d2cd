#include "expsum/state_prep.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "expsum/errors.hpp"

namespace expsum {

WeightOracle WeightOracle::uniform(int n_qubits) {
  double dim = std::ldexp(1.0, n_qubits);
  return {n_qubits,
          [dim](std::uint64_t m) { return static_cast<double>(m) / dim; }};
}

WeightOracle WeightOracle::from_weights(int n_qubits,
                                        const std::vector<double>& weights) {
  if (weights.size() != (std::uint64_t{1} << n_qubits)) {
    throw std::domain_error("weight table length does not match 2^n");
  }
  auto prefix = std::make_shared<std::vector<double>>(weights.size() + 1, 0.0);
  double run = 0.0, comp = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    // Neumaier step keeps long prefix tables accurate.
    double x = weights[k];
    double t = run + x;
    comp += std::abs(run) >= std::abs(x) ? (run - t) + x : (x - t) + run;
    run = t;
    (*prefix)[k + 1] = run + comp;
  }
  return {n_qubits,
          [prefix](std::uint64_t m) { return (*prefix)[m]; }};
}

void WeightOracle::validate() const {
  double s0 = prefix_sum(0);
  double s1 = prefix_sum(std::uint64_t{1} << n_qubits);
  if (std::abs(s0) > 1e-12 || std::abs(s1 - 1.0) > 1e-12) {
    throw OracleViolation("prefix sums not normalized: S(0)=" +
                          std::to_string(s0) + ", S(2^n)=" +
                          std::to_string(s1));
  }
}

namespace {

struct PrepBuilder {
  const WeightOracle& oracle;
  Circuit& circuit;
  std::vector<std::pair<int, std::uint64_t>>* query_log;
  int n;

  double query(int level, std::uint64_t m) const {
    if (query_log) query_log->emplace_back(level, m);
    return oracle.prefix_sum(m);
  }

  // Subtree over [lo, hi) with known boundary prefix sums. `path` carries
  // the already-fixed high bits as controls.
  void split(int level, std::uint64_t lo, std::uint64_t hi, double s_lo,
             double s_hi, std::vector<Control>& path) {
    double mass = s_hi - s_lo;
    if (mass < -1e-12) {
      throw OracleViolation("negative subtree mass " + std::to_string(mass));
    }
    if (mass <= 0.0) return;  // zero-mass subtree: angle 0, nothing to emit
    if (hi - lo == 1) return;

    std::uint64_t mid = lo + (hi - lo) / 2;
    double s_mid = query(level, mid);
    double left = s_mid - s_lo;
    double right = s_hi - s_mid;
    if (left < -1e-12 || right < -1e-12) {
      throw OracleViolation("negative half mass at M=" + std::to_string(mid));
    }
    left = std::max(left, 0.0);
    right = std::max(right, 0.0);

    int target = n - 1 - level;
    double ratio = std::clamp(left / mass, 0.0, 1.0);
    double alpha = std::acos(std::sqrt(ratio));
    circuit.add(Gate::rotation(alpha, target).with_controls(path));

    path.push_back(Control{target, false});
    split(level + 1, lo, mid, s_lo, s_mid, path);
    path.back().value = true;
    split(level + 1, mid, hi, s_mid, s_hi, path);
    path.pop_back();
  }
};

}  // namespace

Circuit weighted_prep_circuit(
    const WeightOracle& oracle,
    std::vector<std::pair<int, std::uint64_t>>* query_log) {
  oracle.validate();
  Circuit circuit;
  circuit.n_qubits = oracle.n_qubits;
  PrepBuilder builder{oracle, circuit, query_log, oracle.n_qubits};
  std::uint64_t dim = std::uint64_t{1} << oracle.n_qubits;
  double s_lo = builder.query(0, 0);
  double s_hi = builder.query(0, dim);
  std::vector<Control> path;
  builder.split(0, 0, dim, s_lo, s_hi, path);
  return circuit;
}

StateVector prepare_weighted_state(const WeightOracle& oracle) {
  Circuit circuit = weighted_prep_circuit(oracle);
  StateVector sv = StateVector::basis(oracle.n_qubits, 0);
  circuit.apply(sv);
  return sv;
}

double verify_preparation(const StateVector& state,
                          const WeightOracle& oracle) {
  if (state.n_qubits() != oracle.n_qubits) {
    throw std::domain_error("state/oracle qubit count mismatch");
  }
  double worst = 0.0;
  for (std::uint64_t k = 0; k < state.size(); ++k) {
    double w = oracle.weight(k);
    worst = std::max(worst, std::abs(std::norm(state.amp(k)) - w));
  }
  return worst;
}

}  // namespace expsum
