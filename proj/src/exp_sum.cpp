#include "expsum/exp_sum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "expsum/compensated.hpp"
#include "expsum/rng.hpp"

namespace expsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_desk_scale(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 24) {
    throw std::domain_error("exponential sum needs 1 <= n <= 24 qubits");
  }
}

RealEstimate magnitude_readout(const ExpSumProblem& problem,
                               Circuit pipeline, const AEConfig& cfg) {
  double sqrt_n = std::sqrt(std::ldexp(1.0, problem.n_qubits));
  PreparedAmplitude prep{std::move(pipeline), problem.n_qubits + 1,
                         problem.n_qubits};
  AmplitudeEstimate est = estimate_amplitude(prep, cfg);
  return {sqrt_n * est.a_hat, sqrt_n * est.error_bound, est.q_applications};
}

}  // namespace

double ExpSumProblem::f_truncated(std::uint64_t k) const {
  return encode_fixed_point(canonical_rotation_value(f(k), kPi), fmt).value;
}

std::complex<double> es_classical_oracle(const ExpSumProblem& problem,
                                         bool truncated_f) {
  check_desk_scale(problem.n_qubits);
  CompensatedComplex acc;
  std::uint64_t dim = std::uint64_t{1} << problem.n_qubits;
  for (std::uint64_t k = 0; k < dim; ++k) {
    double w = problem.weights.weight(k);
    double phase = kTwoPi * (truncated_f ? problem.f_truncated(k)
                                         : problem.f(k));
    acc.add(w * std::complex<double>{std::cos(phase), std::sin(phase)});
  }
  return acc.total();
}

double es_magnitude_oracle(const ExpSumProblem& problem, bool truncated_f) {
  check_desk_scale(problem.n_qubits);
  CompensatedComplex acc;
  std::uint64_t dim = std::uint64_t{1} << problem.n_qubits;
  for (std::uint64_t k = 0; k < dim; ++k) {
    double w = std::max(problem.weights.weight(k), 0.0);
    double phase = kTwoPi * (truncated_f ? problem.f_truncated(k)
                                         : problem.f(k));
    acc.add(std::sqrt(w) *
            std::complex<double>{std::cos(phase), std::sin(phase)});
  }
  return std::abs(acc.total());
}

PreparedAmplitude es_phase_pipeline(const ExpSumProblem& problem,
                                    double offset_cycles, UfPath path) {
  check_desk_scale(problem.n_qubits);
  Circuit pipeline = weighted_prep_circuit(problem.weights);
  auto f = problem.f;
  ConditionedRotation uf = build_uf(
      [f, offset_cycles](std::uint64_t k) { return f(k) - offset_cycles; },
      problem.n_qubits, problem.fmt, path);
  pipeline.n_qubits = uf.circuit.n_qubits;
  pipeline.append(uf.circuit);
  return {std::move(pipeline), uf.circuit.n_qubits, uf.ancilla};
}

RealEstimate es_real(const ExpSumProblem& problem, const AEConfig& cfg,
                     UfPath path) {
  PreparedAmplitude prep = es_phase_pipeline(problem, 0.0, path);
  AmplitudeEstimate est = estimate_amplitude(prep, cfg);
  // 2 a^2 - 1 = cos(2 theta), so the value error is at most twice the
  // theta error; error_bound already caps the theta bound at 1.
  return {2.0 * est.a_hat * est.a_hat - 1.0, 2.0 * est.error_bound,
          est.q_applications};
}

RealEstimate es_imag(const ExpSumProblem& problem, const AEConfig& cfg,
                     UfPath path) {
  ExpSumProblem shifted = problem;
  auto f = problem.f;
  shifted.f = [f](std::uint64_t k) { return f(k) - 0.25; };
  return es_real(shifted, cfg, path);
}

ExpSumResult es_value(const ExpSumProblem& problem, const AEConfig& cfg,
                      UfPath path) {
  AEConfig cfg_re = cfg;
  AEConfig cfg_im = cfg;
  cfg_re.seed = derive_seed(cfg.seed, 0);
  cfg_im.seed = derive_seed(cfg.seed, 1);
  RealEstimate re = es_real(problem, cfg_re, path);
  RealEstimate im = es_imag(problem, cfg_im, path);
  return {std::complex<double>{re.value, im.value}, cfg.method,
          std::hypot(re.error_bound, im.error_bound),
          re.q_applications + im.q_applications};
}

Circuit magnitude_pipeline_inversion(const ExpSumProblem& problem) {
  check_desk_scale(problem.n_qubits);
  int n = problem.n_qubits;
  Circuit c = weighted_prep_circuit(problem.weights);
  c.n_qubits = n + 1;

  std::vector<int> reg(n);
  for (int i = 0; i < n; ++i) reg[i] = i;
  const ExpSumProblem p = problem;
  c.add(DiagonalOp{
      reg, [p](std::uint64_t k) { return kTwoPi * p.f_truncated(k); }, {}});
  c.add(Gate::pauli_x(n));

  std::vector<int> all(n + 1);
  for (int i = 0; i <= n; ++i) all[i] = i;
  c.add(MeanInversionOp{std::move(all), {}});
  return c;
}

Circuit magnitude_pipeline_hadamard(const ExpSumProblem& problem) {
  check_desk_scale(problem.n_qubits);
  int n = problem.n_qubits;
  Circuit c = weighted_prep_circuit(problem.weights);
  c.n_qubits = n + 1;

  std::vector<int> reg(n);
  for (int i = 0; i < n; ++i) reg[i] = i;
  const ExpSumProblem p = problem;
  c.add(DiagonalOp{
      reg, [p](std::uint64_t k) { return kTwoPi * p.f_truncated(k); }, {}});

  for (int q = 0; q < n; ++q) c.add(Gate::hadamard(q));
  c.add(Gate::controlled_or(reg, n));
  for (int q = 0; q < n; ++q) c.add(Gate::hadamard(q));
  // The or-gate construction leaves (a_k - a) on the |1> branch; the sign
  // flip lands exactly on the inversion construction's (a - a_k).
  c.add(Gate::phase_z(kPi, n));
  return c;
}

RealEstimate es_magnitude_inversion(const ExpSumProblem& problem,
                                    const AEConfig& cfg) {
  return magnitude_readout(problem, magnitude_pipeline_inversion(problem),
                           cfg);
}

RealEstimate es_magnitude_hadamard(const ExpSumProblem& problem,
                                   const AEConfig& cfg) {
  return magnitude_readout(problem, magnitude_pipeline_hadamard(problem),
                           cfg);
}

}  // namespace expsum
