#include "expsum/zeta_quantum.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "expsum/compensated.hpp"
#include "expsum/errors.hpp"
#include "expsum/rng.hpp"

namespace expsum {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

int qubits_for(std::uint64_t max_index) {
  int n = 1;
  while ((std::uint64_t{1} << n) <= max_index) ++n;
  return n;
}

// table[m] must hold the unnormalized mass of indices < m; entries past the
// table saturate at the total.
WeightOracle oracle_from_table(int n_qubits,
                               std::shared_ptr<std::vector<double>> table) {
  double norm = table->back();
  std::uint64_t last = table->size() - 1;
  return {n_qubits, [table, norm, last](std::uint64_t m) {
            return (*table)[std::min<std::uint64_t>(m, last)] / norm;
          }};
}

// 95%-confidence bound on the theta error of one amplitude estimate, at a
// per-estimate failure budget delta (two estimates feed each partial sum).
double theta_bound_for(const AEConfig& cfg, double delta) {
  switch (cfg.method) {
    case AEMethod::Exact:
      return 0.0;
    case AEMethod::QFT:
      return kPi * qft_phase_error_bound(cfg.precision_bits, delta);
    case AEMethod::ClassicalPP: {
      std::uint64_t shots =
          cfg.shots != 0 ? cfg.shots : classical_pp_shots(cfg.epsilon,
                                                          cfg.delta);
      return 2.0 * std::sqrt(std::log(4.0 / delta) /
                             (2.0 * static_cast<double>(shots)));
    }
    case AEMethod::Kitaev:
      return kPi * std::ldexp(1.0, -cfg.precision_bits);
  }
  throw std::domain_error("unknown estimation method");
}

}  // namespace

WeightOracle PowerWeightOracle::weight_oracle() const {
  if (n_terms < 1 || (std::uint64_t{1} << n_qubits) <= n_terms) {
    throw std::domain_error("need 1 <= N < 2^n");
  }
  if (sigma < 0.0) throw std::domain_error("need sigma >= 0");
  // table[m] = sum_{1 <= k < m} k^{-sigma}; index 0 has zero weight.
  auto table = std::make_shared<std::vector<double>>(n_terms + 2, 0.0);
  Compensated acc;
  for (std::uint64_t k = 1; k <= n_terms; ++k) {
    acc.add(std::pow(static_cast<double>(k), -sigma));
    (*table)[k + 1] = acc.total();
  }
  return oracle_from_table(n_qubits, std::move(table));
}

double PowerWeightOracle::h_n() const {
  Compensated acc;
  for (std::uint64_t k = 1; k <= n_terms; ++k) {
    acc.add(std::pow(static_cast<double>(k), -sigma));
  }
  return acc.total();
}

WeightOracle BlockWeightOracle::weight_oracle() const {
  if (block < 2 || (std::uint64_t{1} << n_qubits) < block) {
    throw std::domain_error("need 2 <= K <= 2^n");
  }
  if (power < 0 || power > 30) throw std::domain_error("need 0 <= j <= 30");
  // table[m] = H_{m-1,j}: the k = 0 weight is zero, k >= 1 carries k^j.
  auto table = std::make_shared<std::vector<double>>(block + 1, 0.0);
  for (std::uint64_t m = 2; m <= block; ++m) {
    // Exact Faulhaber prefix, rounded once to double.
    (*table)[m] = faulhaber_sum(m - 1, power).get_d();
  }
  return oracle_from_table(n_qubits, std::move(table));
}

double BlockWeightOracle::h_norm() const {
  return faulhaber_sum(block - 1, power).get_d();
}

StateVector prepare_power_weight_state(const PowerWeightOracle& oracle) {
  return prepare_weighted_state(oracle.weight_oracle());
}

QuantumPartialSum quantum_partial_sum(std::uint64_t n_terms, cplx s,
                                      const AEConfig& cfg, UfPath path) {
  if (n_terms < 1) throw std::domain_error("need N >= 1");
  double t = s.imag();

  PowerWeightOracle oracle{qubits_for(n_terms), n_terms, s.real()};
  double h_n = oracle.h_n();

  if (n_terms == 1) {
    // Single term: k = 1, theta_1 = 0, S_r = 1, S_i = cos^2(pi/4).
    return {cplx{1.0, 0.0}, cplx{1.0, 0.0}, 1.0, 0.5, 0.0, 0.0, 0};
  }

  Circuit prep = weighted_prep_circuit(oracle.weight_oracle());
  int n = oracle.n_qubits;

  auto log_k = [](std::uint64_t k) {
    return k >= 1 ? std::log(static_cast<double>(k)) : 0.0;
  };

  // Fixed-point format sized to the reduced rotation arguments; the
  // truncation feeds the reported phase-error bound on the ladder path.
  auto fmt_for = [&](double scale) {
    double vmax = log_k(n_terms);
    if (scale != 0.0) vmax = std::min(vmax, 2.0 * kPi / std::abs(scale));
    int m1 = 0;
    while (std::ldexp(2.0, m1) <= vmax) ++m1;
    return FixedPointFormat{m1, std::min(52, 61 - m1)};
  };

  auto pipeline = [&](double extra_rotation, double scale) {
    FixedPointFormat fmt = fmt_for(scale);
    ConditionedRotation rot =
        conditioned_rotation_circuit(log_k, n, fmt, scale, path);
    Circuit a = prep;
    a.n_qubits = rot.circuit.n_qubits;
    if (extra_rotation != 0.0) {
      a.add(Gate::rotation(extra_rotation, rot.ancilla));
    }
    a.append(rot.circuit);
    double trunc = std::abs(scale) * rot.max_truncation_error;
    return std::pair<PreparedAmplitude, double>(
        {std::move(a), rot.circuit.n_qubits, rot.ancilla}, trunc);
  };

  AEConfig cfg_r = cfg;
  AEConfig cfg_i = cfg;
  cfg_r.seed = derive_seed(cfg.seed, 0xa1);
  cfg_i.seed = derive_seed(cfg.seed, 0xa2);

  // S_r: rotations by theta_k = (t/2) ln k.
  auto [prep_r, trunc_r] = pipeline(0.0, t / 2.0);
  AmplitudeEstimate est_r = estimate_amplitude(prep_r, cfg_r);
  // S_i: rotations by pi/4 - theta_k.
  auto [prep_i, trunc_i] = pipeline(kPi / 4.0, -t / 2.0);
  AmplitudeEstimate est_i = estimate_amplitude(prep_i, cfg_i);

  QuantumPartialSum out;
  out.s_r = est_r.a_hat * est_r.a_hat;
  out.s_i = est_i.a_hat * est_i.a_hat;
  out.value_displayed =
      h_n * cplx{2.0 * out.s_r - 1.0, 2.0 * out.s_i - 1.0};
  out.value = std::conj(out.value_displayed);
  // 2S-1 = cos(2 theta): each component off by at most twice its theta
  // error; joint 95% confidence from a 2.5% budget per estimate.
  double theta_bound = theta_bound_for(cfg, 0.025);
  out.ae_error_bound = h_n * std::hypot(2.0 * theta_bound, 2.0 * theta_bound);
  out.truncation_bound = h_n * 2.0 * std::hypot(trunc_r, trunc_i);
  out.q_applications = est_r.q_applications + est_i.q_applications;
  return out;
}

QuantumBlockSum quantum_block_sum(std::uint64_t block, int power,
                                  const Polynomial& poly,
                                  const AEConfig& cfg) {
  poly.validate();
  if (poly.degree() > 4) {
    throw std::domain_error("block sums support polynomial degree <= 4");
  }
  if (block < 1) throw std::domain_error("need K >= 1");

  ExpSumProblem problem;
  problem.f = [poly](std::uint64_t k) {
    return poly.eval(static_cast<double>(k));
  };

  double k_pow_j = std::pow(static_cast<double>(block), power);
  QuantumBlockSum out{};

  if (block == 1) {
    out.value = power == 0 ? std::polar(1.0, 2.0 * kPi * poly.eval(0.0))
                           : cplx{0.0, 0.0};
    return out;
  }

  BlockWeightOracle oracle{qubits_for(block - 1), block, power};
  double h = oracle.h_norm();
  problem.n_qubits = oracle.n_qubits;
  problem.weights = oracle.weight_oracle();

  ExpSumResult es = es_value(problem, cfg);
  cplx total = h * es.value;
  if (power == 0) {
    total += std::polar(1.0, 2.0 * kPi * problem.f_truncated(0));
  }
  out.value = total / k_pow_j;
  out.ae_error_bound = h * es.ae_error_bound / k_pow_j;
  out.q_applications = es.q_applications;
  return out;
}

ZetaHybridResult zeta_hybrid(cplx s, int digits, HybridMode mode,
                             const AEConfig& cfg) {
  ZetaHybridResult out{};
  AEConfig cfg_main = cfg;

  if (mode == HybridMode::EulerMaclaurin) {
    if (s == cplx{1.0, 0.0}) throw PoleError("zeta has a pole at s = 1");
    EMParams params = select_em_params(s, digits);
    QuantumPartialSum main =
        quantum_partial_sum(static_cast<std::uint64_t>(params.n_terms), s,
                            cfg_main);
    out.value = main.value +
                euler_maclaurin_tail(s, params.n_terms, params.order);
    out.ae_error_bound = main.ae_error_bound + main.truncation_bound;
    out.classical_error_bound = std::pow(10.0, -digits);
    out.n_terms = params.n_terms;
    out.order = params.order;
    out.q_applications = main.q_applications;
    return out;
  }

  if (s.real() < 0.0 || s.real() > 1.0) {
    throw std::domain_error("Riemann-Siegel path restricted to sigma in [0,1]");
  }
  long long n = rs_main_terms(s.imag());
  cplx s_ref = 1.0 - std::conj(s);
  AEConfig cfg_ref = cfg;
  cfg_ref.seed = derive_seed(cfg.seed, 0xb2);
  cfg_main.seed = derive_seed(cfg.seed, 0xb1);

  QuantumPartialSum direct =
      quantum_partial_sum(static_cast<std::uint64_t>(n), s, cfg_main);
  QuantumPartialSum reflected =
      quantum_partial_sum(static_cast<std::uint64_t>(n), s_ref, cfg_ref);
  cplx chi = riemann_siegel_chi(s);
  cplx i0 = direct.value + riemann_siegel_remainder(s, n);
  cplx i0_ref = reflected.value + riemann_siegel_remainder(s_ref, n);
  out.value = i0 + chi * std::conj(i0_ref);
  out.ae_error_bound = direct.ae_error_bound + direct.truncation_bound +
                       std::abs(chi) * (reflected.ae_error_bound +
                                        reflected.truncation_bound);
  out.classical_error_bound = 1e-10;
  out.n_terms = n;
  out.order = 0;
  out.q_applications = direct.q_applications + reflected.q_applications;
  return out;
}

}  // namespace expsum
