#include "expsum/amp_est.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "expsum/errors.hpp"
#include "expsum/rng.hpp"

namespace expsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEigenResidualTol = 1e-8;

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

double fold_phase(double phi) {
  // Q's eigenphases come in a +/- pair; both encode the same theta_a.
  phi = phi - std::floor(phi);
  return std::min(phi, 1.0 - phi);
}

// Eigenvalue of `u` on `eigenstate`, validating the residual precondition.
cdouble eigenvalue_checked(const Circuit& u, const StateVector& eigenstate) {
  StateVector mapped = u.applied_to(eigenstate);
  cdouble lambda = eigenstate.inner_product(mapped);
  double residual2 = 0.0;
  for (std::uint64_t k = 0; k < mapped.size(); ++k) {
    residual2 += std::norm(mapped.amp(k) - lambda * eigenstate.amp(k));
  }
  double residual = std::sqrt(residual2);
  if (residual > kEigenResidualTol) {
    throw std::invalid_argument(
        "input is not an eigenstate: residual " + std::to_string(residual));
  }
  return lambda;
}

std::uint64_t sample_index(const std::vector<double>& distribution,
                           std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  double u = canonical_double(gen);
  double acc = 0.0;
  for (std::uint64_t x = 0; x < distribution.size(); ++x) {
    acc += distribution[x];
    if (u < acc) return x;
  }
  return distribution.size() - 1;
}

std::uint64_t sample_binomial(double p, std::uint64_t shots,
                              std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < shots; ++i) {
    if (canonical_double(gen) < p) ++hits;
  }
  return hits;
}

// Sampled two-angle estimate of frac(phi * M) using the measurement circuit
// at theta = 0 and pi/2.
double two_angle_estimate(const Circuit& u, const StateVector& eigenstate,
                          std::uint64_t power, std::uint64_t shots,
                          std::uint64_t seed) {
  double p0 = hadamard_test_probability(u, eigenstate, power, 0.0);
  double p90 = hadamard_test_probability(u, eigenstate, power, kPi / 2.0);
  double c_hat =
      2.0 * (static_cast<double>(sample_binomial(p0, shots,
                                                 derive_seed(seed, 0))) /
             static_cast<double>(shots)) -
      1.0;
  double s_hat =
      -(2.0 * (static_cast<double>(sample_binomial(p90, shots,
                                                   derive_seed(seed, 1))) /
               static_cast<double>(shots)) -
        1.0);
  double phi = std::atan2(s_hat, c_hat) / (2.0 * kPi);
  return phi - std::floor(phi);
}

}  // namespace

StateVector PreparedAmplitude::prepared_state() const {
  StateVector sv = StateVector::basis(n_qubits, 0);
  prep.apply(sv);
  return sv;
}

double PreparedAmplitude::exact_theta() const {
  double p0 = prepared_state().probability_of(ancilla, 0);
  return std::acos(std::sqrt(std::clamp(p0, 0.0, 1.0)));
}

std::uint64_t classical_pp_shots(double epsilon, double delta) {
  if (epsilon <= 0.0 || delta <= 0.0 || delta >= 1.0) {
    throw std::domain_error("need epsilon > 0 and delta in (0,1)");
  }
  return static_cast<std::uint64_t>(
      std::ceil(2.0 / (epsilon * epsilon) * std::log(2.0 / delta)));
}

Circuit build_q(const PreparedAmplitude& prep) {
  const int anc = prep.ancilla;
  Circuit q;
  q.n_qubits = prep.n_qubits;
  // S_chi: sign flip of the ancilla-|0> component.
  q.add(DiagonalOp{{anc},
                   [](std::uint64_t v) { return v == 0 ? kPi : 0.0; },
                   {}});
  q.append(prep.prep.inverse());
  // A S0 A^{-1} with the global minus folded in: reflect about |0...0>.
  std::vector<int> all(prep.n_qubits);
  for (int i = 0; i < prep.n_qubits; ++i) all[i] = i;
  q.add(DiagonalOp{std::move(all),
                   [](std::uint64_t v) { return v == 0 ? kPi : 0.0; },
                   {}});
  q.append(prep.prep);
  return q;
}

StateVector q_plane_eigenstate(const PreparedAmplitude& prep) {
  StateVector psi = prep.prepared_state();
  double p0 = psi.probability_of(prep.ancilla, 0);
  double c = std::sqrt(std::clamp(p0, 0.0, 1.0));
  double s = std::sqrt(std::clamp(1.0 - p0, 0.0, 1.0));
  if (c < 1e-9 || s < 1e-9) return psi;

  // |omega_+> = (|psi0,0> - i |psi1,1>)/sqrt(2), eigenvalue e^{2 i theta}.
  std::uint64_t anc_bit = std::uint64_t{1} << prep.ancilla;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<cdouble> amps(psi.size());
  for (std::uint64_t k = 0; k < psi.size(); ++k) {
    if (k & anc_bit) {
      amps[k] = cdouble{0.0, -1.0} * psi.amp(k) / s * inv_sqrt2;
    } else {
      amps[k] = psi.amp(k) / c * inv_sqrt2;
    }
  }
  return StateVector::from_amplitudes(psi.n_qubits(), std::move(amps));
}

Circuit qft_circuit(const std::vector<int>& qubits) {
  int m = static_cast<int>(qubits.size());
  if (m < 1) throw std::domain_error("qft needs at least one qubit");
  Circuit c;
  for (int q : qubits) c.n_qubits = std::max(c.n_qubits, q + 1);
  for (int j = m - 1; j >= 0; --j) {
    c.add(Gate::hadamard(qubits[j]));
    for (int i = j - 1; i >= 0; --i) {
      c.add(Gate::phase_z(2.0 * kPi / std::ldexp(1.0, j - i + 1), qubits[j])
                .with_controls({Control{qubits[i], true}}));
    }
  }
  for (int j = 0; j < m / 2; ++j) {
    int a = qubits[j], b = qubits[m - 1 - j];
    c.add(Gate::pauli_x(b).with_controls({Control{a, true}}));
    c.add(Gate::pauli_x(a).with_controls({Control{b, true}}));
    c.add(Gate::pauli_x(b).with_controls({Control{a, true}}));
  }
  return c;
}

QftEstimate qft_phase_estimate(const Circuit& u, const StateVector& eigenstate,
                               int m_bits, std::uint64_t seed, QftMode mode) {
  if (m_bits < 1 || m_bits > 24) {
    throw std::domain_error("qft bit count outside [1, 24]");
  }
  int n = eigenstate.n_qubits();
  if (mode == QftMode::Auto) {
    mode = (n + m_bits <= 16 && m_bits <= 8) ? QftMode::JointRegister
                                             : QftMode::Kickback;
  }

  cdouble lambda = eigenvalue_checked(u, eigenstate);
  std::uint64_t dim = std::uint64_t{1} << m_bits;
  std::vector<double> distribution(dim, 0.0);

  std::vector<int> control(m_bits);
  if (mode == QftMode::JointRegister) {
    if (n + m_bits > kMaxQubits) {
      throw std::domain_error("joint register too large");
    }
    for (int j = 0; j < m_bits; ++j) control[j] = n + j;
    std::vector<cdouble> joint(std::uint64_t{1} << (n + m_bits),
                               cdouble{0.0, 0.0});
    for (std::uint64_t k = 0; k < eigenstate.size(); ++k) {
      joint[k] = eigenstate.amp(k);
    }
    StateVector sv =
        StateVector::from_amplitudes(n + m_bits, std::move(joint));
    for (int j = 0; j < m_bits; ++j) apply_gate(sv, Gate::hadamard(n + j));
    for (int j = 0; j < m_bits; ++j) {
      Circuit cu = u.controlled(n + j);
      for (std::uint64_t rep = 0; rep < (std::uint64_t{1} << j); ++rep) {
        cu.apply(sv);
      }
    }
    qft_circuit(control).inverse().apply(sv);
    std::uint64_t sys_dim = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < dim; ++x) {
      double p = 0.0;
      for (std::uint64_t sys = 0; sys < sys_dim; ++sys) {
        p += std::norm(sv.amp((x << n) | sys));
      }
      distribution[x] = p;
    }
  } else {
    // Kickback: the control register factors out exactly for an eigenstate,
    // picking up phase 2 pi phi l on branch |l>.
    double phi = std::arg(lambda) / (2.0 * kPi);
    phi -= std::floor(phi);
    for (int j = 0; j < m_bits; ++j) control[j] = j;
    std::vector<cdouble> amps(dim);
    double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::uint64_t l = 0; l < dim; ++l) {
      double ang = 2.0 * kPi * phi * static_cast<double>(l);
      amps[l] = scale * cdouble{std::cos(ang), std::sin(ang)};
    }
    StateVector sv = StateVector::from_amplitudes(m_bits, std::move(amps));
    qft_circuit(control).inverse().apply(sv);
    for (std::uint64_t x = 0; x < dim; ++x) {
      distribution[x] = std::norm(sv.amp(x));
    }
  }

  QftEstimate out;
  out.distribution = std::move(distribution);
  out.outcome = sample_index(out.distribution, seed);
  out.phi_hat =
      static_cast<double>(out.outcome) / static_cast<double>(dim);
  out.u_applications = dim - 1;
  return out;
}

double hadamard_test_probability(const Circuit& u,
                                 const StateVector& eigenstate,
                                 std::uint64_t power, double theta) {
  if (power < 1) throw std::domain_error("power must be >= 1");
  eigenvalue_checked(u, eigenstate);
  int n = eigenstate.n_qubits();
  int control = n;
  std::vector<cdouble> joint(std::uint64_t{1} << (n + 1), cdouble{0.0, 0.0});
  for (std::uint64_t k = 0; k < eigenstate.size(); ++k) {
    joint[k] = eigenstate.amp(k);
  }
  StateVector sv = StateVector::from_amplitudes(n + 1, std::move(joint));
  apply_gate(sv, Gate::hadamard(control));
  apply_gate(sv, Gate::phase_z(theta, control));
  Circuit cu = u.controlled(control);
  for (std::uint64_t rep = 0; rep < power; ++rep) cu.apply(sv);
  apply_gate(sv, Gate::hadamard(control));
  return sv.probability_of(control, 0);
}

double classical_pp_invert(double p0_theta0, double p0_theta90) {
  double c = 2.0 * p0_theta0 - 1.0;
  double s = -(2.0 * p0_theta90 - 1.0);
  double phi = std::atan2(s, c) / (2.0 * kPi);
  return phi - std::floor(phi);
}

PhaseEstimate classical_pp_estimate(const Circuit& u,
                                    const StateVector& eigenstate,
                                    std::uint64_t shots, std::uint64_t seed) {
  if (shots < 100) throw std::domain_error("classical pp needs shots >= 100");
  double phi = two_angle_estimate(u, eigenstate, 1, shots, seed);
  return {phi, 2 * shots};
}

PhaseEstimate kitaev_estimate(const Circuit& u, const StateVector& eigenstate,
                              int m_bits, std::uint64_t shots_per_bit,
                              std::uint64_t seed) {
  if (m_bits < 1 || m_bits > 30) {
    throw std::domain_error("kitaev bit count outside [1, 30]");
  }
  if (shots_per_bit < 100) {
    throw std::domain_error("kitaev needs shots_per_bit >= 100");
  }
  // alpha_j estimates frac(2^{j-1} phi); reconciliation is safe while the
  // estimates stay within 1/4 of the truth, so flag anything past 1/6.
  constexpr double kReconcileTol = 1.0 / 6.0;

  std::vector<double> alpha(m_bits + 1, 0.0);
  for (int j = m_bits; j >= 1; --j) {
    alpha[j] = two_angle_estimate(u, eigenstate, std::uint64_t{1} << (j - 1),
                                  shots_per_bit, derive_seed(seed, j));
  }
  double beta = alpha[m_bits];
  for (int j = m_bits - 1; j >= 1; --j) {
    double cand0 = beta / 2.0;
    double cand1 = 0.5 + beta / 2.0;
    double d0 = circular_distance(alpha[j], cand0);
    double d1 = circular_distance(alpha[j], cand1);
    double best = std::min(d0, d1);
    if (best > kReconcileTol) {
      throw EstimationFailure(
          "kitaev bit reconciliation ambiguous at j=" + std::to_string(j) +
              " (distance " + std::to_string(best) + ")",
          beta);
    }
    beta = d0 <= d1 ? cand0 : cand1;
  }
  double scale = std::ldexp(1.0, m_bits);
  double phi = std::round(beta * scale) / scale;
  phi -= std::floor(phi);
  std::uint64_t apps =
      2 * shots_per_bit * ((std::uint64_t{1} << m_bits) - 1);
  return {phi, apps};
}

double qft_phase_error_bound(int m_bits, double delta) {
  double k = std::ceil(1.0 + 1.0 / (2.0 * delta));
  return k * std::ldexp(1.0, -m_bits);
}

AmplitudeEstimate estimate_amplitude(const PreparedAmplitude& prep,
                                     const AEConfig& cfg) {
  AmplitudeEstimate out;
  out.method = cfg.method;

  if (cfg.method == AEMethod::Exact) {
    double p0 = prep.prepared_state().probability_of(prep.ancilla, 0);
    out.a_hat = std::sqrt(std::clamp(p0, 0.0, 1.0));
    out.theta_hat = std::acos(out.a_hat);
    out.error_bound = 0.0;
    out.q_applications = 0;
    return out;
  }

  Circuit q = build_q(prep);
  StateVector eigenstate = q_plane_eigenstate(prep);

  double phi_hat = 0.0;
  switch (cfg.method) {
    case AEMethod::QFT: {
      QftEstimate est =
          qft_phase_estimate(q, eigenstate, cfg.precision_bits, cfg.seed);
      phi_hat = est.phi_hat;
      out.q_applications = est.u_applications;
      out.error_bound =
          std::min(1.0, kPi * qft_phase_error_bound(cfg.precision_bits, 0.05));
      break;
    }
    case AEMethod::ClassicalPP: {
      std::uint64_t shots = cfg.shots != 0
                                ? cfg.shots
                                : classical_pp_shots(cfg.epsilon, cfg.delta);
      PhaseEstimate est = classical_pp_estimate(q, eigenstate, shots, cfg.seed);
      phi_hat = est.phi_hat;
      out.q_applications = est.u_applications;
      // Hoeffding at delta/2 per angle, propagated through the atan2
      // inversion and a = cos(pi phi).
      double u = std::sqrt(std::log(4.0 / cfg.delta) /
                           (2.0 * static_cast<double>(shots)));
      out.error_bound = std::min(1.0, 2.0 * u);
      break;
    }
    case AEMethod::Kitaev: {
      PhaseEstimate est = kitaev_estimate(q, eigenstate, cfg.precision_bits,
                                          cfg.shots_per_bit, cfg.seed);
      phi_hat = est.phi_hat;
      out.q_applications = est.u_applications;
      out.error_bound =
          std::min(1.0, kPi * std::ldexp(1.0, -cfg.precision_bits));
      break;
    }
    default:
      throw std::domain_error("unknown estimation method");
  }

  out.theta_hat = kPi * fold_phase(phi_hat);
  out.a_hat = std::cos(out.theta_hat);
  return out;
}

}  // namespace expsum
