#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <vector>

namespace expsum {

// ---------------------------------------------------------------------------
// Bernoulli / Faulhaber machinery (exact rationals)
// ---------------------------------------------------------------------------

// B_0 .. B_K in the ze^{zt}/(e^z - 1) convention (B_1 = -1/2), exact.
struct BernoulliCache {
  std::vector<mpq_class> numbers;
  int max_index = -1;

  const mpq_class& exact(int k) const;
  double as_double(int k) const;
};

BernoulliCache bernoulli_numbers(int K);  // K <= 200

// B_j(x) = sum_m C(j,m) B_{j-m} x^m, double evaluation.
double bernoulli_polynomial(int j, double x);
// Exact evaluation at a rational point (used by the Faulhaber closed form).
mpq_class bernoulli_polynomial_exact(int j, const mpq_class& x);

// H_{k,j} = sum_{n=1}^{k} n^j, exactly, via (B_{j+1}(k+1) - B_{j+1})/(j+1).
mpz_class faulhaber_sum(std::uint64_t k, int j);  // j <= 60

// ---------------------------------------------------------------------------
// Euler-Maclaurin evaluation of zeta
// ---------------------------------------------------------------------------

struct EMParams {
  long long n_terms;      // main-sum cutoff N
  int order;              // correction order K (even)
};

// Smallest even K with K-1 > D + log10|s+K-1|/2, then smallest N with
// |s+j|/(2 pi N) < 1/10 for all j <= K-2. D <= 30.
EMParams select_em_params(std::complex<double> s, int digits);

// Compensated sum_{k=1}^{N} k^{-s} in doubles (N <= 2^24).
std::complex<double> partial_power_sum(std::uint64_t n_terms,
                                       std::complex<double> s);
// Same sum at >= `digits` decimal digits internally (MPFR), rounded to
// double on return. Independent high-precision oracle for the double path.
std::complex<double> partial_power_sum_hp(std::uint64_t n_terms,
                                          std::complex<double> s, int digits);

// The Euler-Maclaurin continuation terms: N^{1-s}/(s-1) +
// sum_{k<=K} binom(s+k-2,k-1) (B_k/k) N^{-s-k+1}. zeta = main sum + tail.
std::complex<double> euler_maclaurin_tail(std::complex<double> s,
                                          long long n_terms, int order);

// zeta(s) with |error| <= 10^{-digits} by parameter selection; s != 1,
// |Im s| <= 1e6, digits <= 30 (extended precision is used above 14).
std::complex<double> zeta_euler_maclaurin(std::complex<double> s, int digits);

// ---------------------------------------------------------------------------
// Riemann-Siegel evaluation
// ---------------------------------------------------------------------------

// log Gamma, Lanczos approximation (Godfrey's 15-coefficient set,
// g = 607/128); analytic (single-valued) on Re z > 0.
std::complex<double> log_gamma(std::complex<double> z);

// chi(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2).
std::complex<double> riemann_siegel_chi(std::complex<double> s);

// Number of main-sum terms floor(sqrt(t / 2 pi)).
long long rs_main_terms(double t);

// I_N(s): the contour integral of e^{i pi z^2} z^{-s} / (e^{i pi z}-e^{-i pi z})
// along the slope-e^{i pi/4} line through N + 1/2, by trapezoid quadrature
// with step halving to 1e-12 relative change.
std::complex<double> riemann_siegel_remainder(std::complex<double> s,
                                              long long n_terms);

// zeta(s) = I_0(s) + chi(s) conj(I_0(1 - conj(s))) with
// I_0 = main sum + I_N; needs t >= 2 pi and sigma in [0, 1].
std::complex<double> riemann_siegel_zeta(std::complex<double> s);

// ---------------------------------------------------------------------------
// Hardy functions and zero scanning support
// ---------------------------------------------------------------------------

enum class ZetaMethod { EulerMaclaurin, RiemannSiegel };

// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) ln pi; continuous in t.
double riemann_siegel_theta(double t);

// Z(t) = Re( e^{i theta(t)} zeta(1/2 + it) ); real up to roundoff, sign
// changes locate critical-line zeros.
double hardy_Z(double t, ZetaMethod method = ZetaMethod::EulerMaclaurin,
               int digits = 13);

// S(t) = arg zeta(1/2 + it) / pi, principal value per evaluation.
// Throws NumericError when |zeta| < 1e-12.
double hardy_S(double t, ZetaMethod method = ZetaMethod::EulerMaclaurin,
               int digits = 13);

// ---------------------------------------------------------------------------
// Hiary block parameters
// ---------------------------------------------------------------------------

struct HiaryBlockParams {
  int degree;        // d = floor(1/(1/2-beta)) - 1
  long long j_count; // J = ceil((d+1)(lambda+3) ln t)
  long long block;   // K with P t^{beta-1/2} < K <= P t^{beta-1/2} + 1
  long long p_half;  // P = floor(sqrt(t/2pi)/2)
};

HiaryBlockParams hiary_block_parameters(double t, double beta, double lambda);

}  // namespace expsum
