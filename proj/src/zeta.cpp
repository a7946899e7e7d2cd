#include "expsum/zeta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "expsum/compensated.hpp"
#include "expsum/errors.hpp"
#include "mp_real.hpp"

namespace expsum {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

mpfr_prec_t prec_for_digits(int digits) {
  return std::max<mpfr_prec_t>(128, static_cast<mpfr_prec_t>(
                                        std::ceil(3.3219 * (digits + 10))) +
                                        32);
}

}  // namespace

// ---------------------------------------------------------------------------
// Bernoulli / Faulhaber
// ---------------------------------------------------------------------------

const mpq_class& BernoulliCache::exact(int k) const {
  if (k < 0 || k > max_index) {
    throw std::domain_error("Bernoulli index out of cache range");
  }
  return numbers[k];
}

double BernoulliCache::as_double(int k) const { return exact(k).get_d(); }

BernoulliCache bernoulli_numbers(int K) {
  if (K < 0 || K > 200) {
    throw std::domain_error("Bernoulli cache supports 0 <= K <= 200");
  }
  BernoulliCache cache;
  cache.max_index = K;
  cache.numbers.resize(K + 1);
  cache.numbers[0] = 1;
  // sum_{j<=m} C(m+1, j) B_j = 0 for m >= 1.
  for (int m = 1; m <= K; ++m) {
    mpq_class acc = 0;
    for (int j = 0; j < m; ++j) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
      acc += binom * cache.numbers[j];
    }
    cache.numbers[m] = -acc / (m + 1);
  }
  return cache;
}

double bernoulli_polynomial(int j, double x) {
  if (j < 0 || j > 200) {
    throw std::domain_error("Bernoulli polynomial supports 0 <= j <= 200");
  }
  static thread_local BernoulliCache cache;  // grown on demand
  if (cache.max_index < j) cache = bernoulli_numbers(std::max(j, 64));
  double binom = 1.0;
  double power = 1.0;
  double acc = 0.0;
  for (int m = 0; m <= j; ++m) {
    acc += binom * cache.as_double(j - m) * power;
    binom *= static_cast<double>(j - m) / static_cast<double>(m + 1);
    power *= x;
  }
  return acc;
}

mpq_class bernoulli_polynomial_exact(int j, const mpq_class& x) {
  if (j < 0 || j > 200) {
    throw std::domain_error("Bernoulli polynomial supports 0 <= j <= 200");
  }
  BernoulliCache cache = bernoulli_numbers(j);
  mpq_class acc = 0;
  mpq_class power = 1;
  for (int m = 0; m <= j; ++m) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), j, m);
    acc += binom * cache.exact(j - m) * power;
    power *= x;
  }
  return acc;
}

mpz_class faulhaber_sum(std::uint64_t k, int j) {
  if (j < 0 || j > 60) {
    throw std::domain_error("Faulhaber closed form supports 0 <= j <= 60");
  }
  if (k >> 62 != 0) {
    throw std::domain_error("Faulhaber closed form supports k <= 2^62");
  }
  if (k == 0) return 0;
  mpz_class kp1;
  mpz_import(kp1.get_mpz_t(), 1, 1, sizeof(k), 0, 0, &k);
  kp1 += 1;
  BernoulliCache cache = bernoulli_numbers(j + 1);
  mpq_class value =
      (bernoulli_polynomial_exact(j + 1, mpq_class(kp1)) - cache.exact(j + 1)) /
      (j + 1);
  value.canonicalize();
  if (value.get_den() != 1) {
    throw NumericError("Faulhaber closed form did not reduce to an integer");
  }
  return value.get_num();
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin
// ---------------------------------------------------------------------------

EMParams select_em_params(cplx s, int digits) {
  if (digits < 1 || digits > 30) {
    throw std::domain_error("digits must be within [1, 30]");
  }
  int order = 2;
  while (order - 1 <=
         digits + 0.5 * std::log10(std::abs(s + cplx(order - 1, 0.0)))) {
    order += 2;
    if (order > 400) throw NumericError("Euler-Maclaurin order blew up");
  }
  double worst = 0.0;
  for (int j = 0; j <= order - 2; ++j) {
    worst = std::max(worst, std::abs(s + cplx(j, 0.0)));
  }
  auto n_terms = static_cast<long long>(std::floor(10.0 * worst / (2.0 * kPi))) + 1;
  if (n_terms < 1) n_terms = 1;
  return {n_terms, order};
}

std::complex<double> partial_power_sum(std::uint64_t n_terms, cplx s) {
  if (n_terms > (std::uint64_t{1} << 24)) {
    throw std::domain_error("partial power sum capped at 2^24 terms");
  }
  CompensatedComplex acc;
  for (std::uint64_t k = 1; k <= n_terms; ++k) {
    double lk = std::log(static_cast<double>(k));
    double mag = std::exp(-s.real() * lk);
    double ang = s.imag() * lk;
    acc.add(cplx{mag * std::cos(ang), -mag * std::sin(ang)});
  }
  return acc.total();
}

std::complex<double> partial_power_sum_hp(std::uint64_t n_terms, cplx s,
                                          int digits) {
  using detail::MpReal;
  if (n_terms > (std::uint64_t{1} << 24)) {
    throw std::domain_error("partial power sum capped at 2^24 terms");
  }
  mpfr_prec_t prec = prec_for_digits(digits);
  MpReal sigma(s.real(), prec), t(s.imag(), prec);
  MpReal re(prec), im(prec);
  for (std::uint64_t k = 1; k <= n_terms; ++k) {
    MpReal lk = MpReal::log_u64(k, prec);
    MpReal mag = MpReal::exp(-(sigma * lk));
    auto [sn, cs] = MpReal::sin_cos(t * lk);
    re += mag * cs;
    im -= mag * sn;
  }
  return {re.to_double(), im.to_double()};
}

namespace {

// Correction series sum_{k=1}^{K} binom(s+k-2, k-1) (B_k/k) N^{-s-k+1}
// plus the N^{1-s}/(s-1) continuation term, in doubles.
cplx em_tail_double(cplx s, long long n_terms, int order,
                    const BernoulliCache& bern) {
  double n = static_cast<double>(n_terms);
  cplx n_pow_1ms = std::exp((1.0 - s) * std::log(n));
  cplx tail = n_pow_1ms / (s - 1.0);
  cplx coef{1.0, 0.0};               // binom(s+k-2, k-1) iteratively
  cplx n_pow = n_pow_1ms / n;        // N^{-s-k+1} at k = 1
  for (int k = 1; k <= order; ++k) {
    if (k % 2 == 0 || k == 1) {
      tail += coef * (bern.as_double(k) / k) * n_pow;
    }
    coef *= (s + cplx(k - 1, 0.0)) / static_cast<double>(k);
    n_pow /= n;
  }
  return tail;
}

cplx zeta_em_mpfr(cplx s, int digits) {
  using detail::MpComplex;
  using detail::MpReal;
  EMParams params = select_em_params(s, digits);
  mpfr_prec_t prec = prec_for_digits(digits);
  BernoulliCache bern = bernoulli_numbers(params.order);

  MpReal sigma(s.real(), prec), t(s.imag(), prec);
  MpComplex sum(prec);
  for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(params.n_terms);
       ++k) {
    MpReal lk = MpReal::log_u64(k, prec);
    MpReal mag = MpReal::exp(-(sigma * lk));
    auto [sn, cs] = MpReal::sin_cos(t * lk);
    sum += MpComplex{mag * cs, -(mag * sn)};
  }

  auto n = static_cast<unsigned long>(params.n_terms);
  MpReal ln_n = MpReal::log_u64(n, prec);
  MpReal one(1.0, prec);
  MpReal mag = MpReal::exp((one - sigma) * ln_n);
  auto [sn, cs] = MpReal::sin_cos(t * ln_n);
  MpComplex n_pow_1ms{mag * cs, -(mag * sn)};  // N^{1-s}
  MpComplex s_minus_1{sigma - one, t};
  MpComplex tail = n_pow_1ms / s_minus_1;

  MpComplex coef{one, MpReal(prec)};
  MpReal inv_n = one / MpReal(static_cast<double>(n), prec);
  MpComplex n_pow = inv_n * n_pow_1ms;  // N^{-s-k+1} at k = 1
  for (int k = 1; k <= params.order; ++k) {
    if (k % 2 == 0 || k == 1) {
      mpq_class bk_over_k = bern.exact(k) / k;
      tail += MpReal(bk_over_k, prec) * (coef * n_pow);
    }
    MpComplex factor{(sigma + MpReal(static_cast<double>(k - 1), prec)) /
                         MpReal(static_cast<double>(k), prec),
                     t / MpReal(static_cast<double>(k), prec)};
    coef = coef * factor;
    n_pow = inv_n * n_pow;
  }
  return (sum + tail).to_complex();
}

}  // namespace

std::complex<double> euler_maclaurin_tail(cplx s, long long n_terms,
                                          int order) {
  BernoulliCache bern = bernoulli_numbers(order);
  return em_tail_double(s, n_terms, order, bern);
}

std::complex<double> zeta_euler_maclaurin(cplx s, int digits) {
  if (s == cplx{1.0, 0.0}) throw PoleError("zeta has a pole at s = 1");
  if (std::abs(s.imag()) > 1e6) {
    throw std::domain_error("Euler-Maclaurin path restricted to |t| <= 1e6");
  }
  if (digits < 1 || digits > 30) {
    throw std::domain_error("digits must be within [1, 30]");
  }
  if (digits > 14) return zeta_em_mpfr(s, digits);
  EMParams params = select_em_params(s, digits);
  BernoulliCache bern = bernoulli_numbers(params.order);
  cplx main = partial_power_sum(static_cast<std::uint64_t>(params.n_terms), s);
  return main + em_tail_double(s, params.n_terms, params.order, bern);
}

// ---------------------------------------------------------------------------
// log Gamma / chi
// ---------------------------------------------------------------------------

namespace {

// Godfrey's Lanczos coefficients, g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// log(sin(pi z)) up to an integer multiple of 2 pi i; consumers exponentiate.
cplx log_sin_pi(cplx z) {
  double y = z.imag();
  if (std::abs(y) < 8.0) return std::log(std::sin(kPi * z));
  const cplx i{0.0, 1.0};
  const cplx log_2i = std::log(cplx{0.0, 2.0});
  if (y < 0.0) {
    // e^{i pi z} dominates.
    return i * kPi * z - log_2i +
           std::log(1.0 - std::exp(-2.0 * i * kPi * z));
  }
  return -i * kPi * z - log_2i + cplx{0.0, kPi} +
         std::log(1.0 - std::exp(2.0 * i * kPi * z));
}

}  // namespace

std::complex<double> log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 &&
      std::abs(z.real() - std::round(z.real())) < 1e-12) {
    throw std::domain_error("log_gamma pole at nonpositive integer");
  }
  if (z.real() < 0.0) {
    // Reflection; the result is defined up to 2 pi i on this side, which is
    // fine for every consumer (they exponentiate).
    return std::log(cplx{kPi, 0.0}) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  cplx acc{kLanczos[0], 0.0};
  for (int k = 1; k < 15; ++k) {
    acc += kLanczos[k] / (z - 1.0 + static_cast<double>(k));
  }
  cplx base = z - 0.5 + kLanczosG;
  return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(base) - base +
         std::log(acc);
}

std::complex<double> riemann_siegel_chi(cplx s) {
  cplx a = (1.0 - s) / 2.0;
  cplx b = s / 2.0;
  for (cplx z : {a, b}) {
    if (std::abs(z.imag()) < 1e-12 &&
        std::abs(z.real() - std::round(z.real())) < 1e-12 &&
        z.real() < 0.5) {
      throw std::domain_error("chi(s) hits a Gamma pole");
    }
  }
  return std::exp((s - 0.5) * std::log(kPi) + log_gamma(a) - log_gamma(b));
}

// ---------------------------------------------------------------------------
// Riemann-Siegel remainder and zeta
// ---------------------------------------------------------------------------

long long rs_main_terms(double t) {
  if (t < 2.0 * kPi) {
    throw std::domain_error("Riemann-Siegel path needs t >= 2 pi");
  }
  return static_cast<long long>(std::floor(std::sqrt(t / (2.0 * kPi))));
}

namespace {

// log of the integrand e^{i pi z^2} z^{-s} / (e^{i pi z} - e^{-i pi z}),
// assembled from pieces that never overflow; exponentiated at the end so
// branch multiples of 2 pi i do not matter.
struct RsIntegrand {
  cplx s;
  double z0;
  cplx omega{std::sqrt(0.5), std::sqrt(0.5)};  // e^{i pi/4}

  cplx log_value(double u) const {
    const cplx i{0.0, 1.0};
    cplx z = z0 + omega * u;
    cplx log_num = i * kPi * z * z - s * std::log(z);
    cplx w = i * kPi * z;
    cplx log_den;
    if (w.real() >= 0.0) {
      log_den = w + std::log(1.0 - std::exp(-2.0 * w));
    } else {
      log_den = -w + cplx{0.0, kPi} + std::log(1.0 - std::exp(2.0 * w));
    }
    return log_num - log_den;
  }

  cplx value(double u) const {
    cplx lv = log_value(u);
    if (lv.real() < -745.0) return {0.0, 0.0};
    return std::exp(lv) * omega;  // includes dz = omega du
  }
};

}  // namespace

std::complex<double> riemann_siegel_remainder(cplx s, long long n_terms) {
  double z0 = static_cast<double>(n_terms) + 0.5;
  RsIntegrand g{s, z0};

  // Locate the peak of log|g| on a coarse grid, then the truncation points
  // where the integrand has fallen 1e-18 below it.
  double span = std::sqrt(2.0) * z0 + 30.0;
  double peak = -1e308;
  for (double u = -span; u <= span; u += 0.25) {
    peak = std::max(peak, g.log_value(u).real());
  }
  const double floor_log = peak + std::log(1e-18);
  double lo = -span, hi = span;
  while (lo < hi && g.log_value(lo).real() < floor_log) lo += 0.25;
  while (hi > lo && g.log_value(hi).real() < floor_log) hi -= 0.25;
  lo -= 0.5;
  hi += 0.5;

  // Trapezoid with step halving: geometric convergence for this analytic,
  // decaying integrand.
  double h = 0.25;
  auto sum_at = [&](double step) {
    CompensatedComplex acc;
    long long count = static_cast<long long>(std::floor((hi - lo) / step));
    for (long long k = 0; k <= count; ++k) {
      double u = lo + step * static_cast<double>(k);
      cplx v = g.value(u);
      if (k == 0 || k == count) v *= 0.5;
      acc.add(v);
    }
    return acc.total() * step;
  };
  cplx prev = sum_at(h);
  for (int iter = 0; iter < 14; ++iter) {
    h /= 2.0;
    cplx cur = sum_at(h);
    double change = std::abs(cur - prev);
    prev = cur;
    if (change <= 1e-12 * std::max(std::abs(cur), 1e-30)) return cur;
  }
  throw NumericError("Riemann-Siegel remainder quadrature did not converge");
}

std::complex<double> riemann_siegel_zeta(cplx s) {
  if (s.real() < 0.0 || s.real() > 1.0) {
    throw std::domain_error("Riemann-Siegel path restricted to sigma in [0,1]");
  }
  long long n = rs_main_terms(s.imag());
  cplx s_ref = 1.0 - std::conj(s);
  cplx i0 = partial_power_sum(static_cast<std::uint64_t>(n), s) +
            riemann_siegel_remainder(s, n);
  cplx i0_ref = partial_power_sum(static_cast<std::uint64_t>(n), s_ref) +
                riemann_siegel_remainder(s_ref, n);
  return i0 + riemann_siegel_chi(s) * std::conj(i0_ref);
}

// ---------------------------------------------------------------------------
// Hardy functions
// ---------------------------------------------------------------------------

double riemann_siegel_theta(double t) {
  cplx lg = log_gamma(cplx{0.25, t / 2.0});
  return lg.imag() - t / 2.0 * std::log(kPi);
}

namespace {

cplx zeta_on_line(double t, ZetaMethod method, int digits) {
  cplx s{0.5, t};
  if (method == ZetaMethod::RiemannSiegel) return riemann_siegel_zeta(s);
  return zeta_euler_maclaurin(s, digits);
}

}  // namespace

double hardy_Z(double t, ZetaMethod method, int digits) {
  cplx z = zeta_on_line(t, method, digits);
  double theta = riemann_siegel_theta(t);
  return (cplx{std::cos(theta), std::sin(theta)} * z).real();
}

double hardy_S(double t, ZetaMethod method, int digits) {
  cplx z = zeta_on_line(t, method, digits);
  if (std::abs(z) < 1e-12) {
    throw NumericError("zeta(1/2 + it) too close to zero for arg");
  }
  return std::arg(z) / kPi;
}

// ---------------------------------------------------------------------------
// Hiary block parameters
// ---------------------------------------------------------------------------

HiaryBlockParams hiary_block_parameters(double t, double beta, double lambda) {
  if (!(beta > 0.0 && beta < 0.5)) {
    throw std::domain_error("need 0 < beta < 1/2");
  }
  if (t < 2.0 * kPi) throw std::domain_error("need t >= 2 pi");
  HiaryBlockParams out;
  out.degree = static_cast<int>(std::floor(1.0 / (0.5 - beta))) - 1;
  out.j_count = static_cast<long long>(
      std::ceil((out.degree + 1) * (lambda + 3.0) * std::log(t)));
  out.p_half =
      static_cast<long long>(std::floor(0.5 * std::sqrt(t / (2.0 * kPi))));
  double k_low = static_cast<double>(out.p_half) * std::pow(t, beta - 0.5);
  out.block = static_cast<long long>(std::floor(k_low)) + 1;
  return out;
}

}  // namespace expsum
