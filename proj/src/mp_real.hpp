#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <utility>

namespace expsum::detail {

// Thin RAII wrapper over mpfr_t with value semantics; only the operations
// the extended-precision zeta paths need.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  MpReal(double d, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  MpReal(const mpq_class& q, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  MpReal(const MpReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  MpReal(MpReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  MpReal& operator=(MpReal o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend MpReal operator+(const MpReal& a, const MpReal& b) {
    MpReal r(a.prec());
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator-(const MpReal& a, const MpReal& b) {
    MpReal r(a.prec());
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator*(const MpReal& a, const MpReal& b) {
    MpReal r(a.prec());
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator/(const MpReal& a, const MpReal& b) {
    MpReal r(a.prec());
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  MpReal operator-() const {
    MpReal r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  MpReal& operator+=(const MpReal& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator-=(const MpReal& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  static MpReal log_u64(unsigned long n, mpfr_prec_t prec) {
    MpReal r(prec);
    mpfr_log_ui(r.v_, n, MPFR_RNDN);
    return r;
  }
  static MpReal exp(const MpReal& x) {
    MpReal r(x.prec());
    mpfr_exp(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  static std::pair<MpReal, MpReal> sin_cos(const MpReal& x) {
    MpReal s(x.prec()), c(x.prec());
    mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
    return {std::move(s), std::move(c)};
  }

 private:
  mpfr_t v_;
};

// Just enough complex arithmetic over MpReal for the zeta sums.
struct MpComplex {
  MpReal re, im;

  MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
  explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}

  MpComplex& operator+=(const MpComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend MpComplex operator+(MpComplex a, const MpComplex& b) {
    a += b;
    return a;
  }
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend MpComplex operator*(const MpReal& a, const MpComplex& b) {
    return {a * b.re, a * b.im};
  }
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    MpReal d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }

  std::complex<double> to_complex() const {
    return {re.to_double(), im.to_double()};
  }
};

}  // namespace expsum::detail
