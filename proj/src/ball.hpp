#pragma once

// Rigorous real/complex enclosures: midpoint-radius balls over MPFR with
// outward rounding. Every operation encloses the exact result.

#include <cstdint>
#include <string>

#include <mpfr.h>

#include "rational.hpp"

namespace kummer {

// RAII wrapper for a single mpfr value.
class Mpf {
 public:
  explicit Mpf(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Mpf(const Mpf& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpf(Mpf&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Mpf& operator=(const Mpf& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpf& operator=(Mpf&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpf() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

class RealBall {
 public:
  // Exact zero at the given precision.
  explicit RealBall(mpfr_prec_t prec = 64);

  static RealBall from_rational(const Rational& q, mpfr_prec_t prec);
  static RealBall from_int(long v, mpfr_prec_t prec);
  static RealBall from_bigint(const BigInt& v, mpfr_prec_t prec);
  // Enclosure from directed-rounded endpoints.
  static RealBall from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec);
  static RealBall pi(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(mid_.get()); }
  mpfr_srcptr mid() const { return mid_.get(); }
  mpfr_srcptr rad() const { return rad_.get(); }

  RealBall operator+(const RealBall& o) const;
  RealBall operator-(const RealBall& o) const;
  RealBall operator*(const RealBall& o) const;
  RealBall operator-() const;
  RealBall abs() const;
  RealBall square() const;          // tight [min,max] of x^2 over the interval
  RealBall sqrt_nonneg() const;     // sqrt on the interval clamped to [0, inf)
  RealBall recip() const;           // requires the ball to exclude zero
  RealBall div_ui(unsigned long d) const;
  RealBall mul_rational(const Rational& q) const;
  RealBall exp() const;
  RealBall log() const;             // requires a strictly positive ball
  RealBall sin() const;
  RealBall cos() const;
  RealBall pow_ui(unsigned long e) const;

  // Intersection of two valid enclosures of the same quantity.
  RealBall intersect(const RealBall& o) const;

  Rational lower() const;  // exact dyadic lower bound
  Rational upper() const;  // exact dyadic upper bound
  Rational width() const { return upper() - lower(); }

  bool is_exact_zero() const;
  bool contains_zero() const;
  bool certainly_positive() const;
  // interval comparisons: true only when certain
  bool le(const RealBall& o) const;   // upper(this) <= lower(o)
  bool lt(const RealBall& o) const;
  bool ge(const RealBall& o) const { return o.le(*this); }
  bool gt(const RealBall& o) const { return o.lt(*this); }
  bool le_rational(const Rational& q) const { return upper() <= q; }
  bool ge_rational(const Rational& q) const { return lower() >= q; }
  bool overlaps(const RealBall& o) const;

  std::string to_string(std::size_t digits = 20) const;

 private:
  void add_rounding_error(int ternary);
  void endpoints(mpfr_ptr lo, mpfr_ptr hi) const;

  Mpf mid_;  // precision = working precision, rounded to nearest
  Mpf rad_;  // small fixed precision, always rounded up
};

// Enclosure of v^(1/n) for an exact nonnegative integer v.
RealBall nth_root(const BigInt& v, unsigned long n, mpfr_prec_t prec);

struct ComplexBall {
  RealBall re, im;

  explicit ComplexBall(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  ComplexBall(RealBall r, RealBall i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexBall from_real(const RealBall& r);

  ComplexBall operator+(const ComplexBall& o) const { return {re + o.re, im + o.im}; }
  ComplexBall operator-(const ComplexBall& o) const { return {re - o.re, im - o.im}; }
  ComplexBall operator*(const ComplexBall& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  ComplexBall mul_real(const RealBall& s) const { return {re * s, im * s}; }
  ComplexBall mul_rational(const Rational& q) const {
    return {re.mul_rational(q), im.mul_rational(q)};
  }
  ComplexBall conj() const { return {re, -im}; }

  RealBall abs_sq() const { return re.square() + im.square(); }
  RealBall abs() const { return abs_sq().sqrt_nonneg(); }
  Rational radius() const;  // common circumscribed error bound, exact rational

  std::string to_string(std::size_t digits = 20) const;
};

}  // namespace kummer
