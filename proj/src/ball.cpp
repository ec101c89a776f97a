#include "ball.hpp"

#include <algorithm>
#include <sstream>

namespace kummer {

namespace {
constexpr mpfr_prec_t kRadPrec = 32;

// Upper bound for |x|, rounded up into r.
void abs_rndu(mpfr_ptr r, mpfr_srcptr x) { mpfr_abs(r, x, MPFR_RNDU); }
}  // namespace

RealBall::RealBall(mpfr_prec_t prec) : mid_(prec), rad_(kRadPrec) {}

void RealBall::add_rounding_error(int ternary) {
  if (ternary == 0) return;  // MPFR reports the operation as exact
  if (mpfr_zero_p(mid_.get()))
    fail(ErrorCode::internal, "ball arithmetic: inexact rounding to zero (underflow)");
  // |error| <= ulp(mid) = 2^(exp - prec) >= the true 0.5 ulp bound.
  Mpf ulp(kRadPrec);
  mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid_.get()) - prec(), MPFR_RNDU);
  mpfr_add(rad_.get(), rad_.get(), ulp.get(), MPFR_RNDU);
}

RealBall RealBall::from_rational(const Rational& q, mpfr_prec_t prec) {
  RealBall b(prec);
  int t = mpfr_set_q(b.mid_.get(), q.get_mpq_t(), MPFR_RNDN);
  b.add_rounding_error(t);
  return b;
}

RealBall RealBall::from_int(long v, mpfr_prec_t prec) {
  RealBall b(prec);
  mpfr_set_si(b.mid_.get(), v, MPFR_RNDN);
  return b;
}

RealBall RealBall::from_bigint(const BigInt& v, mpfr_prec_t prec) {
  RealBall b(prec);
  int t = mpfr_set_z(b.mid_.get(), v.get_mpz_t(), MPFR_RNDN);
  b.add_rounding_error(t);
  return b;
}

RealBall RealBall::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
  RealBall b(prec);
  if (mpfr_cmp(lo, hi) > 0)
    fail(ErrorCode::internal, "ball from_endpoints: lo > hi");
  Mpf half(prec + 8);
  mpfr_add(half.get(), lo, hi, MPFR_RNDN);
  mpfr_div_2ui(half.get(), half.get(), 1, MPFR_RNDN);
  mpfr_set(b.mid_.get(), half.get(), MPFR_RNDN);
  Mpf d1(kRadPrec), d2(kRadPrec);
  mpfr_sub(d1.get(), hi, b.mid_.get(), MPFR_RNDU);
  mpfr_sub(d2.get(), b.mid_.get(), lo, MPFR_RNDU);
  mpfr_max(b.rad_.get(), d1.get(), d2.get(), MPFR_RNDU);
  return b;
}

RealBall RealBall::pi(mpfr_prec_t prec) {
  RealBall b(prec);
  int t = mpfr_const_pi(b.mid_.get(), MPFR_RNDN);
  b.add_rounding_error(t);
  return b;
}

RealBall RealBall::operator+(const RealBall& o) const {
  RealBall b(std::max(prec(), o.prec()));
  int t = mpfr_add(b.mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  mpfr_add(b.rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  b.add_rounding_error(t);
  return b;
}

RealBall RealBall::operator-(const RealBall& o) const {
  RealBall b(std::max(prec(), o.prec()));
  int t = mpfr_sub(b.mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  mpfr_add(b.rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  b.add_rounding_error(t);
  return b;
}

RealBall RealBall::operator*(const RealBall& o) const {
  RealBall b(std::max(prec(), o.prec()));
  int t = mpfr_mul(b.mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  // rad = |m1| r2 + |m2| r1 + r1 r2, all rounded up
  Mpf am1(kRadPrec), am2(kRadPrec), acc(kRadPrec), term(kRadPrec);
  abs_rndu(am1.get(), mid_.get());
  abs_rndu(am2.get(), o.mid_.get());
  mpfr_mul(acc.get(), am1.get(), o.rad_.get(), MPFR_RNDU);
  mpfr_mul(term.get(), am2.get(), rad_.get(), MPFR_RNDU);
  mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDU);
  mpfr_mul(term.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDU);
  mpfr_set(b.rad_.get(), acc.get(), MPFR_RNDU);
  b.add_rounding_error(t);
  return b;
}

RealBall RealBall::operator-() const {
  RealBall b(prec());
  mpfr_neg(b.mid_.get(), mid_.get(), MPFR_RNDN);  // exact
  mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
  return b;
}

RealBall RealBall::abs() const {
  // | |x| - |mid| | <= |x - mid|, so the same radius around |mid| encloses.
  RealBall b(prec());
  mpfr_abs(b.mid_.get(), mid_.get(), MPFR_RNDN);  // exact
  mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
  return b;
}

void RealBall::endpoints(mpfr_ptr lo, mpfr_ptr hi) const {
  mpfr_sub(lo, mid_.get(), rad_.get(), MPFR_RNDD);
  mpfr_add(hi, mid_.get(), rad_.get(), MPFR_RNDU);
}

RealBall RealBall::square() const {
  const mpfr_prec_t p = prec();
  Mpf lo(p), hi(p), rlo(p), rhi(p);
  endpoints(lo.get(), hi.get());
  if (mpfr_sgn(lo.get()) >= 0) {
    mpfr_sqr(rlo.get(), lo.get(), MPFR_RNDD);
    mpfr_sqr(rhi.get(), hi.get(), MPFR_RNDU);
  } else if (mpfr_sgn(hi.get()) <= 0) {
    mpfr_sqr(rlo.get(), hi.get(), MPFR_RNDD);
    mpfr_sqr(rhi.get(), lo.get(), MPFR_RNDU);
  } else {
    mpfr_set_zero(rlo.get(), 1);
    Mpf a(p), b(p);
    mpfr_sqr(a.get(), lo.get(), MPFR_RNDU);
    mpfr_sqr(b.get(), hi.get(), MPFR_RNDU);
    mpfr_max(rhi.get(), a.get(), b.get(), MPFR_RNDU);
  }
  return from_endpoints(rlo.get(), rhi.get(), p);
}

RealBall RealBall::sqrt_nonneg() const {
  const mpfr_prec_t p = prec();
  Mpf lo(p), hi(p), rlo(p), rhi(p);
  endpoints(lo.get(), hi.get());
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  if (mpfr_sgn(hi.get()) < 0)
    fail(ErrorCode::internal, "sqrt_nonneg: interval entirely negative");
  mpfr_sqrt(rlo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqrt(rhi.get(), hi.get(), MPFR_RNDU);
  return from_endpoints(rlo.get(), rhi.get(), p);
}

RealBall RealBall::recip() const {
  if (contains_zero()) fail(ErrorCode::internal, "recip of ball containing zero");
  const mpfr_prec_t p = prec();
  Mpf lo(p), hi(p), rlo(p), rhi(p);
  endpoints(lo.get(), hi.get());
  mpfr_ui_div(rlo.get(), 1, hi.get(), MPFR_RNDD);
  mpfr_ui_div(rhi.get(), 1, lo.get(), MPFR_RNDU);
  return from_endpoints(rlo.get(), rhi.get(), p);
}

RealBall RealBall::div_ui(unsigned long d) const {
  if (d == 0) fail(ErrorCode::invalid_argument, "division by zero");
  RealBall b(prec());
  int t = mpfr_div_ui(b.mid_.get(), mid_.get(), d, MPFR_RNDN);
  mpfr_div_ui(b.rad_.get(), rad_.get(), d, MPFR_RNDU);
  b.add_rounding_error(t);
  return b;
}

RealBall RealBall::mul_rational(const Rational& q) const {
  return *this * from_rational(q, prec());
}

RealBall RealBall::exp() const {
  const mpfr_prec_t p = prec();
  Mpf lo(p), hi(p), rlo(p), rhi(p);
  endpoints(lo.get(), hi.get());
  mpfr_exp(rlo.get(), lo.get(), MPFR_RNDD);
  mpfr_exp(rhi.get(), hi.get(), MPFR_RNDU);
  return from_endpoints(rlo.get(), rhi.get(), p);
}

RealBall RealBall::log() const {
  const mpfr_prec_t p = prec();
  Mpf lo(p), hi(p), rlo(p), rhi(p);
  endpoints(lo.get(), hi.get());
  if (mpfr_sgn(lo.get()) <= 0)
    fail(ErrorCode::domain_error, "log of interval not strictly positive");
  mpfr_log(rlo.get(), lo.get(), MPFR_RNDD);
  mpfr_log(rhi.get(), hi.get(), MPFR_RNDU);
  return from_endpoints(rlo.get(), rhi.get(), p);
}

RealBall RealBall::sin() const {
  RealBall b(prec());
  int t = mpfr_sin(b.mid_.get(), mid_.get(), MPFR_RNDN);
  mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);  // Lipschitz constant 1
  b.add_rounding_error(t);
  return b;
}

RealBall RealBall::cos() const {
  RealBall b(prec());
  int t = mpfr_cos(b.mid_.get(), mid_.get(), MPFR_RNDN);
  mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
  b.add_rounding_error(t);
  return b;
}

RealBall RealBall::pow_ui(unsigned long e) const {
  RealBall acc = from_int(1, prec());
  RealBall base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base.square();
  }
  return acc;
}

RealBall RealBall::intersect(const RealBall& o) const {
  const mpfr_prec_t p = std::max(prec(), o.prec());
  Mpf lo1(p), hi1(p), lo2(p), hi2(p);
  endpoints(lo1.get(), hi1.get());
  o.endpoints(lo2.get(), hi2.get());
  mpfr_max(lo1.get(), lo1.get(), lo2.get(), MPFR_RNDD);
  mpfr_min(hi1.get(), hi1.get(), hi2.get(), MPFR_RNDU);
  if (mpfr_cmp(lo1.get(), hi1.get()) > 0)
    fail(ErrorCode::internal, "disjoint enclosures of the same quantity");
  return from_endpoints(lo1.get(), hi1.get(), p);
}

namespace {
Rational mpfr_to_rational(mpfr_srcptr x) {
  if (!mpfr_number_p(x)) fail(ErrorCode::internal, "non-finite ball endpoint");
  if (mpfr_zero_p(x)) return Rational(0);
  BigInt m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational r(m);
  if (e >= 0) {
    mpz_mul_2exp(mpq_numref(r.get_mpq_t()), mpq_numref(r.get_mpq_t()),
                 static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(mpq_denref(r.get_mpq_t()), mpq_denref(r.get_mpq_t()),
                 static_cast<mp_bitcnt_t>(-e));
  }
  r.canonicalize();
  return r;
}
}  // namespace

Rational RealBall::lower() const {
  Mpf lo(prec() + kRadPrec), hi(prec() + kRadPrec);
  endpoints(lo.get(), hi.get());
  return mpfr_to_rational(lo.get());
}

Rational RealBall::upper() const {
  Mpf lo(prec() + kRadPrec), hi(prec() + kRadPrec);
  endpoints(lo.get(), hi.get());
  return mpfr_to_rational(hi.get());
}

bool RealBall::is_exact_zero() const {
  return mpfr_zero_p(mid_.get()) && mpfr_zero_p(rad_.get());
}

bool RealBall::contains_zero() const { return lower() <= 0 && upper() >= 0; }

bool RealBall::certainly_positive() const { return lower() > 0; }

bool RealBall::le(const RealBall& o) const { return upper() <= o.lower(); }

bool RealBall::lt(const RealBall& o) const { return upper() < o.lower(); }

bool RealBall::overlaps(const RealBall& o) const {
  return !(upper() < o.lower() || o.upper() < lower());
}

std::string RealBall::to_string(std::size_t digits) const {
  std::ostringstream os;
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), mid_.get());
  os << s;
  mpfr_free_str(s);
  mpfr_asprintf(&s, "%.3Rg", rad_.get());
  os << " +/- " << s;
  mpfr_free_str(s);
  return os.str();
}

RealBall nth_root(const BigInt& v, unsigned long n, mpfr_prec_t prec) {
  if (v < 0 || n == 0) fail(ErrorCode::invalid_argument, "nth_root: v >= 0, n >= 1");
  Mpf x(prec), lo(prec), hi(prec);
  mpfr_set_z(x.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_rootn_ui(lo.get(), x.get(), n, MPFR_RNDD);
  mpfr_set_z(x.get(), v.get_mpz_t(), MPFR_RNDU);
  mpfr_rootn_ui(hi.get(), x.get(), n, MPFR_RNDU);
  return RealBall::from_endpoints(lo.get(), hi.get(), prec);
}

ComplexBall ComplexBall::from_real(const RealBall& r) {
  return {r, RealBall(r.prec())};
}

Rational ComplexBall::radius() const {
  Rational rr = mpfr_to_rational(re.rad());
  Rational ri = mpfr_to_rational(im.rad());
  return std::max(rr, ri);
}

std::string ComplexBall::to_string(std::size_t digits) const {
  return re.to_string(digits) + " + (" + im.to_string(digits) + ")*i";
}

}  // namespace kummer
