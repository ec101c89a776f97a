#include "bounds.hpp"

#include <sstream>

namespace kummer {

namespace {

RealBall rb(const Rational& q, long prec) { return RealBall::from_rational(q, prec); }

// exp(-k log u / loglog u) for a strictly positive ball u with loglog u > 0
// certified by the caller's domain.
RealBall damp_factor(const RealBall& u, const Rational& k) {
  RealBall lg = u.log();
  RealBall llg = lg.log();
  RealBall ratio = lg * llg.recip();
  return (ratio.mul_rational(-k)).exp();
}

}  // namespace

RealBall f_val(const Rational& t, const Rational& k, long precision_bits) {
  if (t < 0) fail(ErrorCode::domain_error, "f is defined on nonnegative arguments");
  const long prec = precision_bits;
  if (t == 0) return RealBall(prec);
  if (t == 1) return RealBall::from_int(1, prec);
  if (t < 1) fail(ErrorCode::domain_error, "f undefined on (0,1): loglog t does not exist");
  // t in (1, e] has loglog t <= 0; decide t > e rigorously (t is rational != e)
  for (long p = prec;; p *= 2) {
    RealBall e_ball = RealBall::from_int(1, p).exp();
    Rational tlo = e_ball.lower(), thi = e_ball.upper();
    if (t > thi) break;
    if (t <= tlo) fail(ErrorCode::domain_error, "f undefined on (1, e]: loglog t <= 0");
    if (p > (1 << 16)) fail(ErrorCode::internal, "cannot separate t from e");
  }
  RealBall tb = rb(t, prec);
  return tb * damp_factor(tb, k);
}

RealBall f_ball(const RealBall& t, const Rational& k) {
  return t * damp_factor(t, k);
}

RealBall g_val(const Rational& t, const BoundConfig& cfg) {
  if (t < 0) fail(ErrorCode::domain_error, "g is defined on nonnegative arguments");
  const long prec = cfg.precision_bits;
  if (t == 0) return RealBall(prec);
  RealBall tp = rb(t + cfg.c1, prec);
  return rb(t, prec) * damp_factor(tp, cfg.k);
}

RealBall g_ball(const RealBall& t, const Rational& k, const Rational& c1) {
  RealBall tp = t + rb(c1, t.prec());
  return t * damp_factor(tp, k);
}

namespace {

// certainly lhs <= rhs?
bool le_certain(const RealBall& lhs, const RealBall& rhs) {
  return lhs.upper() <= rhs.lower();
}

std::string fmt_rat(const Rational& q) { return q.get_str(); }

// Display 1 of the c3 search: g(t/(log t)^delta) <= c2 g(t) / (2 loglog t').
// Returns +1 certainly holds, -1 certainly fails, 0 undecided at this precision.
int check_c3_display(const BigInt& t, const BoundConfig& cfg0, long prec) {
  BoundConfig cfg = cfg0;
  cfg.precision_bits = prec;
  Rational tq(t);
  RealBall tb = rb(tq, prec);
  RealBall logt = tb.log();
  // (log t)^delta = exp(delta log log t)
  RealBall pow_delta = (logt.log().mul_rational(cfg.delta)).exp();
  RealBall arg = tb * pow_delta.recip();
  RealBall lhs = g_ball(arg, cfg.k, cfg.c1);
  RealBall loglog_tp = rb(tq + cfg.c1, prec).log().log();
  RealBall rhs =
      g_val(tq, cfg) * loglog_tp.recip().mul_rational(cfg.c2 / Rational(2));
  if (le_certain(lhs, rhs)) return 1;
  if (rhs.upper() < lhs.lower()) return -1;
  return 0;
}

// Display 3 of the c4 search at a single (s, t): t g(s/t) >= 2 g(s).
int check_c4_point(const BigInt& s, const BigInt& t, const BoundConfig& cfg0, long prec) {
  BoundConfig cfg = cfg0;
  cfg.precision_bits = prec;
  Rational sq(s), tq(t);
  RealBall lhs = g_val(sq / tq, cfg).mul_rational(tq);
  RealBall rhs = g_val(sq, cfg).mul_rational(Rational(2));
  if (rhs.upper() <= lhs.lower()) return 1;
  if (lhs.upper() < rhs.lower()) return -1;
  return 0;
}

}  // namespace

std::string BoundConfig::to_json() const {
  std::ostringstream os;
  os << "{\"k\":\"" << fmt_rat(k) << "\",\"delta\":\"" << fmt_rat(delta) << "\",\"c1\":\""
     << fmt_rat(c1) << "\",\"c2\":\"" << fmt_rat(c2) << "\",\"c3\":"
     << (c3 ? "\"" + c3->get_str() + "\"" : "null") << ",\"c4\":"
     << (c4 ? "\"" + c4->get_str() + "\"" : "null") << ",\"search_cap\":\""
     << search_cap.get_str() << "\",\"precision_bits\":" << precision_bits
     << ",\"c1_note\":\"" << c1_note << "\",\"c3_note\":\"" << c3_note
     << "\",\"c4_note\":\"" << c4_note << "\"}";
  return os.str();
}

BoundConfig derive_constants(const Rational& k, const Rational& delta,
                             const BigInt& search_cap, long precision_bits) {
  const long prec = precision_bits;
  BoundConfig cfg;
  cfg.k = k;
  cfg.delta = delta;
  cfg.search_cap = search_cap;
  cfg.precision_bits = precision_bits;

  // k > log 2 (decidable: k rational, log 2 irrational)
  {
    RealBall log2 = RealBall::from_int(2, prec).log();
    if (Rational(k) <= log2.lower())
      fail(ErrorCode::invalid_argument, "derive_constants requires k > log 2");
    if (!(Rational(k) > log2.upper()))
      fail(ErrorCode::invalid_argument, "k is not separated from log 2 at this precision");
    // 0 < delta < 1 - log2/k
    RealBall bound = RealBall::from_int(1, prec) - log2.mul_rational(1 / k);
    if (delta <= 0 || !(delta < bound.lower()))
      fail(ErrorCode::invalid_argument,
           "derive_constants requires 0 < delta < 1 - log 2 / k");
  }

  // c1: smallest power of two >= e^(e^2), then grid-certify that g is
  // nondecreasing and midpoint-concave.
  RealBall e1 = RealBall::from_int(1, prec).exp();
  RealBall ee2 = e1.square().exp();
  BigInt c1(1);
  while (!(Rational(c1) >= ee2.upper())) c1 *= 2;
  for (int attempt = 0; attempt < 4; ++attempt, c1 *= 2) {
    cfg.c1 = Rational(c1);
    cfg.c2 = k / (Rational(2) * (Rational(1) + cfg.c1));
    // sample grid: 0..64 step 1, then doubling up to 2^40
    std::vector<Rational> grid;
    for (long t = 0; t <= 64; ++t) grid.emplace_back(t);
    for (BigInt t(128); t <= BigInt(1) << 40; t *= 2) grid.emplace_back(t);
    bool ok = true;
    std::vector<RealBall> vals;
    vals.reserve(grid.size());
    for (const Rational& t : grid) vals.push_back(g_val(t, cfg));
    for (std::size_t i = 0; ok && i + 1 < grid.size(); ++i)
      if (!le_certain(vals[i], vals[i + 1])) ok = false;
    for (std::size_t i = 0; ok && i + 2 < grid.size(); ++i) {
      Rational mid = (grid[i] + grid[i + 2]) / 2;
      RealBall lhs = (vals[i] + vals[i + 2]).div_ui(2);
      if (!le_certain(lhs, g_val(mid, cfg))) ok = false;
    }
    if (ok) {
      cfg.c1_note = "nondecreasing+midpoint-concave certified on {0..64} u {2^7..2^40}";
      break;
    }
    cfg.c1_note = "grid certification failed; c1 doubled";
  }

  // c3: longest all-verified integer suffix [c3, cap] for display 1.
  {
    BigInt t = search_cap;
    long checked = 0;
    const long scan_limit = 200000;
    std::optional<BigInt> lowest;
    std::string fail_evidence;
    while (t >= 2 && checked < scan_limit) {
      int r = check_c3_display(t, cfg, prec);
      if (r == 0) r = check_c3_display(t, cfg, prec * 2);
      if (r != 1) {
        std::ostringstream os;
        os << (r == -1 ? "display fails at t=" : "display undecided at t=") << t.get_str();
        fail_evidence = os.str();
        break;
      }
      lowest = t;
      t -= 1;
      ++checked;
    }
    if (!lowest) {
      cfg.c3.reset();
      cfg.c3_note = "search exhausted: " + fail_evidence;
    } else {
      cfg.c3 = *lowest;
      std::ostringstream os;
      os << "certified on integers [" << lowest->get_str() << ", " << search_cap.get_str()
         << "]";
      if (!fail_evidence.empty()) os << "; " << fail_evidence;
      else if (checked >= scan_limit) os << "; scan truncated at " << scan_limit << " points";
      os << "; tail above cap unverified";
      cfg.c3_note = os.str();
    }
  }

  // c4: longest all-verified integer suffix [c4, cap] for display 3 over the
  // whole admissible t-range (1/4 (log s)^(1-delta) <= t <= sqrt(s)).
  {
    BigInt s = search_cap;
    long checked = 0;
    const long scan_limit = 2000;
    std::optional<BigInt> lowest;
    std::string fail_evidence;
    while (s >= 4 && checked < scan_limit) {
      Rational sq(s);
      RealBall logs = rb(sq, prec).log();
      RealBall tmin_ball =
          (logs.log().mul_rational(Rational(1) - delta)).exp().div_ui(4);
      // smallest integer the hypothesis could admit: ceil of the lower bound
      BigInt tmin(1);
      {
        Rational lo = tmin_ball.lower();
        BigInt fl;
        mpz_cdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        tmin = fl < 1 ? BigInt(1) : fl;
      }
      RealBall sqrt_s = rb(sq, prec).sqrt_nonneg();
      Rational hi = sqrt_s.upper();
      BigInt tmax = hi.get_num() / hi.get_den() + 1;
      bool all_ok = true;
      for (BigInt t = tmin; t <= tmax && all_ok; t += 1) {
        // skip t outside the certain hypothesis range on the safe side
        if (Rational(t) * Rational(t) > sq) break;
        int r = check_c4_point(s, t, cfg, prec);
        if (r == 0) r = check_c4_point(s, t, cfg, prec * 2);
        if (r != 1) {
          std::ostringstream os;
          os << (r == -1 ? "display fails at (s,t)=(" : "display undecided at (s,t)=(")
             << s.get_str() << "," << t.get_str() << ")";
          fail_evidence = os.str();
          all_ok = false;
        }
      }
      if (!all_ok) break;
      lowest = s;
      s -= 1;
      ++checked;
    }
    if (!lowest) {
      cfg.c4.reset();
      cfg.c4_note = "search exhausted: " + fail_evidence;
    } else {
      cfg.c4 = *lowest;
      std::ostringstream os;
      os << "certified on integers [" << lowest->get_str() << ", " << search_cap.get_str()
         << "]";
      if (!fail_evidence.empty()) os << "; " << fail_evidence;
      else if (checked >= scan_limit) os << "; scan truncated at " << scan_limit << " points";
      os << "; tail above cap unverified";
      cfg.c4_note = os.str();
    }
  }

  return cfg;
}

}  // namespace kummer
