#pragma once

// The concave comparison functions f(t) = t exp(-k log t / loglog t) and
// g(t) = t exp(-k log t'/loglog t') with t' = t + c1, plus the derivation of
// the constants c1..c4 with grid certification.

#include <optional>
#include <string>

#include "ball.hpp"
#include "rational.hpp"

namespace kummer {

struct BoundConfig {
  Rational k = Rational(1);
  Rational delta = make_rational(1, 5);
  Rational c1 = Rational(2048);
  Rational c2;  // k / (2(1+c1)), exact
  std::optional<BigInt> c3, c4;
  BigInt search_cap = BigInt(0);
  long precision_bits = 192;
  std::string c1_note;  // grid on which Eq.-(3.1)-style monotonicity/concavity held
  std::string c3_note;  // certified range or the failing endpoint evidence
  std::string c4_note;

  std::string to_json() const;
};

// f on rationals. Domain: t = 0, t = 1, or t > e; DomainError inside
// (0,1) u (1,e].
RealBall f_val(const Rational& t, const Rational& k, long precision_bits);

// g on rationals; total on [0, inf) once c1 >= e^(e^2).
RealBall g_val(const Rational& t, const BoundConfig& cfg);

// Ball-argument versions (monotone enclosures through interval endpoints).
RealBall f_ball(const RealBall& t, const Rational& k);
RealBall g_ball(const RealBall& t, const Rational& k, const Rational& c1);

// Validates k > log 2 and 0 < delta < 1 - log 2 / k, picks c1 as the smallest
// power of two >= e^(e^2) that passes the grid certification, computes c2
// exactly, and runs the integer-grid suffix searches for c3 and c4 below
// search_cap. Exhausted searches leave c3/c4 empty with evidence in the notes.
BoundConfig derive_constants(const Rational& k, const Rational& delta,
                             const BigInt& search_cap, long precision_bits = 192);

}  // namespace kummer
