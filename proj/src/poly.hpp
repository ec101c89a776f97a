#pragma once

// Dense exact polynomials, lowest degree first, and the cyclotomic
// polynomial cache. Degrees at desk scale never exceed a few hundred.

#include <cstdint>
#include <vector>

#include "rational.hpp"

namespace kummer {

class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPoly zero() { return IntPoly(); }
  static IntPoly one() { return constant(1); }
  static IntPoly constant(const BigInt& v);
  // X^n - a
  static IntPoly x_pow_minus(unsigned n, const BigInt& a);

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& operator[](std::size_t i) const { return c_[i]; }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  // Quotient of an exact division; throws if the division leaves a remainder.
  IntPoly divide_exact(const IntPoly& divisor) const;

  Rational eval(const Rational& x) const;
  std::string to_string(const std::string& var = "X") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

// Phi_N, monic of degree phi(N); process-wide synchronized cache.
const IntPoly& cyclotomic_poly(std::uint64_t n);

// Polynomial with rational coefficients, lowest degree first (characteristic
// polynomials live here).
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  bool integer_coefficients() const;
  std::string to_string(const std::string& var = "X") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

}  // namespace kummer
