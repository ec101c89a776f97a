#pragma once

// The ambient algebra Q[x,y]/(Phi_N(x), y^N - a) with canonical basis
// {x^i y^j : 0 <= i < phi(N), 0 <= j < N}, its embedding set, the (l,k)
// conjugation action, exact traces/norms, and integrality tests.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace kummer {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// sigma(x) = zeta_N^l, sigma(y) = zeta_N^k * a^(1/N); gcd(l, N) = 1.
struct Embedding {
  std::uint64_t l = 1;
  std::uint64_t k = 0;
  bool operator==(const Embedding& o) const { return l == o.l && k == o.k; }
};

enum class FieldStatus { certified_field, degree_drop_detected, unverified };

const char* to_string(FieldStatus s);

class Element {
 public:
  Element() = default;
  Element(AlgebraPtr alg, std::vector<Rational> coords);

  static Element zero(const AlgebraPtr& alg);
  static Element one(const AlgebraPtr& alg);
  // x^xe * y^ye for arbitrary nonnegative exponents (reduced canonically).
  static Element monomial(const AlgebraPtr& alg, std::uint64_t xe, std::uint64_t ye,
                          const Rational& coeff = Rational(1));
  static Element from_rational(const AlgebraPtr& alg, const Rational& q);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Rational>& coords() const { return c_; }
  // coordinate of x^i y^j, i < phi(N), j < N
  const Rational& coord(std::size_t i, std::size_t j) const;

  bool is_zero() const;
  bool integer_coords() const;
  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Element& o) const;
  Element scalar_mul(const Rational& q) const;

  std::string to_string() const;  // in the z/r expression grammar

 private:
  void check_same(const Element& o) const;
  AlgebraPtr alg_;
  std::vector<Rational> c_;
};

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  // Radicand a >= 1 (a == 1 or not a perfect power), N >= 1.
  // Instances are cached process-wide; always share via AlgebraPtr.
  static AlgebraPtr make(std::uint64_t a, std::uint64_t n);

  std::uint64_t a() const { return a_; }
  std::uint64_t n() const { return n_; }
  std::uint64_t phi() const { return phi_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::pair<std::uint64_t, unsigned>>& factorization() const {
    return factorization_;
  }
  const IntPoly& cyclo() const { return cyclo_; }

  std::size_t index_of(std::size_t i, std::size_t j) const { return i * n_ + j; }
  // coordinates of x^m over {x^0..x^(phi-1)}, for m in [0, N)
  const std::vector<BigInt>& x_power(std::size_t m) const { return xpow_[m]; }

  const std::vector<Embedding>& embeddings() const { return embeddings_; }
  std::vector<Embedding> relative_embeddings(std::uint64_t n1) const;

  Element apply_automorphism(const Element& e, const Embedding& emb) const;
  Element relative_trace(const Element& e, std::uint64_t n1) const;

  QMatrix mult_matrix(const Element& e) const;
  Rational absolute_trace(const Element& e) const;
  Rational absolute_norm(const Element& e) const;
  QPoly char_poly(const Element& e) const;
  bool is_algebraic_integer(const Element& e) const;

  FieldStatus field_status() const { return field_status_; }

  // Cached exact Delta_a(N); computed on first use (see measures.cpp).
  const BigInt& delta() const;

 private:
  Algebra(std::uint64_t a, std::uint64_t n);

  std::uint64_t a_, n_, phi_;
  std::size_t dim_;
  std::vector<std::pair<std::uint64_t, unsigned>> factorization_;
  IntPoly cyclo_;
  std::vector<std::vector<BigInt>> xpow_;
  std::vector<Embedding> embeddings_;
  FieldStatus field_status_;

  mutable std::mutex delta_mu_;
  mutable std::optional<BigInt> delta_cache_;

  friend class Element;
};

// Element expression grammar: integers, rationals p/q, z (= zeta_N), r (= a^(1/N)),
// operators + - * / ^ with nonnegative integer exponents, parentheses.
// Division is only by rational-constant subexpressions.
Element parse_element(const AlgebraPtr& alg, const std::string& text);

}  // namespace kummer
