#pragma once

// Rigorous numeric evaluation of embeddings, the house and mean-square
// measures with adaptive precision, and the exact tower discriminant
// Delta_a(N).

#include <cstdint>
#include <vector>

#include "algebra.hpp"
#include "ball.hpp"

namespace kummer {

struct MeasureReport {
  Rational low;   // certified enclosure of the measure
  Rational high;
  long precision_bits = 0;
  FieldStatus field_status = FieldStatus::unverified;
};

inline constexpr long kDefaultPrecisionCap = 1 << 14;

// Rigorous enclosure of sigma_{l,k}(e) at the given precision.
ComplexBall embed_value(const Element& e, const Embedding& emb, long precision_bits);

// Values of e under a list of embeddings, fixed order.
std::vector<ComplexBall> embed_values(const Element& e, const std::vector<Embedding>& embs,
                                      long precision_bits);

// max |sigma(e)| over all embeddings; enclosure width < tol.
MeasureReport house(const Element& e, const Rational& tol,
                    long precision_cap = kDefaultPrecisionCap);

// mean of |sigma(e)|^2 over all embeddings.
MeasureReport mean_square(const Element& e, const Rational& tol,
                          long precision_cap = kDefaultPrecisionCap);

// mean of |sigma(e)|^2 over the embeddings fixing Q_a(N1) pointwise, each
// realized as a complex value through the reference embedding (1 mod N, 0).
MeasureReport mean_square_relative(const Element& e, std::uint64_t n1, const Rational& tol,
                                   long precision_cap = kDefaultPrecisionCap);

struct TowerStep {
  std::uint64_t p = 2;
  unsigned t = 1;               // exponent of p at the top level
  std::uint64_t n_sub = 1;      // p_1^{e_1}...p_i^{t-1}
  std::uint64_t n_top = 2;      // p_1^{e_1}...p_i^{t}
  bool second_case() const { return t >= 2; }
  // step basis size = relative degree: p(p-1) in the first case, p^2 after
  std::size_t basis_size() const {
    return second_case() ? static_cast<std::size_t>(p * p)
                         : static_cast<std::size_t>(p * (p - 1));
  }
};

// The Definition-5.1 ladder: primes ascending, exponents inner.
std::vector<TowerStep> tower_steps(const Algebra& alg);

// A single relative step N1 -> N = p*N1 outside the ladder (for the
// decomposition identities); t is the exponent of p in n_top.
TowerStep make_step(std::uint64_t p, std::uint64_t n_top);

// Step basis {zeta_{p^t}^l * a^(k/p^t)} as elements of the step's top algebra;
// first case drops l = p-1, second case keeps l,k < p.
std::vector<std::pair<unsigned, unsigned>> step_basis_indices(const TowerStep& step);
Element step_basis_element(const AlgebraPtr& top, const TowerStep& step, unsigned l,
                           unsigned k);

// Embedding Q_a(N_sub) -> Q_a(N): x_sub -> x^(N/N_sub), y_sub -> y^(N/N_sub).
Element embed_subalgebra(const AlgebraPtr& big, const Element& sub_elem);
// Exact coordinates of e over the embedded copy of Q_a(N_sub), if e lies in it.
std::optional<Element> project_to_subalgebra(const AlgebraPtr& sub, const Element& e);

// disc of the step basis: det over Q_a(N_sub) of the relative trace matrix,
// returned as an element of `alg` (lies in the image of the sub level).
// Convention: returns 1 when a = 1.
Element step_discriminant(const AlgebraPtr& alg, const TowerStep& step);

// |Nm_{Q_a(N)|Q}( prod over tower steps of the step discriminant )|, exact.
// Conventions: 1 when a = 1 and when N = 1. `reverse_steps` only permutes the
// internal product order (the result is asserted identical).
BigInt delta_value(const AlgebraPtr& alg, bool reverse_steps = false);

// Division-free determinant over a commutative ring of algebra elements
// (Samuelson-Berkowitz). All entries must live in the same algebra.
Element ring_det(const std::vector<std::vector<Element>>& m, const AlgebraPtr& alg);

}  // namespace kummer
