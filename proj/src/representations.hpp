#pragma once

// The term set {+- zeta_N^i * a^(j/N)}, exact minimal-representation search
// for M_{a,N}(beta) with a brute-force oracle, and the tower decompositions
// beta = sum alpha_ij * r * zeta^i * a^(j/p^t).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "measures.hpp"

namespace kummer {

struct Term {
  int sign = 1;    // +1 or -1
  unsigned i = 0;  // power of zeta_N
  unsigned j = 0;  // power of a^(1/N); the radical part is 1 when a = 1
  bool operator<(const Term& o) const {
    return std::tie(sign, i, j) < std::tie(o.sign, o.i, o.j);
  }
  bool operator==(const Term& o) const {
    return sign == o.sign && i == o.i && j == o.j;
  }
};

// Deduplicated term values in a deterministic order (e.g. for even N the
// signs collapse through -1 = zeta_N^(N/2)).
struct TermSet {
  AlgebraPtr alg;
  std::vector<Term> terms;
  std::vector<std::vector<BigInt>> vectors;  // canonical integer coordinates
  const Term& term(std::size_t idx) const { return terms[idx]; }
  std::size_t size() const { return terms.size(); }
};

const TermSet& term_set(const AlgebraPtr& alg);  // cached per algebra

Element term_value(const AlgebraPtr& alg, const Term& t);

struct Representation {
  std::vector<std::pair<Term, unsigned>> terms;  // multiplicities, sorted
  unsigned total = 0;
  std::string to_json() const;  // [{"sign":..,"i":..,"j":..,"mult":..}, ...]
};

enum class MinRepStatus { found, not_in_span, exhausted };

struct MinRepResult {
  MinRepStatus status = MinRepStatus::exhausted;
  unsigned count = 0;            // valid when found
  Representation witness;        // valid when found; re-verified exactly
  bool conclusive() const { return status == MinRepStatus::found; }
};

// Minimal number of terms (counting repetition) summing to Delta_a(N) * e,
// by iterative deepening with canonical nonincreasing-index order and
// per-coordinate infeasibility cuts. `bound` caps the search.
MinRepResult min_rep_count(const Element& e, unsigned bound);

// Exhaustive enumeration over all multisets of terms with total <= bound.
// Intended for tiny bounds and small term sets; used as the solver's oracle.
MinRepResult min_rep_oracle(const Element& e, unsigned bound);

bool verify_witness(const Element& e, const Representation& rep);

struct StepDecomposition {
  TowerStep step;
  AlgebraPtr top, sub;
  // alpha_{l,k} in Q_a(N_sub), indexed like step_basis_indices(step)
  std::vector<std::pair<unsigned, unsigned>> indices;
  std::vector<Element> coefficients;
  Rational scale;  // the common r = 1/|Nm(disc)|; 1 when a = 1
  bool coefficients_integral = false;
};

// Exact coefficients of e over the step basis tensored with the sub-level
// canonical basis; e must live in the step's top-level algebra.
StepDecomposition decompose_step(const Element& e, const TowerStep& step);

// sum alpha_{l,k} * r * zeta^l * a^(k/p^t), back in the top algebra.
Element reassemble(const StepDecomposition& d);

struct AdditivityEntry {
  unsigned i = 0, j = 0;
  MinRepResult m;  // M_{a,N_sub}(gamma_ij)
};

struct AdditivityReport {
  bool precondition_ok = false;  // |I| <= p(p-1)/2
  MinRepResult n;                // M_{a,N}(beta)
  std::vector<AdditivityEntry> entries;
  bool conclusive = false;
  bool holds = false;  // n == sum m_ij (meaningful when conclusive)
  std::string note;
};

// Lemma-style additivity check: beta = sum_{(i,j) in I} gamma_ij * t * zeta_p^i
// * a^(j/p) with gamma_ij at the sub level; compares M_{a,N}(beta) with the
// per-coefficient counts. The step must be the algebra's final tower step.
AdditivityReport additivity_check(const AlgebraPtr& alg, const TowerStep& step,
                                  const std::vector<std::pair<unsigned, unsigned>>& support,
                                  const std::vector<Element>& gammas, unsigned bound);

}  // namespace kummer
