#include <doctest.h>

#include "representations.hpp"
#include "suites.hpp"

using namespace kummer;

namespace {

Element in_span_target(Rng& rng, const AlgebraPtr& alg, unsigned nterms) {
  const TermSet& ts = term_set(alg);
  std::vector<Rational> c(alg->dim(), Rational(0));
  Rational inv_delta = make_rational(BigInt(1), alg->delta());
  for (unsigned s = 0; s < nterms; ++s) {
    std::size_t idx = rng.below(ts.size());
    for (std::size_t k = 0; k < alg->dim(); ++k)
      if (ts.vectors[idx][k] != 0) c[k] += Rational(ts.vectors[idx][k]);
  }
  for (auto& v : c) v *= inv_delta;
  return Element(alg, std::move(c));
}

}  // namespace

TEST_CASE("term sets: sizes and deduplication") {
  CHECK(term_set(Algebra::make(1, 2)).size() == 2);   // {1, -1}
  CHECK(term_set(Algebra::make(2, 2)).size() == 4);   // {+-1, +-sqrt2}
  CHECK(term_set(Algebra::make(1, 3)).size() == 6);   // torsion of Q(zeta_3)
  CHECK(term_set(Algebra::make(1, 4)).size() == 4);   // {+-1, +-i}
  CHECK(term_set(Algebra::make(1, 15)).size() == 30);
  CHECK(term_set(Algebra::make(2, 3)).size() == 18);  // 2 * 3 * 3, all distinct
  CHECK(term_set(Algebra::make(2, 4)).size() == 16);  // signs collapse into zeta powers
}

TEST_CASE("term values are algebraic integers with integer coordinates") {
  auto alg = Algebra::make(2, 6);
  const TermSet& ts = term_set(alg);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Element v = term_value(alg, ts.term(i));
    CHECK(v.integer_coords());
    CHECK(alg->is_algebraic_integer(v));
  }
}

TEST_CASE("min_rep: fixed anchors") {
  auto a13 = Algebra::make(1, 3);
  MinRepResult r = min_rep_count(-Element::one(a13), 4);
  REQUIRE(r.status == MinRepStatus::found);
  CHECK(r.count == 1);

  r = min_rep_count(Element::from_rational(a13, Rational(2)), 4);
  REQUIRE(r.status == MinRepStatus::found);
  CHECK(r.count == 2);

  // Delta_2(2) = 64: (3 + 2 sqrt2)/64 scales to 3 + 2 sqrt2, five terms
  auto a22 = Algebra::make(2, 2);
  Element e = (Element::from_rational(a22, Rational(3)) +
               Element::monomial(a22, 0, 1, Rational(2)))
                  .scalar_mul(make_rational(1, 64));
  r = min_rep_count(e, 5);
  REQUIRE(r.status == MinRepStatus::found);
  CHECK(r.count == 5);
  CHECK(verify_witness(e, r.witness));
  MinRepResult o = min_rep_oracle(e, 5);
  REQUIRE(o.status == MinRepStatus::found);
  CHECK(o.count == 5);

  // zero element: empty representation
  r = min_rep_count(Element::zero(a22), 3);
  REQUIRE(r.status == MinRepStatus::found);
  CHECK(r.count == 0);
  CHECK(r.witness.total == 0);

  // a single root of unity at bound 1
  auto a14 = Algebra::make(1, 4);
  r = min_rep_count(Element::monomial(a14, 1, 0), 1);
  REQUIRE(r.status == MinRepStatus::found);
  CHECK(r.count == 1);
}

TEST_CASE("min_rep: not-in-span and exhausted statuses") {
  auto a22 = Algebra::make(2, 2);
  // Delta * e = 1/2: non-integer coordinates
  Element e = Element::from_rational(a22, make_rational(1, 128));
  CHECK(min_rep_count(e, 6).status == MinRepStatus::not_in_span);
  // radical coordinates are outside the span at a = 1
  auto a13 = Algebra::make(1, 3);
  CHECK(min_rep_count(Element::monomial(a13, 0, 1), 6).status == MinRepStatus::not_in_span);
  // 7 needs seven terms over {+-1, +-sqrt2}
  Element seven = Element::from_rational(a22, make_rational(7, 64));
  CHECK(min_rep_count(seven, 4).status == MinRepStatus::exhausted);
  CHECK(min_rep_oracle(seven, 4).status == MinRepStatus::exhausted);
}

TEST_CASE("solver agrees with the oracle on random in-span targets") {
  Rng rng(2024);
  for (auto [a, n] : {std::pair<std::uint64_t, std::uint64_t>{1, 3}, {1, 4}, {2, 2}, {2, 3}}) {
    auto alg = Algebra::make(a, n);
    for (int it = 0; it < 40; ++it) {
      Element e = in_span_target(rng, alg, 1 + static_cast<unsigned>(rng.below(4)));
      MinRepResult s = min_rep_count(e, 4);
      MinRepResult o = min_rep_oracle(e, 4);
      CHECK(s.status == o.status);
      if (s.status == MinRepStatus::found) {
        CHECK(s.count == o.count);
        CHECK(verify_witness(e, s.witness));
        CHECK(verify_witness(e, o.witness));
      }
    }
  }
}

TEST_CASE("min_rep monotonicity: M(e1+e2) <= M(e1) + M(e2)") {
  Rng rng(77);
  auto alg = Algebra::make(2, 3);
  for (int it = 0; it < 25; ++it) {
    Element e1 = in_span_target(rng, alg, 1 + static_cast<unsigned>(rng.below(2)));
    Element e2 = in_span_target(rng, alg, 1 + static_cast<unsigned>(rng.below(2)));
    MinRepResult r1 = min_rep_count(e1, 4), r2 = min_rep_count(e2, 4);
    if (!r1.conclusive() || !r2.conclusive()) continue;
    MinRepResult r12 = min_rep_count(e1 + e2, r1.count + r2.count);
    REQUIRE(r12.conclusive());
    CHECK(r12.count <= r1.count + r2.count);
  }
}

TEST_CASE("min_rep is invariant under multiplication by a unit term") {
  Rng rng(78);
  for (auto [a, n] : {std::pair<std::uint64_t, std::uint64_t>{2, 3}, {1, 4}}) {
    auto alg = Algebra::make(a, n);
    for (int it = 0; it < 15; ++it) {
      Element e = in_span_target(rng, alg, 1 + static_cast<unsigned>(rng.below(3)));
      MinRepResult base = min_rep_count(e, 4);
      if (!base.conclusive()) continue;
      unsigned i = static_cast<unsigned>(rng.below(alg->n()));
      Element u = Element::monomial(alg, i, 0);
      if (rng.below(2)) u = -u;
      MinRepResult moved = min_rep_count(u * e, 4);
      REQUIRE(moved.conclusive());
      CHECK(moved.count == base.count);
    }
  }
}

TEST_CASE("decompose_step: monomials, sub-level elements, the (2,2) anchor") {
  auto a22 = Algebra::make(2, 2);
  TowerStep step = tower_steps(*a22)[0];

  // monomial: single nonzero coefficient alpha = 1/r
  Element y = Element::monomial(a22, 0, 1);
  StepDecomposition d = decompose_step(y, step);
  CHECK(d.scale == make_rational(1, 64));
  REQUIRE(d.indices.size() == 2);
  CHECK(d.coefficients[0] == Element::zero(d.sub));
  CHECK(d.coefficients[1] == Element::from_rational(d.sub, Rational(64)));
  CHECK(reassemble(d) == y);

  // the worked example: (3 + 2 sqrt2)/64 has integer coefficients 3 and 2
  Element e = (Element::from_rational(a22, Rational(3)) +
               Element::monomial(a22, 0, 1, Rational(2)))
                  .scalar_mul(make_rational(1, 64));
  d = decompose_step(e, step);
  CHECK(d.coefficients[0] == Element::from_rational(d.sub, Rational(3)));
  CHECK(d.coefficients[1] == Element::from_rational(d.sub, Rational(2)));
  CHECK(d.coefficients_integral);
  CHECK(reassemble(d) == e);

  // sub-level image: all mass at (l,k) = (0,0)
  auto a26 = Algebra::make(2, 6);
  TowerStep last = tower_steps(*a26).back();
  auto sub = Algebra::make(2, 2);
  Element s = Element::monomial(sub, 0, 1) - Element::one(sub);
  Element img = embed_subalgebra(a26, s);
  StepDecomposition d2 = decompose_step(img, last);
  for (std::size_t w = 1; w < d2.indices.size(); ++w)
    CHECK(d2.coefficients[w] == Element::zero(d2.sub));
  CHECK(reassemble(d2) == img);
}

TEST_CASE("decompose_step round trip on random elements") {
  Rng rng(79);
  auto alg = Algebra::make(2, 6);
  for (const TowerStep& step :
       {tower_steps(*alg).back(), make_step(2, 6)}) {  // p=3 and p=2 decompositions
    for (int it = 0; it < 5; ++it) {
      std::vector<Rational> c(alg->dim());
      for (auto& v : c) v = make_rational(rng.range(-6, 6), rng.range(1, 3));
      Element e(alg, std::move(c));
      StepDecomposition d = decompose_step(e, step);
      CHECK(reassemble(d) == e);
    }
  }
}

TEST_CASE("decompose_step: integral coefficients for algebraic integers") {
  Rng rng(81);
  auto alg = Algebra::make(2, 6);
  TowerStep last = tower_steps(*alg).back();
  for (int it = 0; it < 5; ++it) {
    std::vector<Rational> c(alg->dim());
    for (auto& v : c) v = Rational(rng.range(-4, 4));
    Element e(alg, std::move(c));
    StepDecomposition d = decompose_step(e, last);
    CHECK(d.coefficients_integral);
    CHECK(reassemble(d) == e);
  }
}

TEST_CASE("second-case decomposition at (2,4)") {
  auto alg = Algebra::make(2, 4);
  TowerStep step = tower_steps(*alg)[1];
  REQUIRE(step.second_case());
  Rng rng(83);
  for (int it = 0; it < 5; ++it) {
    std::vector<Rational> c(alg->dim());
    for (auto& v : c) v = Rational(rng.range(-3, 3));
    Element e(alg, std::move(c));
    StepDecomposition d = decompose_step(e, step);
    CHECK(d.indices.size() == 4);
    CHECK(reassemble(d) == e);
    CHECK(d.coefficients_integral);
  }
}

TEST_CASE("additivity check: fixed anchors") {
  // single term: n = m
  auto a23 = Algebra::make(2, 3);
  TowerStep step = tower_steps(*a23)[0];
  auto sub = Algebra::make(2, 1);
  AdditivityReport r = additivity_check(
      a23, step, {{1, 2}}, {Element::from_rational(sub, Rational(3))}, 6);
  CHECK(r.precondition_ok);
  REQUIRE(r.conclusive);
  CHECK(r.n.count == 3);
  CHECK(r.holds);

  // a = 1, N = 6 = 2*3, p = 3: beta = 2 zeta_3 -> n = 2 = sum m
  auto a16 = Algebra::make(1, 6);
  TowerStep step16 = tower_steps(*a16).back();
  REQUIRE(step16.p == 3);
  auto sub12 = Algebra::make(1, 2);
  AdditivityReport r2 = additivity_check(
      a16, step16, {{1, 0}}, {Element::from_rational(sub12, Rational(2))}, 6);
  REQUIRE(r2.conclusive);
  CHECK(r2.n.count == 2);
  CHECK(r2.holds);

  // precondition violation: |I| > p(p-1)/2
  std::vector<std::pair<unsigned, unsigned>> big_support;
  std::vector<Element> gammas;
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) {
      big_support.emplace_back(i, j);
      gammas.push_back(Element::one(sub));
    }
  AdditivityReport r3 = additivity_check(a23, step, big_support, gammas, 6);
  CHECK(!r3.precondition_ok);
}

TEST_CASE("additivity beyond the per-column regime can fail (the stated bound is weak)") {
  // beta = t(zeta_3 + zeta_3^2) = -t: n = 1 but sum m_ij = 2, |I| = 2 <= 3
  auto a23 = Algebra::make(2, 3);
  TowerStep step = tower_steps(*a23)[0];
  auto sub = Algebra::make(2, 1);
  AdditivityReport r = additivity_check(
      a23, step, {{1, 0}, {2, 0}},
      {Element::one(sub), Element::one(sub)}, 6);
  CHECK(r.precondition_ok);
  REQUIRE(r.conclusive);
  CHECK(r.n.count == 1);
  CHECK(!r.holds);
}

TEST_CASE("witness JSON serialization shape") {
  auto a22 = Algebra::make(2, 2);
  Element e = (Element::from_rational(a22, Rational(1)) +
               Element::monomial(a22, 0, 1))
                  .scalar_mul(make_rational(1, 64));
  MinRepResult r = min_rep_count(e, 3);
  REQUIRE(r.conclusive());
  std::string j = r.witness.to_json();
  CHECK(j.find("\"sign\":") != std::string::npos);
  CHECK(j.find("\"i\":") != std::string::npos);
  CHECK(j.find("\"j\":") != std::string::npos);
  CHECK(j.find("\"mult\":") != std::string::npos);
  CHECK(j.front() == '[');
  CHECK(j.back() == ']');
}
