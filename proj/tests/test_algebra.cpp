#include <doctest.h>

#include "algebra.hpp"
#include "measures.hpp"
#include "suites.hpp"

using namespace kummer;

namespace {

Element rnd_elem(Rng& rng, const AlgebraPtr& alg, long h = 3) {
  std::vector<Rational> c(alg->dim());
  for (auto& v : c) v = Rational(rng.range(-h, h));
  return Element(alg, std::move(c));
}

}  // namespace

TEST_CASE("make_algebra: dimensions and the radicand condition") {
  CHECK(Algebra::make(2, 2)->dim() == 2);
  CHECK(Algebra::make(2, 6)->dim() == 12);
  CHECK(Algebra::make(1, 12)->dim() == 48);
  CHECK_THROWS_AS((void)Algebra::make(4, 3), Error);   // 4 = 2^2
  CHECK_THROWS_AS((void)Algebra::make(27, 2), Error);  // 27 = 3^3
  CHECK_THROWS_AS((void)Algebra::make(0, 3), Error);
  CHECK_THROWS_AS((void)Algebra::make(2, 0), Error);
  CHECK(Algebra::make(1, 1)->dim() == 1);
}

TEST_CASE("ring arithmetic: known identities") {
  auto a22 = Algebra::make(2, 2);
  Element one = Element::one(a22), y = Element::monomial(a22, 0, 1);
  CHECK((one + y) * (one - y) == -Element::one(a22));  // (1+sqrt2)(1-sqrt2) = -1

  auto a13 = Algebra::make(1, 3);
  Element x = Element::monomial(a13, 1, 0);
  CHECK(x * x == -Element::one(a13) - x);  // zeta_3^2 = -1 - zeta_3

  auto a24 = Algebra::make(2, 4);
  Element y4 = Element::monomial(a24, 0, 1);
  CHECK(y4 * y4 * y4 * y4 == Element::from_rational(a24, Rational(2)));
}

TEST_CASE("mixed-algebra operands are reported") {
  auto a = Algebra::make(2, 2), b = Algebra::make(2, 3);
  CHECK_THROWS_AS((void)(Element::one(a) + Element::one(b)), Error);
  CHECK_THROWS_AS((void)(Element::one(a) * Element::one(b)), Error);
}

TEST_CASE("ring axioms on random triples") {
  Rng rng(101);
  for (auto [a, n] : {std::pair<std::uint64_t, std::uint64_t>{2, 6}, {1, 4}, {3, 2}}) {
    auto alg = Algebra::make(a, n);
    for (int it = 0; it < 8; ++it) {
      Element e1 = rnd_elem(rng, alg), e2 = rnd_elem(rng, alg), e3 = rnd_elem(rng, alg);
      CHECK(e1 * e2 == e2 * e1);
      CHECK((e1 * e2) * e3 == e1 * (e2 * e3));
      CHECK(e1 * (e2 + e3) == e1 * e2 + e1 * e3);
    }
  }
}

TEST_CASE("embeddings: counts and determinism") {
  CHECK(Algebra::make(2, 2)->embeddings().size() == 2);
  CHECK(Algebra::make(1, 4)->embeddings().size() == 8);
  CHECK(Algebra::make(2, 6)->embeddings().size() == 12);
  auto e = Algebra::make(2, 2)->embeddings();
  CHECK(e[0] == Embedding{1, 0});
  CHECK(e[1] == Embedding{1, 1});
}

TEST_CASE("relative embeddings: fixed-subfield characterization") {
  auto a26 = Algebra::make(2, 6);
  auto r = a26->relative_embeddings(3);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == Embedding{1, 0});
  CHECK(r[1] == Embedding{1, 3});

  auto a24 = Algebra::make(2, 4);
  auto r2 = a24->relative_embeddings(2);
  REQUIRE(r2.size() == 4);
  CHECK(r2[0] == Embedding{1, 0});
  CHECK(r2[1] == Embedding{1, 2});
  CHECK(r2[2] == Embedding{3, 0});
  CHECK(r2[3] == Embedding{3, 2});

  CHECK(Algebra::make(2, 3)->relative_embeddings(1).size() == 6);
  CHECK_THROWS_AS((void)a26->relative_embeddings(4), Error);

  // |relative_embeddings(N, N1)| = (N/N1)(phi(N)/phi(N1)) across divisors
  auto a115 = Algebra::make(1, 15);
  for (std::uint64_t n1 : {1, 3, 5, 15})
    CHECK(a115->relative_embeddings(n1).size() == (15 / n1) * (8 / totient(n1)));
}

TEST_CASE("automorphisms: conjugation action") {
  auto a22 = Algebra::make(2, 2);
  Element y = Element::monomial(a22, 0, 1);
  CHECK(a22->apply_automorphism(y, {1, 1}) == -y);  // sqrt2 -> -sqrt2

  auto a14 = Algebra::make(1, 4);
  Element x = Element::monomial(a14, 1, 0);
  CHECK(a14->apply_automorphism(x, {3, 0}) == -x);  // zeta_4^3 = -zeta_4

  Rng rng(5);
  auto a26 = Algebra::make(2, 6);
  for (int it = 0; it < 6; ++it) {
    Element e = rnd_elem(rng, a26);
    CHECK(a26->apply_automorphism(e, {1, 0}) == e);  // identity
    Element f = rnd_elem(rng, a26);
    for (const Embedding& emb : {Embedding{5, 2}, Embedding{1, 3}}) {
      CHECK(a26->apply_automorphism(e * f, emb) ==
            a26->apply_automorphism(e, emb) * a26->apply_automorphism(f, emb));
    }
  }
}

TEST_CASE("char poly, trace, norm on quadratic elements") {
  auto a22 = Algebra::make(2, 2);
  Element y = Element::monomial(a22, 0, 1);
  CHECK(a22->absolute_trace(y) == 0);
  CHECK(a22->absolute_norm(y) == -2);
  QPoly cp = a22->char_poly(y);
  REQUIRE(cp.degree() == 2);
  CHECK(cp.coeff(0) == -2);
  CHECK(cp.coeff(1) == 0);
  CHECK(cp.coeff(2) == 1);

  Element onep = Element::one(a22) + y;
  CHECK(a22->absolute_norm(onep) == -1);

  // zeta_3 + zeta_3^2 = -1 on each of the three y-branches of the algebra
  auto a13 = Algebra::make(1, 3);
  Element z = Element::monomial(a13, 1, 0);
  CHECK(a13->absolute_trace(z) == -3);
}

TEST_CASE("char poly coefficient identities vs direct trace and norm") {
  Rng rng(31);
  auto alg = Algebra::make(3, 2);
  for (int it = 0; it < 6; ++it) {
    Element e = rnd_elem(rng, alg);
    QPoly cp = alg->char_poly(e);
    std::size_t d = alg->dim();
    CHECK(cp.coeff(d) == 1);
    CHECK(-cp.coeff(d - 1) == alg->absolute_trace(e));
    Rational nrm = cp.coeff(0);
    if (d % 2 == 1) nrm = -nrm;
    CHECK(nrm == alg->absolute_norm(e));
  }
}

TEST_CASE("relative trace: examples and linearity over the sub level") {
  auto a22 = Algebra::make(2, 2);
  Element y = Element::monomial(a22, 0, 1);
  CHECK(a22->relative_trace(y, 1) == Element::zero(a22));
  CHECK(a22->relative_trace(Element::one(a22), 1) ==
        Element::from_rational(a22, Rational(2)));

  auto a24 = Algebra::make(2, 4);
  Element y2 = Element::monomial(a24, 0, 2);
  CHECK(a24->relative_trace(y2, 2) == y2.scalar_mul(Rational(4)));

  // trace down to Q agrees with the absolute trace
  Rng rng(41);
  for (int it = 0; it < 4; ++it) {
    Element e = rnd_elem(rng, a24);
    Element tr = a24->relative_trace(e, 1);
    CHECK(tr == Element::from_rational(a24, a24->absolute_trace(e)));
  }
}

TEST_CASE("is_algebraic_integer") {
  auto a52 = Algebra::make(5, 2);
  Element golden = (Element::one(a52) + Element::monomial(a52, 0, 1)).scalar_mul(
      make_rational(1, 2));  // (1+sqrt5)/2
  CHECK(a52->is_algebraic_integer(golden));

  auto a22 = Algebra::make(2, 2);
  Element half = (Element::one(a22) + Element::monomial(a22, 0, 1)).scalar_mul(
      make_rational(1, 2));  // (1+sqrt2)/2
  CHECK(!a22->is_algebraic_integer(half));

  Rng rng(43);
  auto a26 = Algebra::make(2, 6);
  for (int it = 0; it < 5; ++it) {
    Element e = rnd_elem(rng, a26), f = rnd_elem(rng, a26);
    CHECK(a26->is_algebraic_integer(e));
    CHECK(a26->is_algebraic_integer(e * f));  // closure under product
  }
}

TEST_CASE("field degree check") {
  CHECK(Algebra::make(2, 3)->field_status() == FieldStatus::certified_field);
  CHECK(Algebra::make(1, 8)->field_status() == FieldStatus::certified_field);
  CHECK(Algebra::make(2, 8)->field_status() == FieldStatus::degree_drop_detected);
  CHECK(Algebra::make(2, 2)->field_status() == FieldStatus::certified_field);
  CHECK(Algebra::make(2, 6)->field_status() == FieldStatus::certified_field);
  CHECK(Algebra::make(2, 4)->field_status() == FieldStatus::unverified);
  CHECK(Algebra::make(5, 10)->field_status() == FieldStatus::degree_drop_detected);
  CHECK(Algebra::make(5, 20)->field_status() == FieldStatus::degree_drop_detected);
  CHECK(Algebra::make(3, 10)->field_status() == FieldStatus::certified_field);
}

TEST_CASE("field degree check: numeric cross-checks") {
  // (2,3) certified: the 6 embedding values of zeta_3 + 2^(1/3) are distinct
  auto a23 = Algebra::make(2, 3);
  Element prim = Element::monomial(a23, 1, 0) + Element::monomial(a23, 0, 1);
  auto vals = embed_values(prim, a23->embeddings(), 128);
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      RealBall dist = (vals[i] - vals[j]).abs();
      CHECK(dist.lower() > 0);
    }
  // (2,8) degree drop: zeta_8 + zeta_8^-1 = sqrt(2) numerically
  auto a28 = Algebra::make(2, 8);
  Element w = Element::monomial(a28, 1, 0) + Element::monomial(a28, 7, 0);
  ComplexBall v = embed_value(w, {1, 0}, 128);
  RealBall s2 = nth_root(BigInt(2), 2, 128);
  CHECK(v.re.lower() <= s2.upper());
  CHECK(v.re.upper() >= s2.lower());
  CHECK(v.im.lower() <= 0);
  CHECK(v.im.upper() >= 0);
}

TEST_CASE("expression parser") {
  auto alg = Algebra::make(2, 6);
  Element e = parse_element(alg, "1 + 3*z^2*r - r^2/2");
  Element expect = Element::one(alg) + Element::monomial(alg, 2, 1, Rational(3)) -
                   Element::monomial(alg, 0, 2, make_rational(1, 2));
  CHECK(e == expect);

  CHECK(parse_element(alg, "2/4") == Element::from_rational(alg, make_rational(1, 2)));
  CHECK(parse_element(alg, "-(z + r)^2") == -(Element::monomial(alg, 1, 0) +
                                              Element::monomial(alg, 0, 1)) *
                                                (Element::monomial(alg, 1, 0) +
                                                 Element::monomial(alg, 0, 1)));
  CHECK(parse_element(alg, "z^6") == Element::one(alg));
  CHECK_THROWS_AS((void)parse_element(alg, "1 +"), Error);
  CHECK_THROWS_AS((void)parse_element(alg, "q"), Error);
  CHECK_THROWS_AS((void)parse_element(alg, "1/z"), Error);
  CHECK_THROWS_AS((void)parse_element(alg, "(1"), Error);

  // parse errors carry a position
  try {
    (void)parse_element(alg, "1 + @");
    CHECK(false);
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("position 4") != std::string::npos);
  }
}

TEST_CASE("element to_string round trips through the parser") {
  Rng rng(53);
  auto alg = Algebra::make(2, 4);
  for (int it = 0; it < 10; ++it) {
    std::vector<Rational> c(alg->dim());
    for (auto& v : c) v = make_rational(rng.range(-8, 8), rng.range(1, 5));
    Element e(alg, std::move(c));
    CHECK(parse_element(alg, e.to_string()) == e);
  }
}
