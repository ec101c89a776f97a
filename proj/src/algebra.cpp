#include "algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace kummer {

const char* to_string(FieldStatus s) {
  switch (s) {
    case FieldStatus::certified_field: return "certified_field";
    case FieldStatus::degree_drop_detected: return "degree_drop_detected";
    case FieldStatus::unverified: return "unverified";
  }
  return "?";
}

Element::Element(AlgebraPtr alg, std::vector<Rational> coords)
    : alg_(std::move(alg)), c_(std::move(coords)) {
  if (c_.size() != alg_->dim())
    fail(ErrorCode::dimension_mismatch, "element coordinate length != algebra dimension");
}

Element Element::zero(const AlgebraPtr& alg) {
  return Element(alg, std::vector<Rational>(alg->dim(), Rational(0)));
}

Element Element::one(const AlgebraPtr& alg) { return monomial(alg, 0, 0); }

Element Element::from_rational(const AlgebraPtr& alg, const Rational& q) {
  return monomial(alg, 0, 0, q);
}

Element Element::monomial(const AlgebraPtr& alg, std::uint64_t xe, std::uint64_t ye,
                          const Rational& coeff) {
  std::vector<Rational> c(alg->dim(), Rational(0));
  Rational v = coeff;
  // y^N = a, x^N = 1 (Phi_N divides X^N - 1)
  if (ye >= alg->n()) {
    v *= Rational(pow_int(BigInt(alg->a()), ye / alg->n()));
    ye %= alg->n();
  }
  xe %= alg->n();
  const auto& xv = alg->x_power(xe);
  for (std::size_t t = 0; t < xv.size(); ++t)
    if (xv[t] != 0) c[alg->index_of(t, ye)] = v * Rational(xv[t]);
  return Element(alg, std::move(c));
}

const Rational& Element::coord(std::size_t i, std::size_t j) const {
  return c_[alg_->index_of(i, j)];
}

bool Element::is_zero() const {
  for (const Rational& v : c_)
    if (v != 0) return false;
  return true;
}

bool Element::integer_coords() const {
  for (const Rational& v : c_)
    if (!is_integer(v)) return false;
  return true;
}

bool Element::operator==(const Element& o) const {
  return alg_.get() == o.alg_.get() && c_ == o.c_;
}

void Element::check_same(const Element& o) const {
  if (alg_.get() != o.alg_.get())
    fail(ErrorCode::mixed_algebra, "operands belong to different algebras");
}

Element Element::operator+(const Element& o) const {
  check_same(o);
  std::vector<Rational> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return Element(alg_, std::move(c));
}

Element Element::operator-(const Element& o) const {
  check_same(o);
  std::vector<Rational> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return Element(alg_, std::move(c));
}

Element Element::operator-() const {
  std::vector<Rational> c(c_);
  for (auto& v : c) v = -v;
  return Element(alg_, std::move(c));
}

Element Element::scalar_mul(const Rational& q) const {
  std::vector<Rational> c(c_);
  for (auto& v : c) v *= q;
  return Element(alg_, std::move(c));
}

Element Element::operator*(const Element& o) const {
  check_same(o);
  const Algebra& A = *alg_;
  const std::uint64_t n = A.n();
  const BigInt a(A.a());
  std::vector<Rational> out(A.dim(), Rational(0));
  for (std::size_t i1 = 0; i1 < A.phi(); ++i1)
    for (std::size_t j1 = 0; j1 < n; ++j1) {
      const Rational& v1 = c_[A.index_of(i1, j1)];
      if (v1 == 0) continue;
      for (std::size_t i2 = 0; i2 < A.phi(); ++i2)
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          const Rational& v2 = o.c_[A.index_of(i2, j2)];
          if (v2 == 0) continue;
          Rational v = v1 * v2;
          std::size_t j = j1 + j2;
          if (j >= n) {
            v *= Rational(a);
            j -= n;
          }
          const auto& xv = A.x_power((i1 + i2) % n);
          for (std::size_t t = 0; t < xv.size(); ++t)
            if (xv[t] != 0) out[A.index_of(t, j)] += v * Rational(xv[t]);
        }
    }
  return Element(alg_, std::move(out));
}

std::string Element::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < alg_->phi(); ++i)
    for (std::size_t j = 0; j < alg_->n(); ++j) {
      const Rational& v = c_[alg_->index_of(i, j)];
      if (v == 0) continue;
      Rational av = abs(v);
      if (first) {
        if (v < 0) os << "-";
        first = false;
      } else {
        os << (v < 0 ? " - " : " + ");
      }
      bool coeff_shown = (av != 1 || (i == 0 && j == 0));
      if (coeff_shown) os << av.get_str();
      if (i > 0) {
        if (coeff_shown) os << "*";
        os << "z";
        if (i > 1) os << "^" << i;
        coeff_shown = true;
      }
      if (j > 0) {
        if (coeff_shown) os << "*";
        os << "r";
        if (j > 1) os << "^" << j;
      }
    }
  if (first) return "0";
  return os.str();
}

Algebra::Algebra(std::uint64_t a, std::uint64_t n) : a_(a), n_(n) {
  if (a < 1) fail(ErrorCode::invalid_argument, "radicand a must be >= 1");
  if (n < 1) fail(ErrorCode::invalid_argument, "N must be >= 1");
  if (a >= 2 && is_perfect_power(BigInt(a)))
    fail(ErrorCode::perfect_power_radicand,
         "radicand " + std::to_string(a) + " is a perfect power m^e, e >= 2");
  phi_ = totient(n);
  dim_ = static_cast<std::size_t>(phi_ * n);
  factorization_ = factorize(n);
  cyclo_ = cyclotomic_poly(n);

  // x^m over the basis {x^0..x^(phi-1)}: reduce X^m mod Phi_N incrementally.
  xpow_.resize(n);
  std::vector<BigInt> cur(phi_, BigInt(0));
  cur[0] = 1;
  xpow_[0] = cur;
  for (std::uint64_t m = 1; m < n; ++m) {
    // multiply by X
    std::vector<BigInt> next(phi_, BigInt(0));
    BigInt carry = cur[phi_ - 1];  // coefficient of X^phi after the shift
    for (std::size_t t = phi_ - 1; t >= 1; --t) next[t] = cur[t - 1];
    next[0] = 0;
    if (carry != 0) {
      // X^phi = -(c_0 + c_1 X + ... + c_{phi-1} X^{phi-1}) from monic Phi_N
      for (std::size_t t = 0; t < phi_; ++t) next[t] -= carry * cyclo_[t];
    }
    cur = next;
    xpow_[m] = cur;
  }

  for (std::uint64_t l = 0; l < n; ++l) {
    if (gcd_u64(l, n) != 1) continue;  // gcd(0,1) = 1 covers N = 1
    for (std::uint64_t k = 0; k < n; ++k) embeddings_.push_back({l, k});
  }
  if (embeddings_.size() != dim_)
    fail(ErrorCode::internal, "embedding count != N*phi(N)");

  // Degree certification for [Q_a(N) : Q] = N*phi(N): odd-prime drops are
  // impossible (Q(a^(1/p)) is non-normal), the 2-part drops exactly when
  // sqrt(squarefree part of a) lies in Q(zeta_N), i.e. disc(Q(sqrt(s))) | N.
  if (a == 1 || n % 2 == 1) {
    field_status_ = FieldStatus::certified_field;
  } else {
    std::uint64_t s = 1;
    for (const auto& [p, e] : factorize(a))
      if (e % 2 == 1) s *= p;
    std::uint64_t disc = (s % 4 == 1) ? s : 4 * s;
    if (disc != 0 && n % disc == 0)
      field_status_ = FieldStatus::degree_drop_detected;
    else if (n % 4 != 0)
      field_status_ = FieldStatus::certified_field;
    else
      field_status_ = FieldStatus::unverified;
  }
}

AlgebraPtr Algebra::make(std::uint64_t a, std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(a, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  AlgebraPtr p(new Algebra(a, n));
  cache.emplace(key, p);
  return p;
}

std::vector<Embedding> Algebra::relative_embeddings(std::uint64_t n1) const {
  if (n1 == 0 || n_ % n1 != 0)
    fail(ErrorCode::invalid_argument, "relative_embeddings: N1 does not divide N");
  std::vector<Embedding> out;
  for (const Embedding& e : embeddings_)
    if (e.l % n1 == 1 % n1 && e.k % n1 == 0) out.push_back(e);
  std::uint64_t expect = (n_ / n1) * (phi_ / totient(n1));
  if (out.size() != expect)
    fail(ErrorCode::internal, "relative embedding count mismatch");
  return out;
}

Element Algebra::apply_automorphism(const Element& e, const Embedding& emb) const {
  if (e.algebra().get() != this)
    fail(ErrorCode::mixed_algebra, "element from another algebra");
  std::vector<Rational> out(dim_, Rational(0));
  for (std::size_t i = 0; i < phi_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const Rational& v = e.coords()[index_of(i, j)];
      if (v == 0) continue;
      // x^i y^j -> x^(i l + j k) y^j
      std::size_t m = static_cast<std::size_t>((i * emb.l + j * emb.k) % n_);
      const auto& xv = xpow_[m];
      for (std::size_t t = 0; t < phi_; ++t)
        if (xv[t] != 0) out[index_of(t, j)] += v * Rational(xv[t]);
    }
  return Element(e.algebra(), std::move(out));
}

Element Algebra::relative_trace(const Element& e, std::uint64_t n1) const {
  Element acc = Element::zero(e.algebra());
  for (const Embedding& emb : relative_embeddings(n1))
    acc = acc + apply_automorphism(e, emb);
  return acc;
}

QMatrix Algebra::mult_matrix(const Element& e) const {
  if (e.algebra().get() != this)
    fail(ErrorCode::mixed_algebra, "element from another algebra");
  QMatrix m(dim_, dim_);
  const BigInt a(a_);
  for (std::size_t i2 = 0; i2 < phi_; ++i2)
    for (std::size_t j2 = 0; j2 < n_; ++j2) {
      const std::size_t col = index_of(i2, j2);
      for (std::size_t i1 = 0; i1 < phi_; ++i1)
        for (std::size_t j1 = 0; j1 < n_; ++j1) {
          const Rational& v1 = e.coords()[index_of(i1, j1)];
          if (v1 == 0) continue;
          Rational v = v1;
          std::size_t j = j1 + j2;
          if (j >= n_) {
            v *= Rational(a);
            j -= n_;
          }
          const auto& xv = xpow_[(i1 + i2) % n_];
          for (std::size_t t = 0; t < phi_; ++t)
            if (xv[t] != 0) m.at(index_of(t, j), col) += v * Rational(xv[t]);
        }
    }
  return m;
}

Rational Algebra::absolute_trace(const Element& e) const {
  QMatrix m = mult_matrix(e);
  Rational tr(0);
  for (std::size_t i = 0; i < dim_; ++i) tr += m.at(i, i);
  return tr;
}

Rational Algebra::absolute_norm(const Element& e) const { return det(mult_matrix(e)); }

QPoly Algebra::char_poly(const Element& e) const {
  // Faddeev-LeVerrier on the regular representation: exact over Q.
  const std::size_t n = dim_;
  QMatrix m = mult_matrix(e);
  QMatrix b = QMatrix::identity(n);
  std::vector<Rational> coeffs(n + 1, Rational(0));
  coeffs[n] = 1;  // monic, lowest degree first at index 0
  Rational ak;
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix mb = m * b;
    Rational tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += mb.at(i, i);
    ak = -tr / Rational(static_cast<long>(k));
    coeffs[n - k] = ak;
    if (k < n) {
      for (std::size_t i = 0; i < n; ++i) mb.at(i, i) += ak;
      b = mb;
    }
  }
  return QPoly(std::move(coeffs));
}

bool Algebra::is_algebraic_integer(const Element& e) const {
  // Integer coordinates: integral by ring closure over the monomial order.
  if (e.integer_coords()) return true;
  return char_poly(e).integer_coefficients();
}

namespace {

class Parser {
 public:
  Parser(AlgebraPtr alg, const std::string& s) : alg_(std::move(alg)), s_(s) {}

  Element run() {
    Element e = expr();
    skip_ws();
    if (pos_ != s_.size()) err("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void err(const std::string& msg) const {
    fail(ErrorCode::parse_error,
         "parse error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Element expr() {
    bool neg = false;
    skip_ws();
    if (eat('+')) {
    } else if (eat('-')) {
      neg = true;
    }
    Element acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  Element term() {
    Element acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Element d = factor();
        Rational q = constant_of(d, at);
        if (q == 0) fail(ErrorCode::parse_error,
                         "parse error at position " + std::to_string(at) + ": division by zero");
        acc = acc.scalar_mul(1 / q);
      } else {
        return acc;
      }
    }
  }

  Rational constant_of(const Element& e, std::size_t at) {
    for (std::size_t i = 0; i < alg_->phi(); ++i)
      for (std::size_t j = 0; j < alg_->n(); ++j)
        if (!(i == 0 && j == 0) && e.coord(i, j) != 0)
          fail(ErrorCode::parse_error, "parse error at position " + std::to_string(at) +
                                           ": division only by rational constants");
    return e.coord(0, 0);
  }

  Element factor() {
    if (eat('-')) return -factor();
    Element base = primary();
    if (eat('^')) {
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        err("expected nonnegative integer exponent");
      unsigned long e = read_uint();
      Element acc = Element::one(alg_);
      for (unsigned long i = 0; i < e; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }

  unsigned long read_uint() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::stoul(s_.substr(start, pos_ - start));
  }

  Element primary() {
    skip_ws();
    if (pos_ >= s_.size()) err("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Element e = expr();
      if (!eat(')')) err("expected ')'");
      return e;
    }
    if (c == 'z') {
      ++pos_;
      return Element::monomial(alg_, 1, 0);
    }
    if (c == 'r') {
      ++pos_;
      return Element::monomial(alg_, 0, 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      BigInt v(s_.substr(start, pos_ - start));
      return Element::from_rational(alg_, Rational(v));
    }
    err(std::string("unexpected character '") + c + "'");
  }

  AlgebraPtr alg_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(const AlgebraPtr& alg, const std::string& text) {
  return Parser(alg, text).run();
}

}  // namespace kummer
