#include "poly.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace kummer {

IntPoly IntPoly::constant(const BigInt& v) {
  if (v == 0) return IntPoly();
  return IntPoly(std::vector<BigInt>{v});
}

IntPoly IntPoly::x_pow_minus(unsigned n, const BigInt& a) {
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[0] = -a;
  c[n] = 1;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), BigInt(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), BigInt(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<BigInt> r(c_.size() + o.c_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::divide_exact(const IntPoly& divisor) const {
  if (divisor.is_zero()) fail(ErrorCode::invalid_argument, "polynomial division by zero");
  if (is_zero()) return IntPoly();
  if (degree() < divisor.degree())
    fail(ErrorCode::internal, "inexact polynomial division (degree)");
  std::vector<BigInt> rem = c_;
  std::vector<BigInt> quot(c_.size() - divisor.c_.size() + 1, BigInt(0));
  const BigInt& lead = divisor.c_.back();
  for (int i = static_cast<int>(rem.size()) - 1;
       i >= static_cast<int>(divisor.c_.size()) - 1; --i) {
    if (rem[i] == 0) continue;
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[i].get_mpz_t(), lead.get_mpz_t());
    if (r != 0) fail(ErrorCode::internal, "inexact polynomial division (leading)");
    std::size_t shift = i - (divisor.c_.size() - 1);
    quot[shift] = q;
    for (std::size_t j = 0; j < divisor.c_.size(); ++j)
      rem[shift + j] -= q * divisor.c_[j];
  }
  for (const BigInt& v : rem)
    if (v != 0) fail(ErrorCode::internal, "inexact polynomial division (remainder)");
  return IntPoly(std::move(quot));
}

Rational IntPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& v = c_[i];
    if (v == 0) continue;
    if (!first) os << (v > 0 ? " + " : " - ");
    else if (v < 0) os << "-";
    BigInt av = abs(v);
    if (av != 1 || i == 0) os << av.get_str();
    if (i > 0) {
      if (av != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

const IntPoly& cyclotomic_poly(std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::uint64_t, IntPoly> cache;
  if (n == 0) fail(ErrorCode::invalid_argument, "cyclotomic_poly: N must be >= 1");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // Phi_n = (X^n - 1) / prod_{d | n, d < n} Phi_d, computed bottom-up so the
  // recursion never re-enters the lock.
  for (std::uint64_t m = 1; m <= n; ++m) {
    if (n % m != 0 || cache.count(m)) continue;
    IntPoly p = IntPoly::x_pow_minus(static_cast<unsigned>(m), 1);
    for (std::uint64_t d = 1; d < m; ++d)
      if (m % d == 0) p = p.divide_exact(cache.at(d));
    cache.emplace(m, std::move(p));
  }
  return cache.at(n);
}

bool QPoly::integer_coefficients() const {
  for (const Rational& q : c_)
    if (!is_integer(q)) return false;
  return true;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& v = c_[i];
    if (v == 0) continue;
    if (!first) os << (v > 0 ? " + " : " - ");
    else if (v < 0) os << "-";
    Rational av = abs(v);
    if (av != 1 || i == 0) os << av.get_str();
    if (i > 0) {
      if (av != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

}  // namespace kummer
