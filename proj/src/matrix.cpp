#include "matrix.hpp"

#include <algorithm>

namespace kummer {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::dimension_mismatch, "matrix product shape");
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& v = at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) fail(ErrorCode::dimension_mismatch, "matrix apply shape");
  std::vector<Rational> r(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * v[j];
  return r;
}

Rational det(const QMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::dimension_mismatch, "det of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);

  // Clear denominators row by row; det(A) = det(integer matrix) / prod(scales).
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  BigInt scale(1);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt lcm(1);
    for (std::size_t j = 0; j < n; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.at(i, j).get_den().get_mpz_t());
    scale *= lcm;
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = a.at(i, j) * Rational(lcm);
      m[i][j] = v.get_num();
    }
  }

  BigInt prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return Rational(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  Rational r(sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1], scale);
  r.canonicalize();
  return r;
}

namespace {

struct Echelon {
  std::vector<std::vector<Rational>> rows;  // reduced rows, augmented or not
  std::vector<std::size_t> pivot_col;       // pivot column of each nonzero row
};

// Gauss-Jordan over Q on an augmented or plain matrix.
Echelon reduce(std::vector<std::vector<Rational>> m, std::size_t cols) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = col; j < m[i].size(); ++j) m[i][j] -= f * m[row][j];
    }
    e.pivot_col.push_back(col);
    ++row;
  }
  m.resize(m.size());
  e.rows = std::move(m);
  return e;
}

}  // namespace

std::optional<std::vector<Rational>> solve_linear(const QMatrix& a,
                                                  const std::vector<Rational>& b) {
  if (b.size() != a.rows()) fail(ErrorCode::dimension_mismatch, "solve_linear shape");
  if (a.rows() < a.cols()) fail(ErrorCode::dimension_mismatch, "solve_linear: underdetermined");
  const std::size_t n = a.cols();
  std::vector<std::vector<Rational>> m(a.rows(), std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a.at(i, j);
    m[i][n] = b[i];
  }
  Echelon e = reduce(std::move(m), n);
  // Inconsistent: a row 0 = nonzero.
  for (std::size_t i = e.pivot_col.size(); i < e.rows.size(); ++i)
    if (e.rows[i][n] != 0) return std::nullopt;
  if (e.pivot_col.size() < n) return std::nullopt;  // not uniquely determined
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[e.pivot_col[i]] = e.rows[i][n];
  return x;
}

std::vector<std::vector<Rational>> kernel(const QMatrix& a) {
  const std::size_t n = a.cols();
  std::vector<std::vector<Rational>> m(a.rows(), std::vector<Rational>(n));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a.at(i, j);
  Echelon e = reduce(std::move(m), n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : e.pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivot_col.size(); ++i)
      v[e.pivot_col[i]] = -e.rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const QMatrix& a) {
  std::vector<std::vector<Rational>> m(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a.at(i, j);
  return reduce(std::move(m), a.cols()).pivot_col.size();
}

}  // namespace kummer
