#pragma once

// Exact rational linear algebra: fraction-free (Bareiss) determinants,
// linear solve, kernel. Dimensions at desk scale stay <= ~150.

#include <optional>
#include <vector>

#include "rational.hpp"

namespace kummer {

class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Rational(0)) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  QMatrix operator*(const QMatrix& o) const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  bool operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> e_;
};

// Exact determinant by fraction-free Bareiss elimination (rows are cleared of
// denominators first, so the elimination itself runs over integers).
Rational det(const QMatrix& a);

// Exact solution of A x = b for square or overdetermined systems. Returns
// nullopt when the system is inconsistent or the solution is not unique.
// Throws on dimension mismatch.
std::optional<std::vector<Rational>> solve_linear(const QMatrix& a,
                                                  const std::vector<Rational>& b);

// Basis of the right kernel {x : A x = 0}.
std::vector<std::vector<Rational>> kernel(const QMatrix& a);

std::size_t rank(const QMatrix& a);

}  // namespace kummer
