#pragma once

#include "crnt/polynomial.hpp"

#include <cstddef>
#include <vector>

namespace crnt {

/// Dense row-major matrix of polynomials.
class PolynomialMatrix {
 public:
  PolynomialMatrix() = default;
  PolynomialMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Copy with row r and column c removed.
  PolynomialMatrix minor(std::size_t r, std::size_t c) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> data_;
};

/// Division-free Laplace expansion, memoized over column subsets. Exponential
/// in the dimension; intended for n <= 16.
Polynomial determinant_expansion(const PolynomialMatrix& a);

/// Fraction-free Bareiss elimination with exact polynomial division.
Polynomial determinant_bareiss(const PolynomialMatrix& a);

/// Expansion for n <= 8, Bareiss above.
Polynomial determinant(const PolynomialMatrix& a);

}  // namespace crnt
