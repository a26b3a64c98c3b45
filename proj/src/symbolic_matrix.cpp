#include "crnt/symbolic_matrix.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace crnt {

PolynomialMatrix PolynomialMatrix::minor(std::size_t r, std::size_t c) const {
  PolynomialMatrix out(rows_ - 1, cols_ - 1);
  for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
      if (j == c) continue;
      out(oi, oj++) = (*this)(i, j);
    }
    ++oi;
  }
  return out;
}

Polynomial determinant_expansion(const PolynomialMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Polynomial(1);
  if (n > 20) throw std::invalid_argument("matrix too large for expansion");
  // minors[mask]: determinant of rows 0..popcount(mask)-1 restricted to the columns in mask
  std::vector<Polynomial> minors(std::size_t{1} << n);
  minors[0] = Polynomial(1);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t mask = 1; mask < minors.size(); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
      Polynomial sum;
      std::size_t position = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(mask & (std::size_t{1} << j))) continue;
        const Polynomial& entry = a(k - 1, j);
        const Polynomial& sub = minors[mask & ~(std::size_t{1} << j)];
        if (!entry.is_zero() && !sub.is_zero()) {
          const bool negative = ((k - 1) + position) % 2 == 1;
          if (negative) {
            sum -= entry * sub;
          } else {
            sum += entry * sub;
          }
        }
        ++position;
      }
      minors[mask] = std::move(sum);
    }
  }
  return minors.back();
}

Polynomial determinant_bareiss(const PolynomialMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return Polynomial(1);
  PolynomialMatrix m = input;
  Polynomial previous(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return Polynomial();
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = divide_exact(m(k, k) * m(i, j) - m(i, k) * m(k, j), previous);
      }
    }
    previous = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

Polynomial determinant(const PolynomialMatrix& a) {
  return a.rows() <= 8 ? determinant_expansion(a) : determinant_bareiss(a);
}

}  // namespace crnt
