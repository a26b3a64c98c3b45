#pragma once

// Exact dense linear algebra over a field. Everything here is templated on
// the scalar and performs no pivot-size heuristics: a pivot is any entry that
// compares unequal to zero, so the scalar must be an exact field (Rational).

#include "crnt/rational.hpp"

#include <numeric>
#include <type_traits>
#include <vector>

namespace crnt {

template <typename Scalar>
struct RrefResult {
  Matrix<Scalar> reduced;    // R
  Matrix<Scalar> transform;  // P with P * A == R
  std::vector<Eigen::Index> pivots;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Gauss-Jordan elimination that tracks the accumulated row operations.
template <typename Derived>
RrefResult<typename Derived::Scalar> rref_with_transform(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  RrefResult<Scalar> out;
  out.reduced = a;
  out.transform = Matrix<Scalar>::Identity(rows, rows);
  auto& r = out.reduced;
  auto& p = out.transform;

  Eigen::Index lead = 0;
  for (Eigen::Index c = 0; c < cols && lead < rows; ++c) {
    Eigen::Index pivot = lead;
    while (pivot < rows && r(pivot, c) == Scalar(0)) ++pivot;
    if (pivot == rows) continue;
    if (pivot != lead) {
      r.row(pivot).swap(r.row(lead));
      p.row(pivot).swap(p.row(lead));
    }
    const Scalar inv = Scalar(1) / r(lead, c);
    r.row(lead) *= inv;
    p.row(lead) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == lead || r(i, c) == Scalar(0)) continue;
      const Scalar f = r(i, c);
      r.row(i) -= f * r.row(lead);
      p.row(i) -= f * p.row(lead);
    }
    out.pivots.push_back(c);
    ++lead;
  }
  return out;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return rref_with_transform(a).rank();
}

/// True iff `r` is in reduced row echelon form.
template <typename Derived>
bool is_rref(const Eigen::MatrixBase<Derived>& r) {
  using Scalar = typename Derived::Scalar;
  Eigen::Index last_pivot = -1;
  bool seen_zero_row = false;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    Eigen::Index pc = -1;
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      if (r(i, j) != Scalar(0)) {
        pc = j;
        break;
      }
    }
    if (pc < 0) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row || pc <= last_pivot || r(i, pc) != Scalar(1)) return false;
    for (Eigen::Index k = 0; k < r.rows(); ++k) {
      if (k != i && r(k, pc) != Scalar(0)) return false;
    }
    last_pivot = pc;
  }
  return true;
}

namespace detail {

// Clears denominators of a rational column and divides out the content.
inline void integer_scale_column(Eigen::Ref<RationalVector> v) {
  Integer lcm_den(1);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0) lcm_den = boost::multiprecision::lcm(lcm_den, denominator_of(v(i)));
  }
  Integer gcd_num(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0) continue;
    Rational scaled = v(i) * Rational(lcm_den);
    gcd_num = boost::multiprecision::gcd(gcd_num, numerator_of(scaled));
  }
  if (gcd_num == 0) return;
  const Rational factor = Rational(lcm_den) / Rational(gcd_num);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) *= factor;
}

}  // namespace detail

/// Basis of ker(A) as columns. Column t corresponds to the t-th free column f
/// of the echelon form and has entry 1 (before scaling) at row f; for Rational
/// the columns are then integer-scaled with content 1, keeping that free entry
/// positive.
template <typename Derived>
Matrix<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) return Matrix<Scalar>::Identity(cols, cols);
  const auto rr = rref_with_transform(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto pc : rr.pivots) is_pivot[static_cast<std::size_t>(pc)] = true;

  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  }
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    const Eigen::Index f = free_cols[t];
    const auto col = static_cast<Eigen::Index>(t);
    basis(f, col) = Scalar(1);
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
      basis(rr.pivots[k], col) = -rr.reduced(static_cast<Eigen::Index>(k), f);
    }
    if constexpr (std::is_same_v<Scalar, Rational>) {
      detail::integer_scale_column(basis.col(col));
    }
  }
  return basis;
}

/// Generalized inverse H (A*H*A == A) built from the echelon transform:
/// H = Q*P where Q routes pivot row k of P*A to pivot column k. Free
/// variables of the underlying linear system are set to zero.
template <typename Derived>
Matrix<typename Derived::Scalar> generalized_inverse(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const auto rr = rref_with_transform(a);
  Matrix<Scalar> selector = Matrix<Scalar>::Zero(a.cols(), a.rows());
  for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
    selector(rr.pivots[k], static_cast<Eigen::Index>(k)) = Scalar(1);
  }
  return selector * rr.transform;
}

/// True iff the column spaces of `a` and `b` coincide (mutual containment).
template <typename DerivedA, typename DerivedB>
bool same_column_space(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.rows() != b.rows()) return false;
  Matrix<Scalar> joint(a.rows(), a.cols() + b.cols());
  joint << a, b;
  const auto ra = exact_rank(a);
  return ra == exact_rank(b) && ra == exact_rank(joint);
}

}  // namespace crnt
