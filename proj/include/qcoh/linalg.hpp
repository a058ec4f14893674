#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qcoh {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/**
 * Reduced row echelon form of an exact-scalar matrix.
 *
 * Pivot selection is "first nonzero in column" which is deterministic and
 * valid for any exact field scalar (no magnitude considerations apply).
 */
template <class Scalar>
struct Rref {
  Matrix<Scalar> mat;
  std::vector<Eigen::Index> pivot_cols;  // ascending; pivot i sits in row i
};

template <class Scalar>
Rref<Scalar> reduced_row_echelon(Matrix<Scalar> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Rref<Scalar> out;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c) != Scalar(0)) { p = i; break; }
    }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    if (m(r, c) != Scalar(1)) m.row(r) /= m(r, c);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i != r && m(i, c) != Scalar(0)) m.row(i) -= m(i, c) * m.row(r);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.mat = std::move(m);
  return out;
}

/**
 * Rank over the scalar field, by exact elimination.
 */
template <class Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  Matrix<S> work = m;
  return static_cast<Eigen::Index>(reduced_row_echelon(std::move(work)).pivot_cols.size());
}

// Entrywise equality; safe for scalars without abs() or norms.
template <class Scalar>
bool matrix_equal(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (a(r, c) != b(r, c)) return false;
  return true;
}

/**
 * Basis of the right kernel, one basis vector per column.
 *
 * Returns a cols x nullity matrix; satisfies m * kernel_basis(m) == 0 and
 * rank + nullity == cols. Column order follows ascending free-column index,
 * so the result is deterministic.
 */
template <class Derived>
Matrix<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  Matrix<S> work = m;
  const Eigen::Index cols = work.cols();
  Rref<S> rr = reduced_row_echelon(std::move(work));
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (Eigen::Index c : rr.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
  const Eigen::Index nullity = cols - static_cast<Eigen::Index>(rr.pivot_cols.size());
  Matrix<S> ker = Matrix<S>::Zero(cols, nullity);
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    ker(f, k) = S(1);
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
      const S v = rr.mat(static_cast<Eigen::Index>(i), f);
      if (v != S(0)) ker(rr.pivot_cols[i], k) = -v;
    }
    ++k;
  }
  return ker;
}

/**
 * Exact solve of m * x = b.
 *
 * @returns a particular solution (free variables set to zero), or nullopt if
 *          the system is inconsistent.
 * @throws std::invalid_argument on row-count mismatch.
 */
template <class Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& m, const Vector<Scalar>& b) {
  if (m.rows() != b.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Matrix<Scalar> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  Rref<Scalar> rr = reduced_row_echelon(std::move(aug));
  for (Eigen::Index c : rr.pivot_cols) {
    if (c == m.cols()) return std::nullopt;  // pivot in the augmented column
  }
  Vector<Scalar> x = Vector<Scalar>::Zero(m.cols());
  for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
    x(rr.pivot_cols[i]) = rr.mat(static_cast<Eigen::Index>(i), m.cols());
  }
  return x;
}

}  // namespace qcoh
