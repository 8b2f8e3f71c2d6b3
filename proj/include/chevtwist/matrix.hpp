#pragma once

// Dense exact matrices over Scalar, plus field-generic elimination kernels.

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "chevtwist/scalar.hpp"

namespace Eigen {
template <>
struct NumTraits<chevtwist::Scalar> : GenericNumTraits<chevtwist::Scalar> {
  using Real = chevtwist::Scalar;
  using NonInteger = chevtwist::Scalar;
  using Literal = chevtwist::Scalar;
  using Nested = chevtwist::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 100
  };
};
}  // namespace Eigen

namespace chevtwist {

using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

Matrix identity_matrix(int n, const FieldDescriptor& field);
Matrix zero_matrix(int rows, int cols, const FieldDescriptor& field);
Matrix from_integers(const Eigen::MatrixXi& m, const FieldDescriptor& field);

// Exact product that skips zero entries on both sides; the matrices we multiply
// are mostly sparse.
Matrix mul(const Matrix& a, const Matrix& b);
Vector mul(const Matrix& a, const Vector& v);

Matrix map_entries(const Matrix& m, const std::function<Scalar(const Scalar&)>& f);
// Every entry tagged with `field` (untagged literals promoted).
Matrix normalized(const Matrix& m, const FieldDescriptor& field);

bool is_diagonal(const Matrix& m);
bool is_identity(const Matrix& m);
bool equal(const Matrix& a, const Matrix& b);
Scalar trace(const Matrix& m);

// Finite-field code vector (row-major); the matrix must live over a finite field.
std::vector<std::uint32_t> finite_codes(const Matrix& m);

std::string to_string(const Matrix& m);

namespace detail {
inline bool entry_is_zero(const Scalar& x) { return x.is_zero(); }
inline bool entry_is_zero(const Rational& x) { return sgn(x) == 0; }
}  // namespace detail

// Gauss-Jordan inverse over any exact field type T. Throws DivisionByZero when singular.
template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> inverse_exact(
    const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& m, const T& one) {
  const Eigen::Index n = m.rows();
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> a = m;
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> inv(n, n);
  T zero = one - one;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) inv(i, j) = i == j ? one : zero;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && detail::entry_is_zero(a(pivot, col))) ++pivot;
    if (pivot == n) fail(ErrorCode::DivisionByZero, "matrix is singular");
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      inv.row(pivot).swap(inv.row(col));
    }
    T p = one / a(col, col);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!detail::entry_is_zero(a(col, j))) a(col, j) = a(col, j) * p;
      if (!detail::entry_is_zero(inv(col, j))) inv(col, j) = inv(col, j) * p;
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || detail::entry_is_zero(a(r, col))) continue;
      T factor = a(r, col);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!detail::entry_is_zero(a(col, j))) a(r, j) = a(r, j) - factor * a(col, j);
        if (!detail::entry_is_zero(inv(col, j))) inv(r, j) = inv(r, j) - factor * inv(col, j);
      }
    }
  }
  return inv;
}

template <class T>
T determinant_exact(Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> a, const T& one) {
  const Eigen::Index n = a.rows();
  T det = one;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && detail::entry_is_zero(a(pivot, col))) ++pivot;
    if (pivot == n) return one - one;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det = det * a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (detail::entry_is_zero(a(r, col))) continue;
      T factor = a(r, col) / a(col, col);
      for (Eigen::Index j = col; j < n; ++j) a(r, j) = a(r, j) - factor * a(col, j);
    }
  }
  return det;
}

// Coefficients of det(lambda*I - m), lowest degree first (monic, length n+1).
// Similarity reduction to upper Hessenberg form, then the standard recurrence
// on leading principal submatrices.
template <class T>
std::vector<T> charpoly_exact(Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> h, const T& one) {
  const Eigen::Index n = h.rows();
  const T zero = one - one;
  for (Eigen::Index k = 0; k + 2 <= n; ++k) {
    Eigen::Index pivot = k + 1;
    while (pivot < n && detail::entry_is_zero(h(pivot, k))) ++pivot;
    if (pivot == n) continue;
    if (pivot != k + 1) {
      h.row(pivot).swap(h.row(k + 1));
      h.col(pivot).swap(h.col(k + 1));
    }
    T inv = one / h(k + 1, k);
    for (Eigen::Index r = k + 2; r < n; ++r) {
      if (detail::entry_is_zero(h(r, k))) continue;
      T u = h(r, k) * inv;
      for (Eigen::Index j = 0; j < n; ++j)
        if (!detail::entry_is_zero(h(k + 1, j))) h(r, j) = h(r, j) - u * h(k + 1, j);
      for (Eigen::Index i = 0; i < n; ++i)
        if (!detail::entry_is_zero(h(i, r))) h(i, k + 1) = h(i, k + 1) + u * h(i, r);
    }
  }
  // p[k] = charpoly of the leading k x k block.
  std::vector<std::vector<T>> p(static_cast<std::size_t>(n) + 1);
  p[0] = {one};
  for (Eigen::Index k = 1; k <= n; ++k) {
    std::vector<T>& cur = p[static_cast<std::size_t>(k)];
    const std::vector<T>& prev = p[static_cast<std::size_t>(k - 1)];
    cur.assign(static_cast<std::size_t>(k) + 1, zero);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      cur[i + 1] = cur[i + 1] + prev[i];
      cur[i] = cur[i] - h(k - 1, k - 1) * prev[i];
    }
    T prod = one;
    for (Eigen::Index i = 1; i < k; ++i) {
      prod = prod * h(k - i, k - i - 1);
      if (detail::entry_is_zero(prod)) break;
      T c = prod * h(k - i - 1, k - 1);
      if (detail::entry_is_zero(c)) continue;
      const std::vector<T>& q = p[static_cast<std::size_t>(k - i - 1)];
      for (std::size_t j = 0; j < q.size(); ++j) cur[j] = cur[j] - c * q[j];
    }
  }
  return p[static_cast<std::size_t>(n)];
}

Matrix inverse(const Matrix& m);
Scalar determinant(const Matrix& m);
Polynomial charpoly(const Matrix& m);

}  // namespace chevtwist
