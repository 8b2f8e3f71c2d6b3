#include "chevtwist/matrix.hpp"

#include <sstream>

namespace chevtwist {

Matrix identity_matrix(int n, const FieldDescriptor& field) {
  Scalar zero = Scalar::in(field, 0), one = Scalar::in(field, 1);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = i == j ? one : zero;
  return m;
}

Matrix zero_matrix(int rows, int cols, const FieldDescriptor& field) {
  Scalar zero = Scalar::in(field, 0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = zero;
  return m;
}

Matrix from_integers(const Eigen::MatrixXi& a, const FieldDescriptor& field) {
  Matrix m(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m(i, j) = Scalar::in(field, a(i, j));
  return m;
}

namespace {
const FieldDescriptor* field_of(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j).field()) return m(i, j).field();
  return nullptr;
}
}  // namespace

Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::InvalidArgument, "matrix dimension mismatch in product");
  const Eigen::Index n = a.rows(), inner = a.cols(), m = b.cols();
  // Nonzero pattern of b by row.
  std::vector<std::vector<Eigen::Index>> row_nz(static_cast<std::size_t>(inner));
  for (Eigen::Index k = 0; k < inner; ++k)
    for (Eigen::Index j = 0; j < m; ++j)
      if (!b(k, j).is_zero()) row_nz[static_cast<std::size_t>(k)].push_back(j);
  const FieldDescriptor* f = field_of(a);
  if (!f) f = field_of(b);
  Scalar zero = f ? Scalar::in(*f, 0) : Scalar(0);
  Matrix c(n, m);
  c.fill(zero);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < inner; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (Eigen::Index j : row_nz[static_cast<std::size_t>(k)]) c(i, j) += x * b(k, j);
    }
  return c;
}

Vector mul(const Matrix& a, const Vector& v) {
  if (a.cols() != v.rows()) fail(ErrorCode::InvalidArgument, "matrix dimension mismatch in product");
  Vector out(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Scalar acc = v.size() ? v(0) - v(0) : Scalar(0);
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      if (!a(i, k).is_zero() && !v(k).is_zero()) acc += a(i, k) * v(k);
    out(i) = acc;
  }
  return out;
}

Matrix map_entries(const Matrix& m, const std::function<Scalar(const Scalar&)>& f) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  return out;
}

Matrix normalized(const Matrix& m, const FieldDescriptor& field) {
  return map_entries(m, [&](const Scalar& x) { return x.promoted(field); });
}

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && !m(i, j).is_zero()) return false;
  return true;
}

bool is_identity(const Matrix& m) {
  if (m.rows() != m.cols() || !is_diagonal(m)) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (!m(i, i).is_one()) return false;
  return true;
}

bool equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

Scalar trace(const Matrix& m) {
  const FieldDescriptor* f = field_of(m);
  Scalar t = f ? Scalar::in(*f, 0) : Scalar(0);
  for (Eigen::Index i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

std::vector<std::uint32_t> finite_codes(const Matrix& m) {
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j).finite_code());
  return out;
}

std::string to_string(const Matrix& m) {
  std::ostringstream out;
  out << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << (i ? ", [" : "[");
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << m(i, j).to_string();
    out << "]";
  }
  out << "]";
  return out.str();
}

namespace {
Scalar one_for(const Matrix& m) {
  const FieldDescriptor* f = field_of(m);
  return f ? Scalar::in(*f, 1) : Scalar(1);
}
}  // namespace

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "inverse of a non-square matrix");
  return inverse_exact<Scalar>(m, one_for(m));
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  return determinant_exact<Scalar>(m, one_for(m));
}

Polynomial charpoly(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "charpoly of a non-square matrix");
  return Polynomial(charpoly_exact<Scalar>(m, one_for(m)));
}

}  // namespace chevtwist
