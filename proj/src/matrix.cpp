#include "cluster/matrix.hpp"

#include <sstream>

#include "cluster/errors.hpp"

namespace cluster {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<long long>> r;
  for (const auto& row : rows) r.emplace_back(row);
  *this = from_rows(r);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  if (rows.empty()) return IntMatrix();
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows_; ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols_)
      throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
    for (int j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::top(int k) const {
  IntMatrix t(k, cols_);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < cols_; ++j) t(i, j) = (*this)(i, j);
  return t;
}

std::vector<long long> IntMatrix::row(int i) const {
  return std::vector<long long>(a_.begin() + static_cast<long>(i) * cols_,
                                a_.begin() + static_cast<long>(i + 1) * cols_);
}

std::vector<long long> IntMatrix::col(int j) const {
  std::vector<long long> c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<std::vector<long long>> IntMatrix::to_rows() const {
  std::vector<std::vector<long long>> r;
  for (int i = 0; i < rows_; ++i) r.push_back(row(i));
  return r;
}

std::vector<long long> IntMatrix::apply(const std::vector<long long>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch in apply");
  std::vector<long long> out(rows_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch in product");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      long long v = a(i, k);
      if (!v) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += v * b(k, j);
    }
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NonInvertibleImage: return "NonInvertibleImage";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnsignedColumn: return "UnsignedColumn";
    case ErrorKind::NonSkewSymmetrizable: return "NonSkewSymmetrizable";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NotAcyclic: return "NotAcyclic";
    case ErrorKind::NotAffineType: return "NotAffineType";
    case ErrorKind::HeightBoundTooSmall: return "HeightBoundTooSmall";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::NotInImaginaryWall: return "NotInImaginaryWall";
    case ErrorKind::NotMaximal: return "NotMaximal";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::IdentityViolated: return "IdentityViolated";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace cluster
