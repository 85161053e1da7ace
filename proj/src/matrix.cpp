#include "liesplit/matrix.hpp"

#include <cmath>
#include <string>

#include "liesplit/kernels.hpp"

namespace liesplit {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_)
      throw DimensionMismatch("matrix initializer rows have unequal lengths");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows_; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void Matrix::require_same_shape(const Matrix& other, const char* op) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionMismatch(std::string(op) + ": shapes " +
                            std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " and " +
                            std::to_string(other.rows_) + "x" +
                            std::to_string(other.cols_) + " differ");
}

void Matrix::require_square(const char* op) const {
  if (rows_ != cols_)
    throw DimensionMismatch(std::string(op) + ": matrix is " +
                            std::to_string(rows_) + "x" +
                            std::to_string(cols_) + ", not square");
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(other, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(other, "subtract");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double Matrix::trace() const {
  require_square("trace");
  double t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_row_sum() const {
  double m = 0.0;
  for (int i = 0; i < rows_; ++i) {
    double r = 0.0;
    for (int j = 0; j < cols_; ++j) r += std::fabs((*this)(i, j));
    if (r > m) m = r;
  }
  return m;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_)
    if (std::fabs(v) > m) m = std::fabs(v);
  return m;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix operator+(Matrix a, const Matrix& b) {
  a += b;
  return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
  a -= b;
  return a;
}

Matrix operator*(double s, Matrix a) {
  a *= s;
  return a;
}

Matrix operator*(Matrix a, double s) {
  a *= s;
  return a;
}

Matrix multiply(const Matrix& a, const Matrix& b, bool trans_a, bool trans_b) {
  const int m = trans_a ? a.cols() : a.rows();
  const int k = trans_a ? a.rows() : a.cols();
  const int kb = trans_b ? b.cols() : b.rows();
  const int n = trans_b ? b.rows() : b.cols();
  if (k != kb)
    throw DimensionMismatch("multiply: inner dimensions " + std::to_string(k) +
                            " and " + std::to_string(kb) + " differ");
  Matrix c(m, n);
  kernels::matmul(a.data(), b.data(), c.data(), m, k, n, trans_a, trans_b);
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  return multiply(a, b, false, false);
}

std::vector<double> operator*(const Matrix& a, const std::vector<double>& x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw DimensionMismatch("matrix-vector product: " +
                            std::to_string(a.cols()) + " columns vs vector of " +
                            std::to_string(x.size()));
  std::vector<double> y(static_cast<std::size_t>(a.rows()));
  kernels::matmul(a.data(), x.data(), y.data(), a.rows(), a.cols(), 1, false,
                  false);
  return y;
}

Matrix symmetric_part(const Matrix& a) {
  a.require_square("symmetric_part");
  Matrix s(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

Matrix skew_part(const Matrix& a) {
  a.require_square("skew_part");
  Matrix s(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) - a(j, i));
  return s;
}

Matrix reshape_to_matrix(const std::vector<double>& v, int rows, int cols) {
  if (static_cast<std::size_t>(rows) * cols != v.size())
    throw DimensionMismatch("reshape: vector length " +
                            std::to_string(v.size()) + " is not " +
                            std::to_string(rows) + "*" + std::to_string(cols));
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = v[static_cast<std::size_t>(i) * cols + j];
  return m;
}

std::vector<double> reshape_to_vector(const Matrix& a) {
  std::vector<double> v(static_cast<std::size_t>(a.rows()) * a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      v[static_cast<std::size_t>(i) * a.cols() + j] = a(i, j);
  return v;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> operator+(std::vector<double> a,
                              const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<double> operator-(std::vector<double> a,
                              const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

std::vector<double> operator*(double s, std::vector<double> a) {
  for (double& v : a) v *= s;
  return a;
}

}  // namespace liesplit
