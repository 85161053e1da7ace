#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "liesplit/errors.hpp"

namespace liesplit {

// Dense real matrix, row-major, value semantics. Entries are expected to be
// finite; file readers and the CLI enforce that at the boundary, internal
// algebra assumes it.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, 0.0) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(int n);
  static Matrix diagonal(const std::vector<double>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  Matrix transpose() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  double trace() const;
  double frobenius_norm() const;
  // Max row sum (infinity norm); the scale used by pivot thresholds.
  double max_row_sum() const;
  double max_abs() const;
  bool all_finite() const;

  // Fails loudly on shape mismatch instead of silently broadcasting.
  void require_same_shape(const Matrix& other, const char* op) const;
  void require_square(const char* op) const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(Matrix a, double s);
Matrix operator*(const Matrix& a, const Matrix& b);

// op(A) * op(B) without forming explicit transposes.
Matrix multiply(const Matrix& a, const Matrix& b, bool trans_a, bool trans_b);

std::vector<double> operator*(const Matrix& a, const std::vector<double>& x);

Matrix symmetric_part(const Matrix& a);
Matrix skew_part(const Matrix& a);

// Row-major reshape between length-n*m vectors and n x m matrices.
Matrix reshape_to_matrix(const std::vector<double>& v, int rows, int cols);
std::vector<double> reshape_to_vector(const Matrix& a);

double norm2(const std::vector<double>& v);
double dot(const std::vector<double>& a, const std::vector<double>& b);

std::vector<double> operator+(std::vector<double> a,
                              const std::vector<double>& b);
std::vector<double> operator-(std::vector<double> a,
                              const std::vector<double>& b);
std::vector<double> operator*(double s, std::vector<double> a);

}  // namespace liesplit
