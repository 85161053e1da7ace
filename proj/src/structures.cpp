#include "liesplit/structures.hpp"

#include <cmath>
#include <string>

#include "liesplit/matkit.hpp"

namespace liesplit {

BilinearStructure BilinearStructure::identity(int n) {
  if (n <= 0) throw DimensionMismatch("identity structure needs n >= 1");
  BilinearStructure b;
  b.kind_ = Kind::Identity;
  b.sign_ = 1;
  b.j_ = Matrix::identity(n);
  b.jinv_ = b.j_;
  return b;
}

BilinearStructure BilinearStructure::pseudo_euclidean(int p, int q) {
  if (p < 0 || q < 0 || p + q <= 0)
    throw DimensionMismatch("pseudo_euclidean structure needs p, q >= 0 and "
                            "p + q >= 1");
  BilinearStructure b;
  b.kind_ = Kind::PseudoEuclidean;
  b.sign_ = 1;
  b.p_ = p;
  b.q_ = q;
  Matrix j(p + q, p + q);
  for (int i = 0; i < p; ++i) j(i, i) = 1.0;
  for (int i = p; i < p + q; ++i) j(i, i) = -1.0;
  b.j_ = j;
  b.jinv_ = j;  // involutive
  return b;
}

BilinearStructure BilinearStructure::symplectic(int m) {
  if (m <= 0) throw DimensionMismatch("symplectic structure needs m >= 1");
  BilinearStructure b;
  b.kind_ = Kind::Symplectic;
  b.sign_ = -1;
  b.m_ = m;
  const int n = 2 * m;
  Matrix j(n, n);
  for (int i = 0; i < m; ++i) {
    j(i, m + i) = 1.0;
    j(m + i, i) = -1.0;
  }
  b.j_ = j;
  b.jinv_ = j.transpose();  // = -J
  return b;
}

BilinearStructure BilinearStructure::custom(const Matrix& j) {
  j.require_square("custom structure");
  const int n = j.rows();
  bool sym = true;
  bool skew = true;
  for (int i = 0; i < n && (sym || skew); ++i) {
    for (int k = 0; k < n; ++k) {
      if (j(i, k) != j(k, i)) sym = false;
      if (j(i, k) != -j(k, i)) skew = false;
    }
  }
  if (!sym && !skew)
    throw SingularCustomJ("custom J must be exactly symmetric or exactly "
                          "skew-symmetric");
  BilinearStructure b;
  b.kind_ = Kind::Custom;
  b.sign_ = sym ? 1 : -1;
  b.j_ = j;
  try {
    b.jinv_ = PivotedLu(j).inverse();
  } catch (const SingularMatrix&) {
    throw SingularCustomJ("custom J is numerically singular");
  }
  return b;
}

std::string BilinearStructure::descriptor() const {
  switch (kind_) {
    case Kind::Identity:
      return "identity";
    case Kind::PseudoEuclidean:
      return "pq:" + std::to_string(p_) + "," + std::to_string(q_);
    case Kind::Symplectic:
      return "symplectic:" + std::to_string(m_);
    case Kind::Custom:
    default:
      return "custom";
  }
}

Matrix j_adjoint(const Matrix& a, const BilinearStructure& j) {
  a.require_square("j_adjoint");
  if (a.rows() != j.n())
    throw DimensionMismatch("j_adjoint: matrix is " + std::to_string(a.rows()) +
                            "x" + std::to_string(a.cols()) + " but J has n = " +
                            std::to_string(j.n()));
  return j.inverse() * multiply(a, j.matrix(), true, false);
}

double membership_residual(const Matrix& w, const BilinearStructure& j,
                           AlgebraSide side) {
  w.require_square("membership_residual");
  if (w.rows() != j.n())
    throw DimensionMismatch("membership_residual: matrix order " +
                            std::to_string(w.rows()) + " but J has n = " +
                            std::to_string(j.n()));
  const Matrix wtj = multiply(w, j.matrix(), true, false);
  const Matrix jw = j.matrix() * w;
  return side == AlgebraSide::Lie ? (wtj + jw).frobenius_norm()
                                  : (wtj - jw).frobenius_norm();
}

bool is_member(const Matrix& w, const BilinearStructure& j, AlgebraSide side,
               double rel_tol) {
  return membership_residual(w, j, side) <=
         rel_tol * (1.0 + w.frobenius_norm());
}

Matrix project_onto(const Matrix& x, const BilinearStructure& j,
                    AlgebraSide side) {
  x.require_square("project_onto");
  if (x.rows() != j.n())
    throw DimensionMismatch("project_onto: matrix order " +
                            std::to_string(x.rows()) + " but J has n = " +
                            std::to_string(j.n()));
  const Matrix jxtjinv =
      j.matrix() * multiply(x, j.inverse(), true, false);
  return side == AlgebraSide::Lie ? 0.5 * (x - jxtjinv) : 0.5 * (x + jxtjinv);
}

int projector_dimension(const BilinearStructure& j, AlgebraSide side) {
  const int n = j.n();
  double tr = 0.0;
  Matrix e(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      e(i, k) = 1.0;
      tr += project_onto(e, j, side)(i, k);
      e(i, k) = 0.0;
    }
  }
  return static_cast<int>(std::lround(tr));
}

}  // namespace liesplit
