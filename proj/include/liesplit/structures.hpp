#pragma once

#include <string>

#include "liesplit/matrix.hpp"
#include "liesplit/tolerances.hpp"

namespace liesplit {

// The two matrix classes attached to a bilinear form J: the Lie algebra
// {W : W^T J + J W = 0} and the Jordan algebra {W : W^T J - J W = 0}.
enum class AlgebraSide { Lie, Jordan };

// A nondegenerate symmetric or skew-symmetric bilinear form, realized as an
// explicit matrix J with its inverse cached.
//
// Two adjoint conventions appear in the literature: J^-1 A^T J (used by
// j_adjoint) and J A^T J^-1 (used by the Lie/Jordan projectors and the
// splitting built on them). They coincide whenever J^2 is a scalar multiple
// of the identity, which covers all three canonical kinds below. For a
// custom J violating that, the projector convention governs the splitting,
// and the membership identities of this header are guaranteed only for the
// canonical kinds.
class BilinearStructure {
public:
  enum class Kind { Identity, PseudoEuclidean, Symplectic, Custom };

  static BilinearStructure identity(int n);
  // J = diag(I_p, -I_q); symmetric, involutive.
  static BilinearStructure pseudo_euclidean(int p, int q);
  // J = [[0, I_m], [-I_m, 0]]; skew-symmetric, J^-1 = -J = J^T.
  static BilinearStructure symplectic(int m);
  // j must be exactly symmetric or exactly skew-symmetric (zero tolerance)
  // and invertible; throws SingularCustomJ otherwise.
  static BilinearStructure custom(const Matrix& j);

  Kind kind() const { return kind_; }
  int n() const { return j_.rows(); }
  int p() const { return p_; }
  int q() const { return q_; }
  int m() const { return m_; }
  // +1 when J^T = J, -1 when J^T = -J.
  int sign() const { return sign_; }

  const Matrix& matrix() const { return j_; }
  const Matrix& inverse() const { return jinv_; }

  // "identity", "pq:p,q", "symplectic:m", "custom".
  std::string descriptor() const;

private:
  BilinearStructure() = default;

  Kind kind_ = Kind::Identity;
  int p_ = 0;
  int q_ = 0;
  int m_ = 0;
  int sign_ = 1;
  Matrix j_;
  Matrix jinv_;
};

// A* = J^-1 A^T J.
Matrix j_adjoint(const Matrix& a, const BilinearStructure& j);

// ||W^T J + J W||_F (Lie) or ||W^T J - J W||_F (Jordan).
double membership_residual(const Matrix& w, const BilinearStructure& j,
                           AlgebraSide side);

bool is_member(const Matrix& w, const BilinearStructure& j, AlgebraSide side,
               double rel_tol = defaults::membership_rel_tol);

// Projection of X onto the requested side: (X -/+ J X^T J^-1) / 2, with the
// minus sign for Lie.
Matrix project_onto(const Matrix& x, const BilinearStructure& j,
                    AlgebraSide side);

// Trace of the projector over the n^2 elementary matrices, rounded to the
// nearest integer: the dimension of the side as a linear subspace.
int projector_dimension(const BilinearStructure& j, AlgebraSide side);

}  // namespace liesplit
