#pragma once

#include <complex>
#include <vector>

#include "liesplit/matrix.hpp"
#include "liesplit/tolerances.hpp"

namespace liesplit {

// Row-pivoted LU of a square matrix, factored once and reused across solves.
// Iterative solvers rely on that reuse; per-iteration refactoring is the
// expensive mistake this class exists to prevent.
class PivotedLu {
public:
  explicit PivotedLu(const Matrix& a,
                     double pivot_rel_tol = defaults::pivot_rel_tol);

  std::vector<double> solve(const std::vector<double>& b) const;
  Matrix solve(const Matrix& b) const;
  Matrix inverse() const;

  int size() const { return lu_.rows(); }

private:
  Matrix lu_;
  std::vector<int> perm_;
};

// One-shot pivoted solve, A X = B.
Matrix solve_dense(const Matrix& a, const Matrix& b,
                   double pivot_rel_tol = defaults::pivot_rel_tol);
std::vector<double> solve_dense(const Matrix& a, const std::vector<double>& b,
                                double pivot_rel_tol = defaults::pivot_rel_tol);

struct EigenReport {
  std::vector<std::complex<double>> values;  // sorted, see producers
  bool symmetric_input = false;
};

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations. The input may
// deviate from symmetry by at most sym_rel_tol * ||A||_F (it is symmetrized
// internally); more than that throws NotSymmetric. Values come back real and
// ascending.
EigenReport sym_eigenvalues(const Matrix& a,
                            double sym_rel_tol = defaults::symmetry_rel_tol,
                            double off_rel_tol = defaults::jacobi_off_rel_tol);

// Real (ascending) eigenvalues of a symmetric matrix; thin wrapper over
// sym_eigenvalues.
std::vector<double> sym_eigenvalues_real(
    const Matrix& a, double sym_rel_tol = defaults::symmetry_rel_tol,
    double off_rel_tol = defaults::jacobi_off_rel_tol);

// Eigenvalues of a general real square matrix: Householder reduction to
// Hessenberg form, then implicitly shifted (Francis double-shift) QR with
// deflation. Complex eigenvalues appear in conjugate pairs. Values are sorted
// by real part, then imaginary part. Throws NoConvergence when the sweep
// budget (eig_sweeps_per_n * n) runs out and DimensionMismatch above
// eig_max_n, which is a deliberate desk-scale cap.
EigenReport eigenvalues_general(const Matrix& a);

double spectral_radius(const EigenReport& r);

// Largest singular value, computed from the symmetric eigenvalues of A^T A.
double spectral_norm2(const Matrix& a);

// Matrix exponential by scaling-and-squaring: scale so ||A||_F / 2^s <= 0.5,
// run a fixed 18-term Taylor series, square s times. Relative accuracy is
// far inside 1e-12 at desk scale.
Matrix expm(const Matrix& a);

// Principal matrix square root by the Denman-Beavers iteration. Requires the
// spectrum to avoid the closed negative real axis (checked up front through
// eigenvalues_general); throws NegativeRealEigenvalue otherwise, NoConvergence
// after the iteration cap. The result satisfies ||X^2 - A||_F <=
// sqrtm_residual_rel * ||A||_F and in practice lands near machine precision.
Matrix sqrtm_principal(const Matrix& a,
                       double residual_rel = defaults::sqrtm_residual_rel);

}  // namespace liesplit
