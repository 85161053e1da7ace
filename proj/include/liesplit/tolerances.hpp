#pragma once

#include <cstdint>

// Single table of default tolerances and limits. Every routine that uses one
// of these also accepts it as a parameter, so callers can override per call.

namespace liesplit::defaults {

// Relative pivot threshold for row-pivoted elimination and pivot-free LU,
// measured against the max row sum of the input.
inline constexpr double pivot_rel_tol = 1e-14;

// Symmetry acceptance for sym_eigenvalues: ||A - A^T||_F <= tol * ||A||_F.
inline constexpr double symmetry_rel_tol = 1e-12;

// Cyclic Jacobi stops when the off-diagonal Frobenius norm drops below
// this multiple of ||A||_F.
inline constexpr double jacobi_off_rel_tol = 1e-13;

inline constexpr int jacobi_max_sweeps = 100;

// General eigensolver: desk-scale cap and QR iteration budget (per matrix,
// counted as 100 * n implicit sweeps).
inline constexpr int eig_max_n = 256;
inline constexpr int eig_sweeps_per_n = 100;

// expm scales so that ||A||_F / 2^s <= expm_scale_norm, then runs a fixed
// 18-term Taylor series; at that norm the truncation error is far below
// the advertised 1e-12 relative accuracy.
inline constexpr double expm_scale_norm = 0.5;
inline constexpr int expm_series_terms = 18;

// sqrtm (Denman-Beavers) and polar (Newton) iteration caps; both stop on
// stagnation, which in practice lands near machine precision, and the
// residual guarantees below are what callers may rely on.
inline constexpr int matrix_iteration_cap = 100;
inline constexpr double sqrtm_residual_rel = 1e-10;
inline constexpr double polar_orthogonality_tol = 1e-12;

// Eigenvalues with |Im| and Re both below this multiple of the norm scale
// count as lying on the closed negative real axis.
inline constexpr double negative_axis_rel_tol = 1e-12;

// Smallest acceptable |R(i,i)| in QR-family factorizations, relative to the
// max row sum of the input.
inline constexpr double qr_singular_rel_tol = 1e-12;

// Lie/Jordan membership: residual <= tol * (1 + ||W||_F).
inline constexpr double membership_rel_tol = 1e-12;

// Generalized polar structural residuals (group and Jordan membership).
inline constexpr double jpolar_residual_tol = 1e-9;

// Splitting reconstruction: || sum(parts) - A ||_F <= tol * ||A||_F.
inline constexpr double reconstruction_rel_tol = 1e-13;

// Orthogonality of the Lie/Jordan parts: |Tr(H^T S)| <= tol * ||A||_F^2.
inline constexpr double split_orthogonality_rel_tol = 1e-11;

// Distance of M from the Kronecker-sum subspace accepted by
// kron_sum_factors, relative to ||M||_F.
inline constexpr double kron_subspace_rel_tol = 1e-10;

inline constexpr int adi_max_n = 48;

// Definiteness check: lambda_min > tol * ||W||_F.
inline constexpr double definite_rel_tol = 1e-10;

// Iterative solvers.
inline constexpr double solver_tol = 1e-10;
inline constexpr int solver_max_iter = 10000;
inline constexpr int gmres_restart = 30;

// Finite-difference linearization sweep.
inline constexpr double linearization_steps[4] = {1e-2, 1e-3, 1e-4, 1e-5};
inline constexpr double linearization_min_order = 0.9;

// CLI.
inline constexpr std::uint64_t cli_seed = 12345;

}  // namespace liesplit::defaults
