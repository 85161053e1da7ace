#pragma once

#include <string>
#include <vector>

#include "liesplit/matrix.hpp"
#include "liesplit/splittings.hpp"
#include "liesplit/structures.hpp"
#include "liesplit/tolerances.hpp"

namespace liesplit {

enum class FactorScheme {
  LuDoolittle,
  LuCrout,
  Ldu,
  Qr,
  Lq,
  Qdr,
  Polar,
  JPolar,
};

std::string to_string(FactorScheme scheme);

// A multiplicative factorization A = F_1 F_2 ... F_k with named factors and
// diagnostics: the product residual ||prod - A||_F and one structural
// residual per factor (deviation from its advertised shape; exactly zero for
// triangular patterns, a norm for orthogonality / membership conditions).
struct FactorizationResult {
  FactorScheme scheme;
  std::vector<std::string> names;
  std::vector<Matrix> factors;
  std::vector<double> structural_residuals;
  double product_residual = 0.0;

  Matrix product() const;
  const Matrix& factor(const std::string& name) const;
};

enum class LuForm { Doolittle, Crout, Ldu };

// Pivot-free Gaussian elimination. Doolittle: unit lower * upper; Crout:
// lower * unit upper; LDU: unit lower * diagonal * unit upper. Throws
// ZeroLeadingMinor(k) when the k-th pivot falls below
// pivot_rel_tol * max row sum; running without pivoting is the point here,
// since these factors are what the triangular splittings linearize.
FactorizationResult lu_ldu(const Matrix& a, LuForm form,
                           double pivot_rel_tol = defaults::pivot_rel_tol);

enum class QrForm { Qr, Lq, Qdr };

// Householder QR with the sign convention diag(R) > 0, which makes the
// factorization unique for invertible A. Lq factors A = L Q by transposition;
// Qdr peels R = D U with D = diag(R) and U unit upper. Throws
// NumericallySingular when min |R_ii| <= singular_rel_tol * max row sum.
FactorizationResult qr_qdr(const Matrix& a, QrForm form,
                           double singular_rel_tol = defaults::qr_singular_rel_tol);

// Polar decomposition A = Q P (Q orthogonal, P symmetric positive definite)
// by the scaled Newton iteration X <- (g X + g^-1 X^-T)/2. Requires A
// invertible.
FactorizationResult polar(const Matrix& a,
                          double orth_tol = defaults::polar_orthogonality_tol);

// Generalized polar decomposition A = Q P with Q in the matrix group of J
// (Q^T J Q = J) and P in the Jordan algebra: P = sqrtm(J^-1 A^T J A),
// Q = A P^-1. Exists iff J^-1 A^T J A keeps its spectrum off the closed
// negative real axis; throws ExistenceViolated otherwise.
FactorizationResult generalized_polar(
    const Matrix& a, const BilinearStructure& j,
    double residual_tol = defaults::jpolar_residual_tol);

enum class LinearizationScheme { Polar, JPolar, Qr, Lq, Qdr, Ldu };

std::string to_string(LinearizationScheme scheme);

// Finite-difference check that each factorization linearizes to its additive
// splitting: factor F(h) = expm(h A), form (F_i(h) - I)/h per factor, and
// compare against the matching splitting part of A. Factor/part pairs:
//   polar  -> j_split with J = I        (Q -> lie,  P -> jordan)
//   jpolar -> j_split with the given J  (Q -> lie,  P -> jordan)
//   qr     -> skew_upper                (Q -> lie,  R -> upper)
//   lq     -> skew_lower                (L -> lower, Q -> lie)
//   qdr    -> skew part, diagonal, strict upper of the skew_upper refinement
//   ldu    -> ldu                       (L -> strict_lower, D -> diagonal,
//                                        U -> strict_upper)
struct LinearizationReport {
  LinearizationScheme scheme;
  std::vector<double> steps;
  std::vector<std::string> part_names;
  // errors[i][s] = || (F_i(h_s) - I)/h_s - part_i ||_F
  std::vector<std::vector<double>> errors;
  // Least-squares slope of log e against log h per part; parts whose error
  // sits at roundoff for every step are flagged exact and get order NaN.
  std::vector<double> part_orders;
  std::vector<bool> exact_parts;
  // Slope fitted on the per-step sum over non-exact parts; NaN when all
  // parts are exact.
  double fitted_order = 0.0;
};

LinearizationReport linearization_check(
    LinearizationScheme scheme, const Matrix& a, const BilinearStructure& j,
    const std::vector<double>& steps = {
        defaults::linearization_steps[0], defaults::linearization_steps[1],
        defaults::linearization_steps[2], defaults::linearization_steps[3]});

// Convenience overload for schemes that do not involve a J.
LinearizationReport linearization_check(
    LinearizationScheme scheme, const Matrix& a,
    const std::vector<double>& steps = {
        defaults::linearization_steps[0], defaults::linearization_steps[1],
        defaults::linearization_steps[2], defaults::linearization_steps[3]});

}  // namespace liesplit
