#pragma once

#include <string>
#include <utility>
#include <vector>

#include "liesplit/matrix.hpp"
#include "liesplit/structures.hpp"

namespace liesplit {

enum class SplitScheme {
  JSplit,
  Doolittle,
  Crout,
  Ldu,
  Jacobi,
  SkewUpper,
  SkewLower,
  Levi,
  KroneckerSum,
};

enum class PartTag {
  Lie,
  Jordan,
  Lower,
  Upper,
  StrictLower,
  StrictUpper,
  Diagonal,
  Trace,
  Traceless,
  LeftFactor,
  RightFactor,
};

std::string to_string(SplitScheme scheme);
std::string to_string(PartTag tag);

// An additive splitting of a square matrix into tagged parts. The last part
// is always the difference between the input and the earlier parts, so
// summing the parts re-rounds each entry at most once: schemes whose parts
// have disjoint supports (doolittle, crout, ldu, jacobi) reconstruct the
// input bitwise, the overlapping ones (j_split, skew pairs, levi,
// kronecker) to one ulp per entry.
struct Splitting {
  SplitScheme scheme;
  std::vector<std::pair<PartTag, Matrix>> parts;

  Matrix sum() const;
  const Matrix& part(PartTag tag) const;
  bool has_part(PartTag tag) const;
};

// A = S + H with S = (A - J A^T J^-1)/2 in the Lie algebra of J and
// H = (A + J A^T J^-1)/2 in the Jordan algebra. The two parts are orthogonal
// under <X, Y> = Tr(X^T J^T J Y), which is the Frobenius inner product for
// the canonical kinds.
Splitting j_split(const Matrix& a, const BilinearStructure& j);

enum class TriangularMode { Doolittle, Crout, Ldu, Jacobi, SkewUpper, SkewLower, Levi };

// Pattern-based splittings. Writing L0/D/U0 for the strict lower, diagonal
// and strict upper parts of A:
//   doolittle:  L0
//               D + U0
//   crout:      L0 + D
//               U0
//   ldu:        L0, D, U0
//   jacobi:     D
//               L0 + U0
//   skew_upper: L0 - L0^T     (skew)
//               D + U0 + L0^T (upper)
//   skew_lower: U0 - U0^T     (skew)
//               D + L0 + U0^T (lower)
//   levi:       (Tr(A)/n) I
//               A - (Tr(A)/n) I  (trace below 1e-13 * ||A||_F)
Splitting triangular_split(const Matrix& a, TriangularMode mode);

// A (x) I_n + I_n (x) B as an explicit n^2 x n^2 matrix, with the row-major
// vec convention: (A (x) B) vec(X) = vec(A X B^T).
Matrix kronecker_sum(const Matrix& a, const Matrix& b);

// Matrix-free apply of the Kronecker sum to a length-n^2 vector; O(n^3).
std::vector<double> kron_sum_apply(const Matrix& a, const Matrix& b,
                                   const std::vector<double>& x);

// Recover (A', B') with M = A' (x) I + I (x) B' and Tr(B') = 0 by partial
// traces: A' = A + (Tr(B)/n) I and B' = B - (Tr(B)/n) I for any valid
// decomposition of M. Throws NotAKroneckerSum when the reconstruction misses
// M by more than subspace_rel_tol * ||M||_F.
std::pair<Matrix, Matrix> kron_sum_factors(
    const Matrix& m,
    double subspace_rel_tol = defaults::kron_subspace_rel_tol);

// Two-part splitting wrapper over kron_sum_factors: left part A' (x) I, right
// part M - A' (x) I (exact reconstruction; the right part deviates from
// I (x) B' by at most the subspace residual).
Splitting kronecker_split(
    const Matrix& m,
    double subspace_rel_tol = defaults::kron_subspace_rel_tol);

}  // namespace liesplit
