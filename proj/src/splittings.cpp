#include "liesplit/splittings.hpp"

#include <string>

namespace liesplit {

std::string to_string(SplitScheme scheme) {
  switch (scheme) {
    case SplitScheme::JSplit: return "jsplit";
    case SplitScheme::Doolittle: return "doolittle";
    case SplitScheme::Crout: return "crout";
    case SplitScheme::Ldu: return "ldu";
    case SplitScheme::Jacobi: return "jacobi";
    case SplitScheme::SkewUpper: return "skew-upper";
    case SplitScheme::SkewLower: return "skew-lower";
    case SplitScheme::Levi: return "levi";
    case SplitScheme::KroneckerSum: return "kronecker-sum";
  }
  return "?";
}

std::string to_string(PartTag tag) {
  switch (tag) {
    case PartTag::Lie: return "lie";
    case PartTag::Jordan: return "jordan";
    case PartTag::Lower: return "lower";
    case PartTag::Upper: return "upper";
    case PartTag::StrictLower: return "strict_lower";
    case PartTag::StrictUpper: return "strict_upper";
    case PartTag::Diagonal: return "diagonal";
    case PartTag::Trace: return "trace";
    case PartTag::Traceless: return "traceless";
    case PartTag::LeftFactor: return "left_factor";
    case PartTag::RightFactor: return "right_factor";
  }
  return "?";
}

Matrix Splitting::sum() const {
  Matrix s = parts.front().second;
  for (std::size_t i = 1; i < parts.size(); ++i) s += parts[i].second;
  return s;
}

bool Splitting::has_part(PartTag tag) const {
  for (const auto& p : parts)
    if (p.first == tag) return true;
  return false;
}

const Matrix& Splitting::part(PartTag tag) const {
  for (const auto& p : parts)
    if (p.first == tag) return p.second;
  throw Error("splitting has no part tagged " + to_string(tag));
}

Splitting j_split(const Matrix& a, const BilinearStructure& j) {
  a.require_square("j_split");
  if (a.rows() != j.n())
    throw DimensionMismatch("j_split: matrix order " + std::to_string(a.rows()) +
                            " but J has n = " + std::to_string(j.n()));
  const Matrix h = project_onto(a, j, AlgebraSide::Jordan);
  const Matrix s = a - h;  // exact reconstruction by construction
  Splitting out;
  out.scheme = SplitScheme::JSplit;
  out.parts.emplace_back(PartTag::Lie, s);
  out.parts.emplace_back(PartTag::Jordan, h);
  return out;
}

namespace {

enum class Pattern { StrictLower, StrictUpper, Diagonal, Lower, Upper };

Matrix extract(const Matrix& a, Pattern p) {
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const bool take = (p == Pattern::StrictLower && i > j) ||
                        (p == Pattern::StrictUpper && i < j) ||
                        (p == Pattern::Diagonal && i == j) ||
                        (p == Pattern::Lower && i >= j) ||
                        (p == Pattern::Upper && i <= j);
      if (take) out(i, j) = a(i, j);
    }
  }
  return out;
}

}  // namespace

Splitting triangular_split(const Matrix& a, TriangularMode mode) {
  a.require_square("triangular_split");
  Splitting out;
  switch (mode) {
    case TriangularMode::Doolittle: {
      out.scheme = SplitScheme::Doolittle;
      const Matrix l0 = extract(a, Pattern::StrictLower);
      out.parts.emplace_back(PartTag::StrictLower, l0);
      out.parts.emplace_back(PartTag::Upper, a - l0);
      break;
    }
    case TriangularMode::Crout: {
      out.scheme = SplitScheme::Crout;
      const Matrix l = extract(a, Pattern::Lower);
      out.parts.emplace_back(PartTag::Lower, l);
      out.parts.emplace_back(PartTag::StrictUpper, a - l);
      break;
    }
    case TriangularMode::Ldu: {
      out.scheme = SplitScheme::Ldu;
      const Matrix l0 = extract(a, Pattern::StrictLower);
      const Matrix d = extract(a, Pattern::Diagonal);
      out.parts.emplace_back(PartTag::StrictLower, l0);
      out.parts.emplace_back(PartTag::Diagonal, d);
      out.parts.emplace_back(PartTag::StrictUpper, a - l0 - d);
      break;
    }
    case TriangularMode::Jacobi: {
      out.scheme = SplitScheme::Jacobi;
      const Matrix d = extract(a, Pattern::Diagonal);
      out.parts.emplace_back(PartTag::Diagonal, d);
      out.parts.emplace_back(PartTag::Traceless, a - d);
      break;
    }
    case TriangularMode::SkewUpper: {
      out.scheme = SplitScheme::SkewUpper;
      const Matrix l0 = extract(a, Pattern::StrictLower);
      const Matrix s = l0 - l0.transpose();
      out.parts.emplace_back(PartTag::Lie, s);
      // a - s is exactly upper triangular: below the diagonal the entries
      // cancel as a(i,j) - a(i,j).
      out.parts.emplace_back(PartTag::Upper, a - s);
      break;
    }
    case TriangularMode::SkewLower: {
      out.scheme = SplitScheme::SkewLower;
      const Matrix u0 = extract(a, Pattern::StrictUpper);
      const Matrix s = u0 - u0.transpose();
      out.parts.emplace_back(PartTag::Lie, s);
      out.parts.emplace_back(PartTag::Lower, a - s);
      break;
    }
    case TriangularMode::Levi: {
      out.scheme = SplitScheme::Levi;
      const double tau = a.trace() / a.rows();
      Matrix trace_part(a.rows(), a.cols());
      for (int i = 0; i < a.rows(); ++i) trace_part(i, i) = tau;
      out.parts.emplace_back(PartTag::Trace, trace_part);
      out.parts.emplace_back(PartTag::Traceless, a - trace_part);
      break;
    }
  }
  return out;
}

Matrix kronecker_sum(const Matrix& a, const Matrix& b) {
  a.require_square("kronecker_sum");
  b.require_square("kronecker_sum");
  if (a.rows() != b.rows())
    throw DimensionMismatch("kronecker_sum: factors are " +
                            std::to_string(a.rows()) + " and " +
                            std::to_string(b.rows()) + ", expected equal order");
  const int n = a.rows();
  Matrix m(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      // block (i, k) is a(i,k) I + delta_ik B
      const double aik = a(i, k);
      for (int r = 0; r < n; ++r) {
        if (aik != 0.0) m(i * n + r, k * n + r) += aik;
        if (i == k)
          for (int c = 0; c < n; ++c) m(i * n + r, k * n + c) += b(r, c);
      }
    }
  }
  return m;
}

std::vector<double> kron_sum_apply(const Matrix& a, const Matrix& b,
                                   const std::vector<double>& x) {
  const int n = a.rows();
  if (static_cast<int>(x.size()) != n * n)
    throw DimensionMismatch("kron_sum_apply: vector length " +
                            std::to_string(x.size()) + " vs n^2 = " +
                            std::to_string(n * n));
  const Matrix xm = reshape_to_matrix(x, n, n);
  return reshape_to_vector(a * xm + multiply(xm, b, false, true));
}

std::pair<Matrix, Matrix> kron_sum_factors(const Matrix& m,
                                           double subspace_rel_tol) {
  m.require_square("kron_sum_factors");
  const int nn = m.rows();
  int n = 0;
  while (n * n < nn) ++n;
  if (n * n != nn)
    throw NotAKroneckerSum("kron_sum_factors: order " + std::to_string(nn) +
                           " is not a perfect square");
  // Block traces: t(i,k) = Tr(block_ik) = n a(i,k) + delta_ik Tr(B), so
  // t/n carries the whole gauge shift on the left factor. The diagonal block
  // sum Tr(A) I + n B yields the right factor after removing its own trace.
  Matrix t(n, n);
  Matrix d(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int r = 0; r < n; ++r) s += m(i * n + r, k * n + r);
      t(i, k) = s / n;
      if (i == k)
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) d(r, c) += m(i * n + r, k * n + c);
    }
  }
  const double dtrace = d.trace() / n;
  Matrix b(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      b(r, c) = (d(r, c) - (r == c ? dtrace : 0.0)) / n;
  const Matrix recon = kronecker_sum(t, b);
  const double resid = (recon - m).frobenius_norm();
  if (resid > subspace_rel_tol * std::max(m.frobenius_norm(), 1e-300))
    throw NotAKroneckerSum(
        "kron_sum_factors: distance from the Kronecker-sum subspace is " +
        std::to_string(resid) + ", above " + std::to_string(subspace_rel_tol) +
        " * ||M||_F");
  return {t, b};
}

Splitting kronecker_split(const Matrix& m, double subspace_rel_tol) {
  auto [a, b] = kron_sum_factors(m, subspace_rel_tol);
  const int n = a.rows();
  const Matrix left = kronecker_sum(a, Matrix(n, n));
  Splitting out;
  out.scheme = SplitScheme::KroneckerSum;
  out.parts.emplace_back(PartTag::LeftFactor, left);
  out.parts.emplace_back(PartTag::RightFactor, m - left);
  return out;
}

}  // namespace liesplit
